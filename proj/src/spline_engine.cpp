#include "wtrace/spline_engine.hpp"

#include "wtrace/divided_differences.hpp"
#include "wtrace/errors.hpp"
#include "wtrace/quadrature.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace wtrace {

namespace {

// Coefficients with trailing (exactly) zero entries dropped; at least one kept.
Eigen::VectorXd trimmed(const Eigen::VectorXd& c) {
  Eigen::Index n = c.size();
  while (n > 1 && c(n - 1) == 0.0) --n;
  return c.head(n);
}

bool is_even_integer(double p) { return p == std::floor(p) && std::fmod(p, 2.0) == 0.0; }

double piece_power_integral(const Eigen::VectorXd& coeffs, double len, double p, double quad_tol) {
  const Eigen::VectorXd c = trimmed(coeffs);
  if (c.size() == 1 && c(0) == 0.0) return 0.0;
  const auto integrand = [&c, p](double t) { return std::pow(std::abs(horner(c, t)), p); };
  if (is_even_integer(p)) {
    const int deg = static_cast<int>(c.size()) - 1;
    const int nodes = std::max(1, static_cast<int>(std::ceil((deg * p + 1.0) / 2.0)));
    return gauss_integrate(integrand, 0.0, len, nodes);
  }
  // |P|^p loses smoothness only at real roots of P; integrate between them.
  std::vector<double> cuts{0.0};
  for (double r : real_roots_in(c, 0.0, len)) {
    if (r > cuts.back() && r < len) cuts.push_back(r);
  }
  cuts.push_back(len);
  const double coarse = gauss_integrate(integrand, 0.0, len, 20);
  const double budget = quad_tol * std::max(coarse, std::numeric_limits<double>::min());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    total += adaptive_integrate(integrand, a, b, budget * (b - a) / len);
  }
  return total;
}

double piece_sup(const Eigen::VectorXd& coeffs, double len) {
  const Eigen::VectorXd c = trimmed(coeffs);
  double best = std::max(std::abs(horner(c, 0.0)), std::abs(horner(c, len)));
  if (c.size() > 2) {
    for (double t : real_roots_in(derivative_coefficients(c, 1), 0.0, len)) best = std::max(best, std::abs(horner(c, t)));
  }
  return best;
}

}  // namespace

double lp_norm(const PiecewisePolynomial& F, double p, double quad_tol) {
  if (!(p >= 1.0)) throw InvalidInput("L^p norm needs p >= 1");
  if (!(quad_tol > 0.0)) throw InvalidInput("quadrature tolerance must be positive");
  const auto& bp = F.breakpoints();
  if (std::isinf(p)) {
    double best = 0.0;
    for (const Eigen::VectorXd* tail : {&F.left_tail(), &F.right_tail()}) {
      if (!tail->tail(tail->size() - 1).isZero(0.0))
        throw PreconditionError("L^inf norm of a piecewise polynomial with a nonconstant tail is infinite");
      best = std::max(best, std::abs((*tail)(0)));
    }
    for (Eigen::Index j = 0; j < F.pieces(); ++j)
      best = std::max(best, piece_sup(F.coeffs().row(j).transpose(), bp(j + 1) - bp(j)));
    return best;
  }
  if (!F.tails_vanish()) throw PreconditionError("L^p norm with p < inf needs identically zero tails");
  double total = 0.0;
  for (Eigen::Index j = 0; j < F.pieces(); ++j)
    total += piece_power_integral(F.coeffs().row(j).transpose(), bp(j + 1) - bp(j), p, quad_tol);
  return total == 0.0 ? 0.0 : std::pow(total, 1.0 / p);
}

NormReport sobolev_norm(const PiecewisePolynomial& F, int m, double p, double quad_tol) {
  if (m < 0) throw InvalidInput("Sobolev order must be nonnegative");
  NormReport report;
  report.lp_norms.resize(m + 1);
  PiecewisePolynomial derivative = F;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) derivative = differentiate(derivative);
    report.lp_norms(k) = lp_norm(derivative, p, quad_tol);
  }
  report.w_norm = report.lp_norms.sum();
  report.l_homog = report.lp_norms(m);
  return report;
}

PiecewisePolynomial interpolating_spline(const SampledFunction& s, int m, SplineEnd left, SplineEnd right) {
  if (m < 1) throw InvalidInput("spline order m must be positive");
  if (s.size() < 2) throw PreconditionError("interpolating spline needs at least two knots");
  const auto& x = s.points();
  const auto& y = s.values();
  const Eigen::Index pieces = s.size() - 1;
  const int width = 2 * m;  // coefficients per piece
  const Eigen::Index unknowns = pieces * width;
  if (left == SplineEnd::clamped_to_zero && y(0) != 0.0)
    throw PreconditionError("clamped-to-zero end needs a zero data value");
  if (right == SplineEnd::clamped_to_zero && y(pieces) != 0.0)
    throw PreconditionError("clamped-to-zero end needs a zero data value");

  // Knots rescaled to unit mean gap; tau = (x - x_j) / scale on piece j.
  const double scale = s.diameter() / static_cast<double>(pieces);
  Eigen::VectorXd H(pieces);
  for (Eigen::Index j = 0; j < pieces; ++j) H(j) = (x(j + 1) - x(j)) / scale;

  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
  Eigen::Index row = 0;

  // r-th derivative divided by r!, of piece j at tau, with weight `sign`.
  const auto add_derivative = [&](Eigen::Index r_row, Eigen::Index j, int r, double tau, double sign) {
    for (int k = r; k < width; ++k) {
      double binom = 1.0;
      for (int i = 1; i <= r; ++i) binom = binom * (k - r + i) / i;
      const double coeff = sign * binom * std::pow(tau, k - r);
      if (coeff != 0.0) triplets.emplace_back(r_row, j * width + k, coeff);
    }
  };
  const auto add_end = [&](SplineEnd end, Eigen::Index j, double tau) {
    const int lo = end == SplineEnd::natural ? m : 1;
    const int hi = end == SplineEnd::natural ? 2 * m - 2 : m - 1;
    for (int r = lo; r <= hi; ++r) add_derivative(row++, j, r, tau, 1.0);
  };

  add_end(left, 0, 0.0);
  for (Eigen::Index j = 0; j < pieces; ++j) {
    add_derivative(row, j, 0, 0.0, 1.0);
    rhs(row++) = y(j);
    add_derivative(row, j, 0, H(j), 1.0);
    rhs(row++) = y(j + 1);
    if (j + 1 < pieces) {
      for (int r = 1; r <= 2 * m - 2; ++r) {
        add_derivative(row, j, r, H(j), 1.0);
        add_derivative(row, j + 1, r, 0.0, -1.0);
        ++row;
      }
    }
  }
  add_end(right, pieces - 1, H(pieces - 1));
  if (row != unknowns) throw NumericalFailure("spline system is not square (internal error)");

  Eigen::SparseMatrix<double> A(unknowns, unknowns);
  A.setFromTriplets(triplets.begin(), triplets.end());
  A.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success) throw NumericalFailure("spline system is singular");
  const Eigen::VectorXd a = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !a.allFinite()) throw NumericalFailure("spline solve failed");

  Eigen::MatrixXd coeffs(pieces, width);
  for (Eigen::Index j = 0; j < pieces; ++j) {
    double unit = 1.0;
    for (int k = 0; k < width; ++k) {
      coeffs(j, k) = a(j * width + k) / unit;
      unit *= scale;
    }
  }
  // Data values are reproduced exactly at the left end of every piece.
  for (Eigen::Index j = 0; j < pieces; ++j) coeffs(j, 0) = y(j);

  Eigen::VectorXd left_tail = Eigen::VectorXd::Zero(width);
  Eigen::VectorXd right_tail = Eigen::VectorXd::Zero(width);
  if (left == SplineEnd::natural) left_tail.head(m) = coeffs.row(0).head(m).transpose();
  if (right == SplineEnd::natural) {
    const Eigen::VectorXd last = coeffs.row(pieces - 1).transpose();
    right_tail.head(m) = shift_origin(last, H(pieces - 1) * scale).head(m);
    right_tail(0) = y(pieces);
  }
  return {x, coeffs, left_tail, right_tail};
}

MinimalEnergySpline natural_spline_min_energy(const SampledFunction& s, int m) {
  if (m < 1) throw InvalidInput("spline order m must be positive");
  if (s.size() <= m) return {lagrange_polynomial(s), 0.0};
  PiecewisePolynomial F = interpolating_spline(s, m, SplineEnd::natural, SplineEnd::natural);
  const double root = lp_norm(differentiate(F, m), 2.0);
  return {std::move(F), root * root};
}

}  // namespace wtrace
