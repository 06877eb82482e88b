#include "wtrace/piecewise_polynomial.hpp"

#include "wtrace/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace wtrace {

Eigen::VectorXd shift_origin(const Eigen::VectorXd& c, double delta) {
  // Repeated synthetic division by (t - (-delta)).
  Eigen::VectorXd q = c;
  const Eigen::Index n = q.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = n - 2; k >= i; --k) q(k) += delta * q(k + 1);
  }
  return q;
}

PiecewisePolynomial::PiecewisePolynomial(Eigen::VectorXd breakpoints, Eigen::MatrixXd coeffs,
                                         Eigen::VectorXd left_tail, Eigen::VectorXd right_tail)
    : breakpoints_(std::move(breakpoints)),
      coeffs_(std::move(coeffs)),
      left_tail_(std::move(left_tail)),
      right_tail_(std::move(right_tail)) {
  if (breakpoints_.size() < 2) throw InvalidInput("piecewise polynomial needs at least two breakpoints");
  if (coeffs_.rows() != breakpoints_.size() - 1)
    throw InvalidInput("one coefficient row per breakpoint interval is required");
  if (coeffs_.cols() < 1) throw InvalidInput("coefficient rows must be nonempty");
  if (left_tail_.size() != coeffs_.cols() || right_tail_.size() != coeffs_.cols())
    throw InvalidInput("tail coefficient count must match piece coefficient count");
  for (Eigen::Index j = 0; j + 1 < breakpoints_.size(); ++j) {
    if (!(breakpoints_(j + 1) > breakpoints_(j))) throw InvalidInput("breakpoints must be strictly increasing");
  }
  if (!coeffs_.allFinite() || !left_tail_.allFinite() || !right_tail_.allFinite() || !breakpoints_.allFinite())
    throw InvalidInput("piecewise polynomial data must be finite");
}

PiecewisePolynomial PiecewisePolynomial::with_zero_tails(Eigen::VectorXd breakpoints, Eigen::MatrixXd coeffs) {
  const Eigen::Index n = coeffs.cols();
  return {std::move(breakpoints), std::move(coeffs), Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
}

PiecewisePolynomial PiecewisePolynomial::global(const Eigen::VectorXd& coeffs, double origin, double span) {
  Eigen::VectorXd bp(2);
  bp << origin, origin + span;
  Eigen::MatrixXd rows = coeffs.transpose();
  return {bp, rows, coeffs, shift_origin(coeffs, span)};
}

PiecewisePolynomial PiecewisePolynomial::zero(double lo, double hi) {
  Eigen::VectorXd bp(2);
  bp << lo, hi;
  return with_zero_tails(bp, Eigen::MatrixXd::Zero(1, 1));
}

Eigen::Index PiecewisePolynomial::locate(double x) const {
  if (x < breakpoints_(0)) return -1;
  const double* begin = breakpoints_.data();
  const double* end = begin + breakpoints_.size();
  // First breakpoint strictly greater than x; piece index is one before it.
  const auto it = std::upper_bound(begin, end, x);
  return static_cast<Eigen::Index>(it - begin) - 1;
}

double PiecewisePolynomial::operator()(double x) const {
  const Eigen::Index j = locate(x);
  if (j < 0) return horner(left_tail_, x - breakpoints_(0));
  if (j >= pieces()) return horner(right_tail_, x - breakpoints_(breakpoints_.size() - 1));
  return horner(coeffs_.row(j), x - breakpoints_(j));
}

Eigen::VectorXd PiecewisePolynomial::operator()(const Eigen::VectorXd& xs) const {
  return xs.unaryExpr([this](double x) { return (*this)(x); });
}

PiecewisePolynomial differentiate(const PiecewisePolynomial& F, int order) {
  if (order < 0) throw InvalidInput("derivative order must be nonnegative");
  if (order == 0) return F;
  const Eigen::Index n = F.coeffs().cols();
  const Eigen::Index kept = std::max<Eigen::Index>(1, n - order);
  Eigen::MatrixXd rows(F.pieces(), kept);
  for (Eigen::Index j = 0; j < F.pieces(); ++j)
    rows.row(j) = derivative_coefficients(F.coeffs().row(j).transpose(), order).head(kept).transpose();
  Eigen::VectorXd lt = derivative_coefficients(F.left_tail(), order).head(kept);
  Eigen::VectorXd rt = derivative_coefficients(F.right_tail(), order).head(kept);
  return {F.breakpoints(), rows, lt, rt};
}

int smoothness_order(const PiecewisePolynomial& F, double tol) {
  if (!(tol > 0)) throw InvalidInput("smoothness tolerance must be positive");
  const int D = F.degree();
  const Eigen::Index P = F.pieces();
  const auto& bp = F.breakpoints();
  int order = D;
  for (Eigen::Index j = 0; j <= P; ++j) {
    // Left and right local polynomials meeting at bp(j), as (coeffs, t).
    const Eigen::VectorXd left =
        j == 0 ? F.left_tail() : Eigen::VectorXd(F.coeffs().row(j - 1).transpose());
    const double t_left = j == 0 ? 0.0 : bp(j) - bp(j - 1);
    const Eigen::VectorXd right = j == P ? F.right_tail() : Eigen::VectorXd(F.coeffs().row(j).transpose());
    for (int r = 0; r <= order; ++r) {
      const double a = horner(derivative_coefficients(left, r), t_left);
      const double b = horner(derivative_coefficients(right, r), 0.0);
      if (std::abs(a - b) > tol * (1.0 + std::max(std::abs(a), std::abs(b)))) {
        order = r - 1;
        break;
      }
    }
    if (order < 0) return -1;
  }
  return order;
}

}  // namespace wtrace
