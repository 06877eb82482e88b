#include "wtrace/extension_operator.hpp"

#include "wtrace/divided_differences.hpp"
#include "wtrace/errors.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wtrace {

std::string to_string(Backend backend) { return backend == Backend::hermite ? "hermite" : "natural2"; }

Backend parse_backend(const std::string& name) {
  if (name == "hermite") return Backend::hermite;
  if (name == "natural2") return Backend::natural2;
  throw InvalidInput("unknown backend '" + name + "' (expected hermite or natural2)");
}

ExtensionConfig ExtensionConfig::for_order(int m, double p, Backend backend) {
  ExtensionConfig cfg;
  cfg.m = m;
  cfg.p = p;
  cfg.backend = backend;
  cfg.window_pad = support_radius(m);
  return cfg;
}

void ExtensionConfig::validate() const {
  if (m < 1) throw InvalidInput("smoothness order m must be a positive integer");
  require_exponent(p);
  if (!(window_pad >= support_radius(m))) throw InvalidInput("window_pad must be at least 3(m + 2)");
  if (!(smoothness_tol > 0.0) || !(quad_tol > 0.0)) throw InvalidInput("tolerances must be positive");
}

bool Gap::bounded() const { return std::isfinite(a) && std::isfinite(b); }

GapLattice build_gap_lattice(const Eigen::VectorXd& points, const ExtensionConfig& cfg) {
  cfg.validate();
  if (points.size() == 0) throw InvalidInput("gap lattice needs at least one point");
  return build_gap_lattice(points, points(0) - cfg.window_pad, points(points.size() - 1) + cfg.window_pad);
}

GapLattice build_gap_lattice(const Eigen::VectorXd& points, double window_lo, double window_hi) {
  if (points.size() == 0) throw InvalidInput("gap lattice needs at least one point");
  detail::require_increasing(points);
  const Eigen::Index n = points.size() - 1;
  GapLattice lattice;
  lattice.window_lo = window_lo;
  lattice.window_hi = window_hi;
  lattice.gaps.push_back({-kInfinity, points(0)});
  for (Eigen::Index i = 0; i < n; ++i) lattice.gaps.push_back({points(i), points(i + 1)});
  lattice.gaps.push_back({points(n), kInfinity});

  std::vector<double> g;
  for (int step = 1;; ++step) {
    const double y = points(0) - 2.0 * step;
    if (y < window_lo) break;
    g.push_back(y);
  }
  std::reverse(g.begin(), g.end());
  for (const Gap& gap : lattice.gaps) {
    if (!(gap.length() > 4.0)) continue;
    lattice.long_gaps.push_back(gap);
    if (!gap.bounded()) continue;
    const auto parts = static_cast<int>(std::floor(gap.length() / 2.0));
    const double spacing = gap.length() / parts;
    for (int k = 1; k < parts; ++k) g.push_back(gap.a + spacing * k);
  }
  for (int step = 1;; ++step) {
    const double y = points(n) + 2.0 * step;
    if (y > window_hi) break;
    g.push_back(y);
  }
  lattice.lattice_points = Eigen::Map<Eigen::VectorXd>(g.data(), static_cast<Eigen::Index>(g.size()));
  return lattice;
}

SampledFunction zero_extend(const SampledFunction& s, const GapLattice& lattice) {
  const Eigen::Index total = s.size() + lattice.lattice_points.size();
  Eigen::VectorXd x(total);
  Eigen::VectorXd y(total);
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  for (Eigen::Index out = 0; out < total; ++out) {
    const bool take_data = j >= lattice.lattice_points.size() ||
                           (i < s.size() && s.points()(i) < lattice.lattice_points(j));
    if (take_data) {
      x(out) = s.points()(i);
      y(out) = s.values()(i);
      ++i;
    } else {
      x(out) = lattice.lattice_points(j);
      y(out) = 0.0;
      ++j;
    }
  }
  // Construction keeps lattice points at distance >= 2 from E, so a collision is a bug.
  return {x, y};
}

namespace {

// Derivatives 0..m-1 at data point `at` of the Lagrange polynomial through
// the min(m, #E) points of E nearest to it (ties toward smaller coordinates).
Eigen::VectorXd data_jet(const SampledFunction& data, Eigen::Index at, int m) {
  const double t = data.points()(at);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(data.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(data.points()(a) - t) < std::abs(data.points()(b) - t);
  });
  const auto count = static_cast<std::size_t>(std::min<Eigen::Index>(m, data.size()));
  std::vector<Eigen::Index> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(chosen.begin(), chosen.end());
  const SampledFunction local = data.restrict_to(chosen);
  const PiecewisePolynomial P = lagrange_polynomial(local);
  const Eigen::VectorXd& c = P.left_tail();
  Eigen::VectorXd jet = Eigen::VectorXd::Zero(m);
  for (int r = 1; r < m && r < c.size(); ++r) jet(r) = horner(derivative_coefficients(c, r), t - local.points()(0));
  jet(0) = data.values()(at);
  return jet;
}

PiecewisePolynomial hermite_backend(const SampledFunction& filled, const std::vector<Eigen::Index>& data_index,
                                    const SampledFunction& original, const SampledFunction& data, int m) {
  const Eigen::Index knots = filled.size();
  std::vector<Eigen::VectorXd> jets;
  jets.reserve(static_cast<std::size_t>(knots));
  for (Eigen::Index i = 0; i < knots; ++i) {
    const Eigen::Index d = data_index[static_cast<std::size_t>(i)];
    // padded points follow the original ones; original points take jets from E alone
    if (d < 0)
      jets.push_back(Eigen::VectorXd::Zero(m));
    else
      jets.push_back(d < original.size() ? data_jet(original, d, m) : data_jet(data, d, m));
  }

  // Right-end conditions in u = (x - t_i) / h: sum_k C(k, r) q_k = Q^(r)(1) / r!.
  Eigen::MatrixXd binom(m, 2 * m);
  for (int r = 0; r < m; ++r) {
    for (int k = 0; k < 2 * m; ++k) {
      double b = 0.0;
      if (k >= r) {
        b = 1.0;
        for (int i = 1; i <= r; ++i) b = b * (k - r + i) / i;
      }
      binom(r, k) = b;
    }
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> upper(binom.rightCols(m));

  const Eigen::Index pieces = knots - 1;
  Eigen::MatrixXd coeffs(pieces, 2 * m);
  for (Eigen::Index j = 0; j < pieces; ++j) {
    const double h = filled.points()(j + 1) - filled.points()(j);
    Eigen::VectorXd lower(m);
    Eigen::VectorXd target(m);
    double hr = 1.0;
    double fact = 1.0;
    for (int r = 0; r < m; ++r) {
      if (r > 0) {
        hr *= h;
        fact *= r;
      }
      lower(r) = jets[static_cast<std::size_t>(j)](r) * hr / fact;
      target(r) = jets[static_cast<std::size_t>(j) + 1](r) * hr / fact;
    }
    const Eigen::VectorXd top = upper.solve(target - binom.leftCols(m) * lower);
    double hk = 1.0;
    for (int k = 0; k < 2 * m; ++k) {
      coeffs(j, k) = (k < m ? lower(k) : top(k - m)) / hk;
      hk *= h;
    }
    coeffs(j, 0) = filled.values()(j);
  }
  return PiecewisePolynomial::with_zero_tails(filled.points(), coeffs);
}

PiecewisePolynomial natural2_backend(const SampledFunction& filled, double window_lo, double window_hi, int m) {
  std::vector<double> x;
  std::vector<double> y;
  if (filled.points()(0) - window_lo >= kMinSeparation) {
    x.push_back(window_lo);
    y.push_back(0.0);
  }
  for (Eigen::Index i = 0; i < filled.size(); ++i) {
    x.push_back(filled.points()(i));
    y.push_back(filled.values()(i));
  }
  if (window_hi - filled.points()(filled.size() - 1) >= kMinSeparation) {
    x.push_back(window_hi);
    y.push_back(0.0);
  }
  return interpolating_spline(SampledFunction(x, y), m, SplineEnd::clamped_to_zero, SplineEnd::clamped_to_zero);
}

}  // namespace

PiecewisePolynomial extend(const SampledFunction& s, const ExtensionConfig& cfg) {
  cfg.validate();
  const int m = cfg.m;
  const double window_lo = s.points()(0) - cfg.window_pad;
  const double window_hi = s.points()(s.size() - 1) + cfg.window_pad;
  const SampledFunction data = s.size() <= m ? pad_small_set(s, m) : s;
  const GapLattice lattice = build_gap_lattice(data.points(), window_lo, window_hi);
  const SampledFunction filled = zero_extend(data, lattice);

  if (cfg.backend == Backend::natural2) return natural2_backend(filled, window_lo, window_hi, m);

  std::vector<Eigen::Index> data_index(static_cast<std::size_t>(filled.size()), -1);
  for (Eigen::Index i = 0, d = 0; i < filled.size() && d < data.size(); ++i) {
    if (filled.points()(i) == data.points()(d)) data_index[static_cast<std::size_t>(i)] = d++;
  }
  return hermite_backend(filled, data_index, s, data, m);
}

double interpolation_residual(const SampledFunction& s, const PiecewisePolynomial& F) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(F(s.points()(i)) - s.values()(i)));
  return worst;
}

NecessityReport verify_necessity(const SampledFunction& s, const PiecewisePolynomial& F, int m, double p,
                                 double quad_tol) {
  if (m < 1) throw InvalidInput("smoothness order m must be a positive integer");
  require_exponent(p);
  if (interpolation_residual(s, F) > 1e-9 * (1.0 + s.max_abs_value()))
    throw PreconditionError("F does not interpolate f on E");
  NecessityReport report;
  const bool enumerable = s.size() <= kEnumerationCap;
  const bool variational_defined = std::isinf(p) || s.size() >= m + 1;
  const FunctionalReport n =
      enumerable && variational_defined ? variational_functional(s, m, p) : sequence_functional(s, m, p);
  report.functional_kind = n.kind;
  report.functional = n.value;
  report.sobolev = sobolev_norm(F, m, p, quad_tol).w_norm;
  report.constant = std::isinf(p) ? 1.0 : 2.0 * std::pow((m + 1.0) * (2.0 * m + 1.0), 1.0 / p);
  report.pass = report.functional <= report.constant * report.sobolev;
  if (report.sobolev > 0.0)
    report.ratio = report.functional / report.sobolev;
  else
    report.ratio = report.functional == 0.0 ? 0.0 : kInfinity;
  return report;
}

}  // namespace wtrace
