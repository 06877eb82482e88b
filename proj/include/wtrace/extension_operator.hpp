#ifndef WTRACE_EXTENSION_OPERATOR_HPP
#define WTRACE_EXTENSION_OPERATOR_HPP

#include "wtrace/piecewise_polynomial.hpp"
#include "wtrace/sampled_function.hpp"
#include "wtrace/spline_engine.hpp"
#include "wtrace/trace_functionals.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace wtrace {

/// Support radius of the constructed extension around E.
inline double support_radius(int m) { return 3.0 * (m + 2); }

enum class Backend { hermite, natural2 };

std::string to_string(Backend backend);
Backend parse_backend(const std::string& name);

struct ExtensionConfig {
  int m = 1;
  double p = 2.0;
  Backend backend = Backend::hermite;
  double window_pad = 9.0;  // >= 3(m + 2)
  double smoothness_tol = 1e-7;
  double quad_tol = kDefaultQuadTol;

  /// Defaults for order m: window_pad = 3(m + 2).
  static ExtensionConfig for_order(int m, double p = 2.0, Backend backend = Backend::hermite);

  /// Throws InvalidInput on m < 1, p <= 1 or window_pad < 3(m + 2).
  void validate() const;
};

/// A complementary interval (a, b) of E; a = -inf or b = +inf when unbounded.
struct Gap {
  double a;
  double b;
  bool bounded() const;
  double length() const { return b - a; }
};

struct GapLattice {
  std::vector<Gap> gaps;       // all complementary intervals, left to right
  std::vector<Gap> long_gaps;  // |J| > 4 (both unbounded gaps included)
  Eigen::VectorXd lattice_points;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

/// Lattice points in the long gaps of E: a bounded gap J is cut into
/// n_J = floor(|J| / 2) equal parts, the unbounded gaps into steps of 2 from
/// the extreme points of E, kept inside [min E - pad, max E + pad].
GapLattice build_gap_lattice(const Eigen::VectorXd& points, const ExtensionConfig& cfg);

/// As above with an explicit truncation window.
GapLattice build_gap_lattice(const Eigen::VectorXd& points, double window_lo, double window_hi);

/// f on E merged with zeros on the lattice points.
SampledFunction zero_extend(const SampledFunction& s, const GapLattice& lattice);

/// The linear extension f -> F: (pad small sets,) build the gap lattice,
/// zero-fill, then interpolate the filled data on E u G with a C^{m-1}
/// piecewise polynomial of degree <= 2m - 1 that vanishes outside the window.
PiecewisePolynomial extend(const SampledFunction& s, const ExtensionConfig& cfg);

struct NecessityReport {
  FunctionalKind functional_kind = FunctionalKind::variational;
  double functional = 0.0;  // N (or its p = inf analogue)
  double sobolev = 0.0;     // ||F||_{W^m_p}
  double constant = 1.0;    // 2((m+1)(2m+1))^{1/p}, or 1 for p = inf
  double ratio = 0.0;       // functional / sobolev (0 when both vanish)
  bool pass = true;
};

/// Checks N(f:E) <= 2((m+1)(2m+1))^{1/p} ||F||_{W^m_p} (finite p) or
/// N_inf(f:E) <= ||F||_{W^m_inf} for an interpolant F of f.
NecessityReport verify_necessity(const SampledFunction& s, const PiecewisePolynomial& F, int m, double p,
                                 double quad_tol = kDefaultQuadTol);

/// max_i |F(x_i) - f(x_i)|.
double interpolation_residual(const SampledFunction& s, const PiecewisePolynomial& F);

}  // namespace wtrace

#endif  // WTRACE_EXTENSION_OPERATOR_HPP
