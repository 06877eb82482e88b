#ifndef WTRACE_SHARP_MAXIMAL_HPP
#define WTRACE_SHARP_MAXIMAL_HPP

#include "wtrace/sampled_function.hpp"
#include "wtrace/trace_functionals.hpp"

#include <Eigen/Core>

#include <vector>

namespace wtrace {

/// Local sharp maximal function of order k at x: the sup over (k+1)-subsets
/// S of E with dist(x, S) <= 1 of |Delta^k f[S]| (k < m), or of
/// diam S / diam(S u {x}) * |Delta^m f[S]| (k = m); 0 if no subset qualifies.
/// Brute force over all subsets; #E <= kEnumerationCap.
double sharp_value(const SampledFunction& s, int m, int k, double x);

/// Quadrature grid: cells of width <= h partitioning
/// [min E - 1 - margin, max E + 1 + margin], with every point of E and E +- 1
/// as a cell boundary.
struct GridSpec {
  double h = 0.02;
  double margin = 0.0;
};

struct MaximalProfile {
  int k = 0;
  Eigen::VectorXd grid;    // cell midpoints
  Eigen::VectorXd widths;  // cell widths
  Eigen::VectorXd values;  // f#_k at the midpoints
  double support_lo = 0.0;
  double support_hi = 0.0;

  /// Midpoint estimate of the integral of (f#_k)^p.
  double integral_of_power(double p) const;
};

/// Cell boundaries for `grid` over the points of s.
std::vector<double> quadrature_nodes(const SampledFunction& s, const GridSpec& grid);

MaximalProfile sharp_profile(const SampledFunction& s, int m, int k, const GridSpec& grid);

/// sum_{k=0}^m (integral of (f#_k)^p)^(1/p) by composite midpoint quadrature.
/// Finite p only.
FunctionalReport wmf_functional(const SampledFunction& s, int m, double p, const GridSpec& grid = {});

}  // namespace wtrace

#endif  // WTRACE_SHARP_MAXIMAL_HPP
