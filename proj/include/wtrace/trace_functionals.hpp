#ifndef WTRACE_TRACE_FUNCTIONALS_HPP
#define WTRACE_TRACE_FUNCTIONALS_HPP

#include "wtrace/sampled_function.hpp"

#include <Eigen/Core>

#include <limits>
#include <string>

namespace wtrace {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Largest #E accepted by the subset-enumerating functionals.
inline constexpr Eigen::Index kEnumerationCap = 20;

enum class FunctionalKind {
  sequence,
  variational,
  homogeneous_sequence,
  homogeneous_variational,
  sharp_maximal,
  small_set_max
};

std::string to_string(FunctionalKind kind);

struct FunctionalReport {
  int m = 1;
  double p = 2.0;  // kInfinity for the sup-norm variants
  double value = 0.0;
  FunctionalKind kind = FunctionalKind::sequence;
  int effective_order = 0;  // min(m, #E - 1)
};

/// |v|^p as exp(p log|v|), exactly 0 for v == 0.
double abs_pow(double v, double p);
/// s^(1/p) for s >= 0, exactly 0 for s == 0.
double root_p(double s, double p);

/// Throws InvalidInput unless p > 1 (p = inf allowed).
void require_exponent(double p);

int effective_order(const SampledFunction& s, int m);

namespace detail {

// sum_{k=0}^{min(m,n)} sum_i min{1, x_{i+m} - x_i} |Delta^k f[x_i..x_{i+k}]|^p for one
// strictly increasing sequence (x, y) of n + 1 points; +inf index convention.
double sequence_power_sum(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int m, double p);

// sum_i (x_{i+m} - x_i) |Delta^m f[x_i..x_{i+m}]|^p; needs n >= m.
double homogeneous_power_sum(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int m, double p);

// max over k <= max_order and consecutive windows of |Delta^k f|.
double window_sup(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int max_order);

}  // namespace detail

/// Sum over consecutive windows of E with weights min{1, x_{i+m} - x_i}
/// (the p-th root taken); for p = inf the largest |Delta^k f|, k <= min(m, #E - 1).
FunctionalReport sequence_functional(const SampledFunction& s, int m, double p);

/// Supremum of the sequence form over all strictly increasing subsequences
/// of length >= m + 1 (finite p), or of |Delta^k f| over all (k+1)-subsets,
/// k <= m (p = inf). Exhaustive; #E <= kEnumerationCap.
FunctionalReport variational_functional(const SampledFunction& s, int m, double p);

FunctionalReport homogeneous_sequence_functional(const SampledFunction& s, int m, double p);

FunctionalReport homogeneous_variational_functional(const SampledFunction& s, int m, double p);

/// max |Delta^k f| over consecutive windows, k = 0..#E-1, for 1 <= #E <= m.
FunctionalReport small_set_functional(const SampledFunction& s, int m, double p);

/// Appends x_k = x_n + 2(k - n), k = n+1..m, with zero values (#E = n + 1 <= m).
SampledFunction pad_small_set(const SampledFunction& s, int m);

}  // namespace wtrace

#endif  // WTRACE_TRACE_FUNCTIONALS_HPP
