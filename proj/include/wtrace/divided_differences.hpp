#ifndef WTRACE_DIVIDED_DIFFERENCES_HPP
#define WTRACE_DIVIDED_DIFFERENCES_HPP

#include "wtrace/errors.hpp"
#include "wtrace/piecewise_polynomial.hpp"
#include "wtrace/sampled_function.hpp"

#include <Eigen/Core>

#include <cmath>
#include <span>
#include <vector>

namespace wtrace {

namespace detail {

template <typename Derived>
void require_increasing(const Eigen::MatrixBase<Derived>& x) {
  if (x.size() < 1) throw InvalidInput("divided difference needs at least one point");
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    if (!(x(i + 1) - x(i) >= kMinSeparation))
      throw InvalidInput("divided difference points must be strictly increasing");
  }
}

// Top-order divided difference by the in-place triangular recurrence; no validation.
template <typename DX, typename DY>
typename DY::Scalar divdiff_unchecked(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  using Scalar = typename DY::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> work = y;
  const Eigen::Index n = x.size() - 1;
  for (Eigen::Index k = 1; k <= n; ++k) {
    for (Eigen::Index i = 0; i + k <= n; ++i) work(i) = (work(i + 1) - work(i)) / (x(i + k) - x(i));
  }
  return work(0);
}

}  // namespace detail

/// Delta^n f[x_0, ..., x_n] via the two-term recurrence over the full input.
template <typename DX, typename DY>
typename DY::Scalar divdiff_recursive(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  if (x.size() != y.size()) throw InvalidInput("points and values differ in length");
  detail::require_increasing(x);
  return detail::divdiff_unchecked(x, y);
}

/// Delta^n f[x_0, ..., x_n] as sum_i f(x_i) / omega'(x_i), accumulated in
/// input order with Neumaier compensation. Independent of the recurrence.
template <typename DX, typename DY>
typename DY::Scalar divdiff_sum(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  using Scalar = typename DY::Scalar;
  if (x.size() != y.size()) throw InvalidInput("points and values differ in length");
  detail::require_increasing(x);
  Scalar sum(0);
  Scalar compensation(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Scalar denom(1);
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      if (j != i) denom *= (x(i) - x(j));
    }
    const Scalar term = y(i) / denom;
    const Scalar t = sum + term;
    using std::abs;
    if (abs(sum) >= abs(term))
      compensation += (sum - t) + term;
    else
      compensation += (term - t) + sum;
    sum = t;
  }
  return sum + compensation;
}

inline double divdiff_recursive(const SampledFunction& s) { return detail::divdiff_unchecked(s.points(), s.values()); }
inline double divdiff_sum(const SampledFunction& s) { return divdiff_sum(s.points(), s.values()); }

/// The Lagrange interpolant of s as one global polynomial in the local
/// coordinate x - x_0, assembled from the expanded Lagrange basis.
PiecewisePolynomial lagrange_polynomial(const SampledFunction& s);

/// entries(k)(i) = Delta^k f[x_i, ..., x_{i+k}] for 0 <= k <= max_order.
class DividedDifferenceTable {
 public:
  DividedDifferenceTable(SampledFunction base, int max_order);

  const SampledFunction& base() const { return base_; }
  int max_order() const { return max_order_; }
  const Eigen::VectorXd& order(int k) const { return entries_.at(static_cast<std::size_t>(k)); }
  double operator()(int k, Eigen::Index i) const { return entries_[static_cast<std::size_t>(k)](i); }

 private:
  SampledFunction base_;
  int max_order_;
  std::vector<Eigen::VectorXd> entries_;
};

inline DividedDifferenceTable build_table(const SampledFunction& s, int max_order) { return {s, max_order}; }

/// A low-order certificate for a wide top-order difference: a window
/// [i, i+k] of diameter <= 1 with |Delta^n f[S]| <= 2^n |Delta^k f[window]| / diam S.
struct WideDifferenceCertificate {
  int order = 0;   // k
  int start = 0;   // i
  double bound = 0.0;
};

/// Reduces |Delta^n f| on a set of diameter >= 1 to a lower-order difference
/// on a short window by splitting S into its left and right n-point subsets
/// and following whichever certificate is larger (right on ties).
WideDifferenceCertificate reduce_wide_difference(const SampledFunction& s);

/// True iff Delta^k f on the chosen subset lies within [min, max] of the
/// order-k differences over consecutive windows of `full`, up to rel_tol
/// times the largest generator magnitude.
bool convex_hull_check(const SampledFunction& full, std::span<const Eigen::Index> subset_indices, int k,
                       double rel_tol = 1e-12);

}  // namespace wtrace

#endif  // WTRACE_DIVIDED_DIFFERENCES_HPP
