#include "wtrace/divided_differences.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace wtrace {

PiecewisePolynomial lagrange_polynomial(const SampledFunction& s) {
  const Eigen::Index n = s.size();
  const auto& x = s.points();
  const double origin = x(0);
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd basis(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // Expand prod_{j != i} (t - d_j) with d_j = x_j - x_0.
    basis.setZero();
    basis(0) = 1.0;
    Eigen::Index deg = 0;
    double denom = 1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = x(j) - origin;
      for (Eigen::Index k = deg + 1; k >= 1; --k) basis(k) = basis(k - 1) - d * basis(k);
      basis(0) = -d * basis(0);
      ++deg;
      denom *= x(i) - x(j);
    }
    coeffs += (s.values()(i) / denom) * basis;
  }
  const double span = n > 1 ? s.diameter() : 1.0;
  return PiecewisePolynomial::global(coeffs, origin, span);
}

DividedDifferenceTable::DividedDifferenceTable(SampledFunction base, int max_order)
    : base_(std::move(base)), max_order_(max_order) {
  if (max_order < 0 || max_order > base_.size() - 1)
    throw InvalidInput("table order " + std::to_string(max_order) + " outside [0, " +
                       std::to_string(base_.size() - 1) + "]");
  const auto& x = base_.points();
  entries_.reserve(static_cast<std::size_t>(max_order) + 1);
  entries_.push_back(base_.values());
  for (int k = 1; k <= max_order; ++k) {
    const Eigen::VectorXd& prev = entries_.back();
    const Eigen::Index len = prev.size() - 1;
    Eigen::VectorXd next(len);
    for (Eigen::Index i = 0; i < len; ++i) next(i) = (prev(i + 1) - prev(i)) / (x(i + k) - x(i));
    entries_.push_back(std::move(next));
  }
}

namespace {

struct Choice {
  int order;
  int start;
};

class WideReducer {
 public:
  explicit WideReducer(const SampledFunction& s) : x_(s.points()), table_(s, static_cast<int>(s.size()) - 1) {}

  double magnitude(const Choice& c) const { return std::abs(table_(c.order, c.start)); }

  // Certificate for the sub-sequence x_lo..x_hi, which has diameter >= 1.
  Choice certify(int lo, int hi) {
    const auto key = std::make_pair(lo, hi);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Choice result{};
    if (hi - lo == 1) {
      result = {0, std::abs(table_(0, lo)) > std::abs(table_(0, hi)) ? lo : hi};
    } else {
      const Choice left = x_(hi - 1) - x_(lo) >= 1.0 ? certify(lo, hi - 1) : Choice{hi - 1 - lo, lo};
      const Choice right = x_(hi) - x_(lo + 1) >= 1.0 ? certify(lo + 1, hi) : Choice{hi - lo - 1, lo + 1};
      result = magnitude(left) > magnitude(right) ? left : right;
    }
    memo_.emplace(key, result);
    return result;
  }

 private:
  const Eigen::VectorXd& x_;
  DividedDifferenceTable table_;
  std::map<std::pair<int, int>, Choice> memo_;
};

}  // namespace

WideDifferenceCertificate reduce_wide_difference(const SampledFunction& s) {
  if (s.size() < 2) throw PreconditionError("wide-difference reduction needs at least two points");
  if (!(s.diameter() >= 1.0)) throw PreconditionError("wide-difference reduction needs diam S >= 1");
  const int n = static_cast<int>(s.size()) - 1;
  WideReducer reducer(s);
  const Choice c = reducer.certify(0, n);
  return {c.order, c.start, std::ldexp(reducer.magnitude(c), n) / s.diameter()};
}

bool convex_hull_check(const SampledFunction& full, std::span<const Eigen::Index> subset_indices, int k,
                       double rel_tol) {
  if (k < 0 || static_cast<Eigen::Index>(subset_indices.size()) != k + 1)
    throw InvalidInput("hull check subset must have exactly k + 1 elements");
  if (k > full.size() - 1) throw InvalidInput("hull check order exceeds the full set");
  for (std::size_t j = 0; j < subset_indices.size(); ++j) {
    const Eigen::Index i = subset_indices[j];
    if (i < 0 || i >= full.size()) throw InvalidInput("hull check subset is not contained in the full set");
    if (j > 0 && i <= subset_indices[j - 1]) throw InvalidInput("hull check subset indices must be increasing");
  }
  const SampledFunction sub = full.restrict_to({subset_indices.begin(), subset_indices.end()});
  const double value = detail::divdiff_unchecked(sub.points(), sub.values());
  const DividedDifferenceTable table(full, k);
  const Eigen::VectorXd& gens = table.order(k);
  const double slack = rel_tol * gens.cwiseAbs().maxCoeff();
  return value >= gens.minCoeff() - slack && value <= gens.maxCoeff() + slack;
}

}  // namespace wtrace
