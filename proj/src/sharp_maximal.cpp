#include "wtrace/sharp_maximal.hpp"

#include "wtrace/divided_differences.hpp"
#include "wtrace/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace wtrace {

namespace {

void require_sharp_args(const SampledFunction& s, int m, int k) {
  if (m < 1) throw InvalidInput("smoothness order m must be a positive integer");
  if (k < 0 || k > m) throw InvalidInput("sharp maximal order k must lie in [0, m]");
  if (s.size() > kEnumerationCap)
    throw Unsupported("sharp maximal functions enumerate subsets; #E is capped at 20");
}

// Calls visit(indices) for every increasing (size)-subset of {0..n-1}.
void for_each_subset(int n, int size, const std::function<void(const std::vector<int>&)>& visit) {
  if (size > n) return;
  std::vector<int> idx(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    visit(idx);
    int pos = size - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - size + pos) --pos;
    if (pos < 0) return;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < size; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// All (k+1)-subsets of E with |Delta^k f[S]| and hull [lo, hi], precomputed
// once for repeated evaluation.
class SharpEvaluator {
 public:
  SharpEvaluator(const SampledFunction& s, int m, int k) : points_(s.points()), top_order_(k == m), size_(k + 1) {
    Eigen::VectorXd x(size_);
    Eigen::VectorXd y(size_);
    for_each_subset(static_cast<int>(s.size()), size_, [&](const std::vector<int>& idx) {
      for (int j = 0; j < size_; ++j) {
        x(j) = s.points()(idx[static_cast<std::size_t>(j)]);
        y(j) = s.values()(idx[static_cast<std::size_t>(j)]);
      }
      members_.insert(members_.end(), idx.begin(), idx.end());
      magnitude_.push_back(std::abs(detail::divdiff_unchecked(x, y)));
      lo_.push_back(x(0));
      hi_.push_back(x(size_ - 1));
    });
  }

  // Subsets with a member within distance 1 of x.
  std::vector<std::size_t> admissible_at(double x) const {
    std::vector<bool> near(static_cast<std::size_t>(points_.size()));
    for (Eigen::Index i = 0; i < points_.size(); ++i) near[static_cast<std::size_t>(i)] = std::abs(points_(i) - x) <= 1.0;
    std::vector<std::size_t> out;
    const auto width = static_cast<std::size_t>(size_);
    for (std::size_t c = 0; c < magnitude_.size(); ++c) {
      for (std::size_t j = 0; j < width; ++j) {
        if (near[static_cast<std::size_t>(members_[c * width + j])]) {
          out.push_back(c);
          break;
        }
      }
    }
    return out;
  }

  double value(std::size_t c, double x) const {
    if (!top_order_) return magnitude_[c];
    const double diam = hi_[c] - lo_[c];
    return magnitude_[c] * diam / (std::max(hi_[c], x) - std::min(lo_[c], x));
  }

  // Drops subsets that cannot beat the ones whose hull covers [a, b]; on such
  // an interval no hull endpoint lies strictly inside.
  std::vector<std::size_t> prune(const std::vector<std::size_t>& candidates, double a, double b) const {
    if (!top_order_) {
      std::vector<std::size_t> best;
      for (std::size_t c : candidates) {
        if (best.empty() || magnitude_[c] > magnitude_[best.front()]) best.assign(1, c);
      }
      return best;
    }
    double floor = 0.0;
    for (std::size_t c : candidates) {
      if (lo_[c] <= a && hi_[c] >= b) floor = std::max(floor, magnitude_[c]);
    }
    std::vector<std::size_t> kept;
    for (std::size_t c : candidates) {
      const double peak = lo_[c] <= a && hi_[c] >= b ? magnitude_[c] : std::max(value(c, a), value(c, b));
      if (peak >= floor) kept.push_back(c);
    }
    return kept;
  }

 private:
  const Eigen::VectorXd& points_;
  bool top_order_;
  int size_;
  std::vector<int> members_;
  std::vector<double> magnitude_;
  std::vector<double> lo_;
  std::vector<double> hi_;
};

std::vector<double> forced_nodes(const SampledFunction& s, double margin) {
  const double lo = s.points()(0) - 1.0 - margin;
  const double hi = s.points()(s.size() - 1) + 1.0 + margin;
  std::vector<double> forced{lo, hi};
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    for (double shift : {-1.0, 0.0, 1.0}) forced.push_back(s.points()(i) + shift);
  }
  std::sort(forced.begin(), forced.end());
  forced.erase(std::unique(forced.begin(), forced.end()), forced.end());
  return forced;
}

int cells_between(double a, double b, double h) {
  return std::max(1, static_cast<int>(std::ceil((b - a) / h - 1e-9)));
}

}  // namespace

double sharp_value(const SampledFunction& s, int m, int k, double x) {
  require_sharp_args(s, m, k);
  double best = 0.0;
  Eigen::VectorXd px(k + 1);
  Eigen::VectorXd py(k + 1);
  for_each_subset(static_cast<int>(s.size()), k + 1, [&](const std::vector<int>& idx) {
    double dist = kInfinity;
    for (int j = 0; j <= k; ++j) {
      px(j) = s.points()(idx[static_cast<std::size_t>(j)]);
      py(j) = s.values()(idx[static_cast<std::size_t>(j)]);
      dist = std::min(dist, std::abs(px(j) - x));
    }
    if (dist > 1.0) return;
    double v = std::abs(detail::divdiff_unchecked(px, py));
    if (k == m) {
      const double diam = px(k) - px(0);
      const double diam_with_x = std::max(px(k), x) - std::min(px(0), x);
      v *= diam / diam_with_x;
    }
    best = std::max(best, v);
  });
  return best;
}

double MaximalProfile::integral_of_power(double p) const {
  double total = 0.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) total += widths(i) * abs_pow(values(i), p);
  return total;
}

std::vector<double> quadrature_nodes(const SampledFunction& s, const GridSpec& grid) {
  if (!(grid.h > 0.0)) throw InvalidInput("grid spacing h must be positive");
  if (!(grid.margin >= 0.0)) throw InvalidInput("grid margin must be nonnegative");
  const std::vector<double> forced = forced_nodes(s, grid.margin);
  std::vector<double> nodes{forced.front()};
  for (std::size_t i = 0; i + 1 < forced.size(); ++i) {
    const double a = forced[i];
    const double b = forced[i + 1];
    const int cells = cells_between(a, b, grid.h);
    for (int c = 1; c < cells; ++c) nodes.push_back(a + (b - a) * c / cells);
    nodes.push_back(b);
  }
  return nodes;
}

MaximalProfile sharp_profile(const SampledFunction& s, int m, int k, const GridSpec& grid) {
  require_sharp_args(s, m, k);
  const std::vector<double> nodes = quadrature_nodes(s, grid);
  if (nodes.size() < 2) throw InvalidInput("empty quadrature grid");
  const Eigen::Index cells = static_cast<Eigen::Index>(nodes.size()) - 1;
  MaximalProfile profile;
  profile.k = k;
  profile.grid.resize(cells);
  profile.widths.resize(cells);
  profile.values = Eigen::VectorXd::Zero(cells);
  profile.support_lo = s.points()(0) - 1.0;
  profile.support_hi = s.points()(s.size() - 1) + 1.0;
  for (Eigen::Index c = 0; c < cells; ++c) {
    profile.grid(c) = 0.5 * (nodes[static_cast<std::size_t>(c)] + nodes[static_cast<std::size_t>(c) + 1]);
    profile.widths(c) = nodes[static_cast<std::size_t>(c) + 1] - nodes[static_cast<std::size_t>(c)];
  }
  if (k + 1 > s.size()) return profile;

  // The admissible family is constant between consecutive forced nodes.
  const SharpEvaluator eval(s, m, k);
  const std::vector<double> forced = forced_nodes(s, grid.margin);
  Eigen::Index c = 0;
  for (std::size_t i = 0; i + 1 < forced.size(); ++i) {
    const double a = forced[i];
    const double b = forced[i + 1];
    const int count = cells_between(a, b, grid.h);
    const std::vector<std::size_t> family = eval.prune(eval.admissible_at(0.5 * (a + b)), a, b);
    for (int j = 0; j < count; ++j, ++c) {
      double best = 0.0;
      for (std::size_t member : family) best = std::max(best, eval.value(member, profile.grid(c)));
      profile.values(c) = best;
    }
  }
  return profile;
}

FunctionalReport wmf_functional(const SampledFunction& s, int m, double p, const GridSpec& grid) {
  require_exponent(p);
  if (std::isinf(p)) throw Unsupported("the sharp maximal criterion is defined for finite p only");
  double total = 0.0;
  for (int k = 0; k <= m; ++k) total += root_p(sharp_profile(s, m, k, grid).integral_of_power(p), p);
  return {m, p, total, FunctionalKind::sharp_maximal, effective_order(s, m)};
}

}  // namespace wtrace
