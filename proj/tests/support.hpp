#ifndef WTRACE_TESTS_SUPPORT_HPP
#define WTRACE_TESTS_SUPPORT_HPP

#include "wtrace/corpus.hpp"
#include "wtrace/sampled_function.hpp"
#include "wtrace/trace_functionals.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace wtrace::testing {

inline SampledFunction random_sampled(CorpusRng& rng, int count, double lo, double hi, double min_gap = 1e-3) {
  const std::vector<double> pts = random_points(rng, count, lo, hi, min_gap);
  std::vector<double> vals(pts.size());
  for (double& v : vals) v = rng.normal();
  return {pts, vals};
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

// Polynomial sum_k c_k x^k evaluated in the global coordinate.
inline double poly_at(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline SampledFunction sample_poly(const std::vector<double>& pts, const std::vector<double>& c) {
  std::vector<double> vals;
  for (double x : pts) vals.push_back(poly_at(c, x));
  return {pts, vals};
}

// Visits every strictly increasing index subsequence by include/exclude
// recursion, in an order unrelated to bitmask enumeration.
inline void for_each_subsequence(Eigen::Index n, const std::function<void(const std::vector<Eigen::Index>&)>& visit) {
  std::vector<Eigen::Index> chosen;
  std::function<void(Eigen::Index)> rec = [&](Eigen::Index i) {
    if (i == n) {
      if (!chosen.empty()) visit(chosen);
      return;
    }
    rec(i + 1);
    chosen.push_back(i);
    rec(i + 1);
    chosen.pop_back();
  };
  rec(0);
}

inline void gather(const SampledFunction& s, const std::vector<Eigen::Index>& idx, Eigen::VectorXd& x,
                   Eigen::VectorXd& y) {
  x.resize(static_cast<Eigen::Index>(idx.size()));
  y.resize(x.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    x(static_cast<Eigen::Index>(j)) = s.points()(idx[j]);
    y(static_cast<Eigen::Index>(j)) = s.values()(idx[j]);
  }
}

// Brute-force sup of the finite-p sequence power sum over subsequences of length >= m + 1.
inline double variational_oracle(const SampledFunction& s, int m, double p) {
  double best = 0.0;
  Eigen::VectorXd x, y;
  for_each_subsequence(s.size(), [&](const std::vector<Eigen::Index>& idx) {
    if (static_cast<int>(idx.size()) < m + 1) return;
    gather(s, idx, x, y);
    best = std::max(best, detail::sequence_power_sum(x, y, m, p));
  });
  return root_p(best, p);
}

inline double homogeneous_variational_oracle(const SampledFunction& s, int m, double p) {
  double best = 0.0;
  Eigen::VectorXd x, y;
  for_each_subsequence(s.size(), [&](const std::vector<Eigen::Index>& idx) {
    if (static_cast<int>(idx.size()) < m + 1) return;
    gather(s, idx, x, y);
    best = std::max(best, detail::homogeneous_power_sum(x, y, m, p));
  });
  return root_p(best, p);
}

}  // namespace wtrace::testing

#endif
