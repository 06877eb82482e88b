#ifndef WTRACE_CORPUS_HPP
#define WTRACE_CORPUS_HPP

#include "wtrace/sampled_function.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace wtrace {

/// Seeded generator; uniform and normal variates come straight from the raw
/// 64-bit engine, so a seed gives the same stream on every platform.
class CorpusRng {
 public:
  explicit CorpusRng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();   // Box-Muller
  int uniform_int(int lo, int hi);  // inclusive

 private:
  std::mt19937_64 engine_;
};

struct CorpusSpec {
  std::uint64_t seed = 1;
  int count = 30;
  std::vector<int> orders{1, 2, 3};
  std::vector<double> exponents{1.5, 2.0, 3.0};
  int min_points = 1;
  int max_points = 12;
  std::vector<double> lengths{2.0, 10.0, 50.0};
  double min_gap = 1e-3;
};

struct CorpusInstance {
  int id = 0;
  int m = 1;
  double p = 2.0;
  double length = 1.0;
  SampledFunction data;
};

/// Uniform knots in [0, L] (resampled until the minimum gap is met),
/// standard normal values; m, p, L and #E drawn uniformly from the CorpusSpec lists.
std::vector<CorpusInstance> random_corpus(const CorpusSpec& spec);

/// Sorted uniform points in [lo, hi] with consecutive gaps >= min_gap.
std::vector<double> random_points(CorpusRng& rng, int count, double lo, double hi, double min_gap);

}  // namespace wtrace

#endif  // WTRACE_CORPUS_HPP
