#include "wtrace/corpus.hpp"

#include "wtrace/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wtrace {

double CorpusRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double CorpusRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int CorpusRng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

std::vector<double> random_points(CorpusRng& rng, int count, double lo, double hi, double min_gap) {
  if (count < 1) throw InvalidInput("point count must be positive");
  if ((count - 1) * min_gap > 0.5 * (hi - lo)) throw InvalidInput("interval too short for the requested gap");
  std::vector<double> pts(static_cast<std::size_t>(count));
  while (true) {
    for (double& x : pts) x = rng.uniform(lo, hi);
    std::sort(pts.begin(), pts.end());
    bool ok = true;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) ok = ok && pts[i + 1] - pts[i] >= min_gap;
    if (ok) return pts;
  }
}

std::vector<CorpusInstance> random_corpus(const CorpusSpec& spec) {
  if (spec.orders.empty() || spec.exponents.empty() || spec.lengths.empty())
    throw InvalidInput("corpus spec needs orders, exponents and lengths");
  CorpusRng rng(spec.seed);
  std::vector<CorpusInstance> corpus;
  corpus.reserve(static_cast<std::size_t>(spec.count));
  for (int id = 0; id < spec.count; ++id) {
    const auto pick = [&rng](const auto& options) {
      return options[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(options.size()) - 1))];
    };
    const int m = pick(spec.orders);
    const double p = pick(spec.exponents);
    const double length = pick(spec.lengths);
    const int count = rng.uniform_int(spec.min_points, spec.max_points);
    const std::vector<double> pts = random_points(rng, count, 0.0, length, spec.min_gap);
    std::vector<double> vals(pts.size());
    for (double& v : vals) v = rng.normal();
    corpus.push_back({id, m, p, length, SampledFunction(pts, vals)});
  }
  return corpus;
}

}  // namespace wtrace
