#include "wtrace/trace_functionals.hpp"

#include "wtrace/divided_differences.hpp"
#include "wtrace/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

namespace wtrace {

std::string to_string(FunctionalKind kind) {
  switch (kind) {
    case FunctionalKind::sequence: return "sequence";
    case FunctionalKind::variational: return "variational";
    case FunctionalKind::homogeneous_sequence: return "homogeneous_sequence";
    case FunctionalKind::homogeneous_variational: return "homogeneous_variational";
    case FunctionalKind::sharp_maximal: return "sharp_maximal";
    case FunctionalKind::small_set_max: return "small_set_max";
  }
  return "unknown";
}

double abs_pow(double v, double p) {
  if (v == 0.0) return 0.0;
  return std::exp(p * std::log(std::abs(v)));
}

double root_p(double s, double p) {
  if (s == 0.0) return 0.0;
  return std::exp(std::log(s) / p);
}

void require_exponent(double p) {
  if (!(p > 1.0)) throw InvalidInput("exponent p must satisfy p > 1 (or be inf)");
}

int effective_order(const SampledFunction& s, int m) { return std::min(m, static_cast<int>(s.size()) - 1); }

namespace {

void require_order(int m) {
  if (m < 1) throw InvalidInput("smoothness order m must be a positive integer");
}

void require_enumerable(const SampledFunction& s) {
  if (s.size() > kEnumerationCap)
    throw Unsupported("subset enumeration is capped at #E = 20 (got " + std::to_string(s.size()) + ")");
}

// Gathers the points/values selected by `mask` into (x, y).
void gather(const SampledFunction& s, std::uint32_t mask, Eigen::VectorXd& x, Eigen::VectorXd& y) {
  const int count = std::popcount(mask);
  x.resize(count);
  y.resize(count);
  Eigen::Index j = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (mask & (std::uint32_t{1} << i)) {
      x(j) = s.points()(i);
      y(j) = s.values()(i);
      ++j;
    }
  }
}

FunctionalReport make_report(const SampledFunction& s, int m, double p, double value, FunctionalKind kind) {
  return {m, p, value, kind, effective_order(s, m)};
}

}  // namespace

namespace detail {

double sequence_power_sum(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int m, double p) {
  const Eigen::Index n = x.size() - 1;
  const Eigen::Index top = std::min<Eigen::Index>(m, n);
  Eigen::VectorXd work = y;
  double total = 0.0;
  for (Eigen::Index k = 0; k <= top; ++k) {
    if (k > 0) {
      for (Eigen::Index i = 0; i + k <= n; ++i) work(i) = (work(i + 1) - work(i)) / (x(i + k) - x(i));
    }
    for (Eigen::Index i = 0; i + k <= n; ++i)
      total += ExtendedGap::between(x, i, i + m).capped() * abs_pow(work(i), p);
  }
  return total;
}

double homogeneous_power_sum(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int m, double p) {
  const Eigen::Index n = x.size() - 1;
  Eigen::VectorXd work = y;
  for (Eigen::Index k = 1; k <= m; ++k) {
    for (Eigen::Index i = 0; i + k <= n; ++i) work(i) = (work(i + 1) - work(i)) / (x(i + k) - x(i));
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i + m <= n; ++i) total += (x(i + m) - x(i)) * abs_pow(work(i), p);
  return total;
}

double window_sup(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int max_order) {
  const Eigen::Index n = x.size() - 1;
  Eigen::VectorXd work = y;
  double best = 0.0;
  for (Eigen::Index k = 0; k <= std::min<Eigen::Index>(max_order, n); ++k) {
    if (k > 0) {
      for (Eigen::Index i = 0; i + k <= n; ++i) work(i) = (work(i + 1) - work(i)) / (x(i + k) - x(i));
    }
    for (Eigen::Index i = 0; i + k <= n; ++i) best = std::max(best, std::abs(work(i)));
  }
  return best;
}

}  // namespace detail

FunctionalReport sequence_functional(const SampledFunction& s, int m, double p) {
  require_order(m);
  require_exponent(p);
  const double value = std::isinf(p) ? detail::window_sup(s.points(), s.values(), m)
                                     : root_p(detail::sequence_power_sum(s.points(), s.values(), m, p), p);
  return make_report(s, m, p, value, FunctionalKind::sequence);
}

FunctionalReport variational_functional(const SampledFunction& s, int m, double p) {
  require_order(m);
  require_exponent(p);
  const bool sup_norm = std::isinf(p);
  if (!sup_norm && s.size() <= m)
    throw PreconditionError("variational functional needs #E >= m + 1; use the small-set functional");
  require_enumerable(s);
  const std::uint32_t full = (std::uint32_t{1} << s.size()) - 1;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  double best = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int count = std::popcount(mask);
    if (sup_norm) {
      if (count > m + 1) continue;
      gather(s, mask, x, y);
      best = std::max(best, std::abs(detail::divdiff_unchecked(x, y)));
    } else {
      if (count < m + 1) continue;
      gather(s, mask, x, y);
      best = std::max(best, detail::sequence_power_sum(x, y, m, p));
    }
  }
  return make_report(s, m, p, sup_norm ? best : root_p(best, p), FunctionalKind::variational);
}

FunctionalReport homogeneous_sequence_functional(const SampledFunction& s, int m, double p) {
  require_order(m);
  require_exponent(p);
  if (s.size() <= m) throw PreconditionError("homogeneous functional needs #E >= m + 1");
  double value = 0.0;
  if (std::isinf(p)) {
    Eigen::VectorXd work = s.values();
    const auto& x = s.points();
    const Eigen::Index n = s.size() - 1;
    for (Eigen::Index k = 1; k <= m; ++k) {
      for (Eigen::Index i = 0; i + k <= n; ++i) work(i) = (work(i + 1) - work(i)) / (x(i + k) - x(i));
    }
    value = work.head(n - m + 1).cwiseAbs().maxCoeff();
  } else {
    value = root_p(detail::homogeneous_power_sum(s.points(), s.values(), m, p), p);
  }
  return make_report(s, m, p, value, FunctionalKind::homogeneous_sequence);
}

FunctionalReport homogeneous_variational_functional(const SampledFunction& s, int m, double p) {
  require_order(m);
  require_exponent(p);
  if (s.size() <= m) throw PreconditionError("homogeneous variational functional needs #E >= m + 1");
  require_enumerable(s);
  const bool sup_norm = std::isinf(p);
  const std::uint32_t full = (std::uint32_t{1} << s.size()) - 1;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  double best = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int count = std::popcount(mask);
    if (count < m + 1 || (sup_norm && count != m + 1)) continue;
    gather(s, mask, x, y);
    best = std::max(best, sup_norm ? std::abs(detail::divdiff_unchecked(x, y))
                                   : detail::homogeneous_power_sum(x, y, m, p));
  }
  return make_report(s, m, p, sup_norm ? best : root_p(best, p), FunctionalKind::homogeneous_variational);
}

FunctionalReport small_set_functional(const SampledFunction& s, int m, double p) {
  require_order(m);
  require_exponent(p);
  if (s.size() > m) throw PreconditionError("small-set functional needs #E <= m");
  const double value = detail::window_sup(s.points(), s.values(), static_cast<int>(s.size()) - 1);
  return make_report(s, m, p, value, FunctionalKind::small_set_max);
}

SampledFunction pad_small_set(const SampledFunction& s, int m) {
  require_order(m);
  if (s.size() > m) throw PreconditionError("padding applies only to sets with #E <= m");
  const Eigen::Index n = s.size() - 1;
  Eigen::VectorXd x(m + 1);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m + 1);
  x.head(n + 1) = s.points();
  y.head(n + 1) = s.values();
  for (Eigen::Index k = n + 1; k <= m; ++k) x(k) = s.points()(n) + 2.0 * static_cast<double>(k - n);
  return {x, y};
}

}  // namespace wtrace
