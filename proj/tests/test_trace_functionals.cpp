#include "support.hpp"
#include "wtrace/divided_differences.hpp"
#include "wtrace/errors.hpp"
#include "wtrace/trace_functionals.hpp"

#include <doctest.h>

#include <cmath>

using namespace wtrace;
using wtrace::testing::random_sampled;

TEST_CASE("sequence functional examples") {
  CHECK(sequence_functional(SampledFunction({0, 1, 2}, {0, 0, 0}), 2, 2.0).value == 0.0);
  const FunctionalReport r = sequence_functional(SampledFunction({0, 0.5, 3}, {0, 1, 1}), 1, 2.0);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.kind == FunctionalKind::sequence);
  CHECK(r.effective_order == 1);
  const FunctionalReport single = sequence_functional(SampledFunction({3.0}, {-2.5}), 4, kInfinity);
  CHECK(single.value == 2.5);
  CHECK(single.effective_order == 0);
  CHECK_THROWS_AS(sequence_functional(SampledFunction({0.0}, {1.0}), 1, 1.0), InvalidInput);
  CHECK_THROWS_AS(sequence_functional(SampledFunction({0.0}, {1.0}), 1, 0.5), InvalidInput);
  CHECK_THROWS_AS(sequence_functional(SampledFunction({0.0}, {1.0}), 0, 2.0), InvalidInput);
}

TEST_CASE("index past the end carries weight exactly one") {
  const double a = 0.3, b = -1.7, p = 3.0;
  const SampledFunction s({0.0, 0.01}, {a, b});
  const double slope = (b - a) / 0.01;
  const double expected = abs_pow(a, p) + abs_pow(b, p) + abs_pow(slope, p);
  CHECK(detail::sequence_power_sum(s.points(), s.values(), 3, p) == expected);
  const ExtendedGap past = ExtendedGap::between(s.points(), 1, 4);
  CHECK(past.is_infinite());
  CHECK(past.capped() == 1.0);
  CHECK(ExtendedGap{0.25}.capped() == 0.25);
}

TEST_CASE("variational functional examples") {
  CHECK(variational_functional(SampledFunction({0, 1, 2, 5}, {0, 0, 0, 0}), 2, 2.0).value == 0.0);
  CorpusRng rng(21);
  for (int m = 1; m <= 3; ++m) {
    const SampledFunction s = random_sampled(rng, m + 1, 0.0, 3.0);
    for (double p : {1.5, 2.0, 3.0})
      CHECK(variational_functional(s, m, p).value == sequence_functional(s, m, p).value);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const SampledFunction s = random_sampled(rng, 9, 0.0, 10.0);
    CHECK(variational_functional(s, 2, 2.0).value >= sequence_functional(s, 2, 2.0).value);
  }
  CHECK_THROWS_AS(variational_functional(SampledFunction({0.0, 1.0}, {1.0, 2.0}), 2, 2.0), PreconditionError);
  CHECK_NOTHROW(variational_functional(SampledFunction({0.0, 1.0}, {1.0, 2.0}), 2, kInfinity));
  const SampledFunction big = random_sampled(rng, 21, 0.0, 40.0);
  CHECK_THROWS_AS(variational_functional(big, 1, 2.0), Unsupported);
}

TEST_CASE("homogeneous sequence functional examples") {
  const FunctionalReport r = homogeneous_sequence_functional(SampledFunction({0, 1, 3}, {0, 1, 1}), 1, 2.0);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-15));
  CorpusRng rng(22);
  for (int m = 1; m <= 4; ++m) {
    std::vector<double> c(static_cast<std::size_t>(m));
    for (double& v : c) v = rng.normal();
    const std::vector<double> pts = random_points(rng, 8, 0.0, 6.0, 0.05);
    const SampledFunction poly = testing::sample_poly(pts, c);
    CHECK(homogeneous_sequence_functional(poly, m, 2.0).value <= 1e-10 * std::max(1.0, poly.max_abs_value()));

    const SampledFunction s = random_sampled(rng, 8, 0.0, 6.0, 0.05);
    const std::vector<double> at(s.points().data(), s.points().data() + s.size());
    const SampledFunction shifted(s.points(), s.values() + testing::sample_poly(at, c).values());
    for (double p : {1.5, 2.0, kInfinity})
      CHECK(homogeneous_sequence_functional(shifted, m, p).value ==
            doctest::Approx(homogeneous_sequence_functional(s, m, p).value).epsilon(1e-8));
  }
  CHECK_THROWS_AS(homogeneous_sequence_functional(SampledFunction({0.0, 1.0}, {1.0, 2.0}), 2, 2.0),
                  PreconditionError);
}

TEST_CASE("homogeneous variational functional") {
  CHECK(homogeneous_variational_functional(SampledFunction({0, 1, 2}, {0, 0, 0}), 1, 2.0).value == 0.0);
  CorpusRng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.uniform_int(2, 8);
    const SampledFunction s = random_sampled(rng, n, 0.0, rng.uniform(1.0, 10.0));
    for (double p : {1.5, 2.0, 3.0}) {
      CHECK(homogeneous_variational_functional(s, 1, p).value == homogeneous_sequence_functional(s, 1, p).value);
      if (n >= 3)
        CHECK(homogeneous_variational_functional(s, 2, p).value >= homogeneous_sequence_functional(s, 2, p).value);
    }
  }
}

TEST_CASE("small-set functional and padding") {
  CHECK(small_set_functional(SampledFunction({1.0}, {-4.0}), 1, 2.0).value == 4.0);
  const SampledFunction two({0, 1}, {0, 1});
  CHECK(small_set_functional(two, 2, 2.0).value == 1.0);
  CHECK(small_set_functional(two, 2, 2.0).kind == FunctionalKind::small_set_max);
  CHECK_THROWS_AS(small_set_functional(two, 1, 2.0), PreconditionError);

  const SampledFunction padded = pad_small_set(SampledFunction({5.0}, {1.0}), 2);
  REQUIRE(padded.size() == 3);
  CHECK(padded.points() == Eigen::Vector3d(5, 7, 9));
  CHECK(padded.values() == Eigen::Vector3d(1, 0, 0));
  CHECK_THROWS_AS(pad_small_set(SampledFunction({0, 1, 2}, {1, 2, 3}), 2), PreconditionError);

  CorpusRng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = rng.uniform_int(1, 5);
    const int n = rng.uniform_int(1, m);
    const SampledFunction s = random_sampled(rng, n, -2.0, 2.0);
    for (double p : {1.5, 3.0, kInfinity})
      CHECK(small_set_functional(s, m, p).value == sequence_functional(s, m, kInfinity).value);
    const SampledFunction e = pad_small_set(s, m);
    REQUIRE(e.size() == m + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
      CHECK(e.points()(i) == s.points()(i));
      CHECK(e.values()(i) == s.values()(i));
    }
    for (Eigen::Index i = n; i <= m; ++i) {
      CHECK(e.points()(i) == s.points()(n - 1) + 2.0 * static_cast<double>(i - n + 1));
      CHECK(e.points()(i) - e.points()(i - 1) == doctest::Approx(2.0).epsilon(1e-12));
      CHECK(e.values()(i) == 0.0);
    }
    CHECK(sequence_functional(e, m, kInfinity).value >= small_set_functional(s, m, kInfinity).value);
  }
}

TEST_CASE("sup variant against the finite-p sums") {
  CorpusRng rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = rng.uniform_int(1, 3);
    const SampledFunction s = random_sampled(rng, rng.uniform_int(1, 10), 0.0, rng.uniform(1.0, 20.0));
    const double p = rng.uniform(1.1, 4.0);
    const double finite = sequence_functional(s, m, p).value;
    const double sup = sequence_functional(s, m, kInfinity).value;
    const auto& x = s.points();
    const int top = effective_order(s, m);
    double largest_term = 0.0;
    long terms = 0;
    for (int k = 0; k <= top; ++k) {
      for (Eigen::Index i = 0; i + k < s.size(); ++i) {
        std::vector<Eigen::Index> w;
        for (Eigen::Index j = i; j <= i + k; ++j) w.push_back(j);
        const double weight = i + m < s.size() ? std::min(1.0, x(i + m) - x(i)) : 1.0;
        largest_term = std::max(largest_term, weight * abs_pow(divdiff_recursive(s.restrict_to(w)), p));
        ++terms;
      }
    }
    CHECK(root_p(largest_term, p) <= finite * (1 + 1e-12));
    CHECK(finite <= std::pow(static_cast<double>(terms), 1.0 / p) * sup * (1 + 1e-12));
  }
}

TEST_CASE("absolute homogeneity of every functional") {
  CorpusRng rng(26);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = rng.uniform_int(1, 3);
    const SampledFunction s = random_sampled(rng, rng.uniform_int(m + 1, 9), 0.0, 8.0);
    const double alpha = rng.uniform(-5.0, 5.0);
    const SampledFunction t = s.scaled(alpha);
    for (double p : {1.5, 2.0, kInfinity}) {
      CHECK(sequence_functional(t, m, p).value == doctest::Approx(std::abs(alpha) * sequence_functional(s, m, p).value));
      CHECK(variational_functional(t, m, p).value ==
            doctest::Approx(std::abs(alpha) * variational_functional(s, m, p).value));
      CHECK(homogeneous_sequence_functional(t, m, p).value ==
            doctest::Approx(std::abs(alpha) * homogeneous_sequence_functional(s, m, p).value));
      CHECK(homogeneous_variational_functional(t, m, p).value ==
            doctest::Approx(std::abs(alpha) * homogeneous_variational_functional(s, m, p).value));
    }
    const SampledFunction small = random_sampled(rng, m, 0.0, 3.0);
    CHECK(small_set_functional(small.scaled(alpha), m, 2.0).value ==
          doctest::Approx(std::abs(alpha) * small_set_functional(small, m, 2.0).value));
  }
}

TEST_CASE("sequence functional never exceeds the variational functional") {
  CorpusRng rng(27);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = rng.uniform_int(1, 3);
    const SampledFunction s = random_sampled(rng, rng.uniform_int(m + 1, 10), 0.0, rng.uniform(2.0, 30.0));
    for (double p : {1.5, 2.0, 3.0, kInfinity})
      CHECK(sequence_functional(s, m, p).value <= variational_functional(s, m, p).value);
  }
}

TEST_CASE("subset enumeration matches the recursive oracle bit for bit") {
  CorpusRng rng(28);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = rng.uniform_int(1, 3);
    const SampledFunction s = random_sampled(rng, rng.uniform_int(m + 1, 9), 0.0, rng.uniform(1.0, 15.0));
    for (double p : {1.5, 2.0, 3.0}) {
      CHECK(variational_functional(s, m, p).value == testing::variational_oracle(s, m, p));
      CHECK(homogeneous_variational_functional(s, m, p).value == testing::homogeneous_variational_oracle(s, m, p));
    }
    double sup = 0.0;
    double sup_m = 0.0;
    Eigen::VectorXd x, y;
    testing::for_each_subsequence(s.size(), [&](const std::vector<Eigen::Index>& idx) {
      if (static_cast<int>(idx.size()) > m + 1) return;
      testing::gather(s, idx, x, y);
      const double v = std::abs(divdiff_recursive(x, y));
      sup = std::max(sup, v);
      if (static_cast<int>(idx.size()) == m + 1) sup_m = std::max(sup_m, v);
    });
    CHECK(variational_functional(s, m, kInfinity).value == sup);
    CHECK(homogeneous_variational_functional(s, m, kInfinity).value == sup_m);
  }
}
