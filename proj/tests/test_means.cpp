#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "summa/error.hpp"
#include "summa/means.hpp"

using namespace summa;

namespace {

PartialSumSequence seq(std::vector<double> v) { return PartialSumSequence(std::move(v)); }

std::vector<PartialSumSequence> positive_corpus(std::size_t count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> len(1, 50);
  std::uniform_real_distribution<double> val(0.05, 10.0);
  std::vector<PartialSumSequence> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> v(len(rng));
    for (double& x : v) x = val(rng);
    out.emplace_back(std::move(v));
  }
  return out;
}

// Oracles written from the definitions, independent of the library loops.
double oracle_sigma(const std::vector<double>& s, std::size_t n) {
  double sum = 0.0;
  for (std::size_t k = 0; k <= n; ++k) sum += s[k];
  return sum / static_cast<double>(n + 1);
}
double oracle_gamma(const std::vector<double>& s, std::size_t n) {
  double logs = 0.0;
  for (std::size_t k = 0; k <= n; ++k) logs += std::log(s[k]);
  return std::exp(logs / static_cast<double>(n + 1));
}
double oracle_theta(const std::vector<double>& s, std::size_t n) {
  double r = 0.0;
  for (std::size_t k = 0; k <= n; ++k) r += 1.0 / s[k];
  return static_cast<double>(n + 1) / r;
}
double oracle_rho(const std::vector<double>& s, std::size_t n) {
  double p = s[n];
  for (std::size_t k = 0; k < n; ++k) {
    double run = 0.0;
    for (std::size_t m = 0; m <= k + 1; ++m) run += s[m];
    p *= static_cast<double>(k + 2) * s[k] / run;
  }
  return p;
}

}  // namespace

TEST(ComputeMeans, GrandiSigma) {
  const auto t = compute_means(Method::sigma, seq({1, 0, 1, 0}));
  ASSERT_EQ(t.values.size(), 4u);
  EXPECT_DOUBLE_EQ(t.values[0], 1.0);
  EXPECT_DOUBLE_EQ(t.values[1], 0.5);
  EXPECT_DOUBLE_EQ(t.values[2], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(t.values[3], 0.5);
}

TEST(ComputeMeans, GrandiGammaUnderZeroConvention) {
  const auto t = compute_means(Method::gamma, seq({1, 0, 1, 0}), {true});
  EXPECT_EQ(t.values[0], 1.0);
  for (std::size_t n = 1; n < 4; ++n) EXPECT_EQ(t.values[n], 0.0);
  EXPECT_TRUE(t.zero_convention_used);
}

TEST(ComputeMeans, StrictModeRejectsZeroAndNegative) {
  try {
    compute_means(Method::gamma, seq({1, 0, 1}));
    FAIL();
  } catch (const DomainError& e) {
    ASSERT_TRUE(e.index());
    EXPECT_EQ(*e.index(), 1u);
  }
  EXPECT_THROW(compute_means(Method::gamma, seq({1, -1, 1}), {true}), DomainError);
  try {
    compute_means(Method::theta, seq({2, 3, 0, 1}));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.index().value_or(99), 2u);
  }
  EXPECT_THROW(compute_means(Method::rho, seq({1, -1, 3})), DomainError);
  EXPECT_THROW(compute_means(Method::rho, seq({1})), DomainError);
}

TEST(ComputeMeans, ThetaExamples) {
  const auto t = compute_means(Method::theta, seq({1, 2}));
  EXPECT_DOUBLE_EQ(t.values[1], 4.0 / 3.0);
  const auto z = compute_means(Method::theta, seq({1, 0, 1, 0}), {true});
  EXPECT_EQ(z.values[0], 1.0);
  for (std::size_t n = 1; n < 4; ++n) EXPECT_EQ(z.values[n], 0.0);
}

TEST(ComputeMeans, RhoExample) {
  const auto t = compute_means(Method::rho, seq({1, 2, 3}));
  EXPECT_EQ(t.first_index, 1u);
  ASSERT_EQ(t.values.size(), 2u);
  EXPECT_NEAR(t.at(1), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(t.at(2), 2.0, 1e-15);
  EXPECT_THROW(t.at(0), DomainError);
  EXPECT_THROW(t.at(3), DomainError);
}

TEST(ComputeMeans, ConstantFixedPoint) {
  for (Method m : {Method::sigma, Method::gamma, Method::theta, Method::rho}) {
    const auto t = compute_means(m, seq({2.5, 2.5, 2.5, 2.5}));
    for (double v : t.values) EXPECT_NEAR(v, 2.5, 1e-15) << to_string(m);
  }
}

TEST(ComputeMeans, MatchesOraclesOnCorpus) {
  for (const auto& s : positive_corpus(50, 3)) {
    std::vector<double> v(s.values().begin(), s.values().end());
    const auto sg = compute_means(Method::sigma, s);
    const auto gm = compute_means(Method::gamma, s);
    const auto th = compute_means(Method::theta, s);
    for (std::size_t n = 0; n < v.size(); ++n) {
      EXPECT_NEAR(sg.at(n), oracle_sigma(v, n), 1e-12 * oracle_sigma(v, n));
      EXPECT_NEAR(gm.at(n), oracle_gamma(v, n), 1e-12 * oracle_gamma(v, n));
      EXPECT_NEAR(th.at(n), oracle_theta(v, n), 1e-12 * oracle_theta(v, n));
    }
    if (v.size() >= 2) {
      const auto rh = compute_means(Method::rho, s);
      for (std::size_t n = 1; n < v.size(); ++n) {
        EXPECT_NEAR(rh.at(n), oracle_rho(v, n), 1e-10 * std::abs(oracle_rho(v, n)));
      }
    }
  }
}

TEST(ComputeMeans, Homogeneity) {
  for (const auto& s : positive_corpus(20, 5)) {
    if (s.size() < 2) continue;
    std::vector<double> scaled(s.values().begin(), s.values().end());
    for (double& x : scaled) x *= 3.5;
    for (Method m : {Method::sigma, Method::gamma, Method::theta, Method::rho}) {
      const auto a = compute_means(m, s);
      const auto b = compute_means(m, seq(scaled));
      for (std::size_t i = 0; i < a.values.size(); ++i) {
        EXPECT_NEAR(b.values[i], 3.5 * a.values[i], 1e-12 * std::abs(b.values[i])) << to_string(m);
      }
    }
  }
}

TEST(ComputeMeansRecursive, Examples) {
  const auto th = compute_means_recursive(Method::theta, seq({1, 2, 3}));
  EXPECT_NEAR(th.values[0], 1.0, 1e-12);
  EXPECT_NEAR(th.values[1], 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(th.values[2], 18.0 / 11.0, 1e-12);
  const auto gm = compute_means_recursive(Method::gamma, seq({2, 8}));
  EXPECT_NEAR(gm.values[1], 4.0, 1e-14);
  const auto rh = compute_means_recursive(Method::rho, seq({1, 2, 3}));
  EXPECT_NEAR(rh.at(2), 2.0, 1e-14);
}

TEST(ComputeMeansRecursive, EqualsDirectOnCorpus) {
  for (const auto& s : positive_corpus(200, 17)) {
    for (Method m : {Method::sigma, Method::gamma, Method::theta, Method::rho}) {
      if (m == Method::rho && s.size() < 2) continue;
      const auto d = compute_means(m, s);
      const auto r = compute_means_recursive(m, s);
      ASSERT_EQ(d.values.size(), r.values.size());
      ASSERT_EQ(d.first_index, r.first_index);
      for (std::size_t i = 0; i < d.values.size(); ++i) {
        EXPECT_NEAR(r.values[i], d.values[i], 1e-10 * std::abs(d.values[i])) << to_string(m);
      }
    }
  }
}

TEST(ComputeMeansRecursive, ZeroConventionMatchesDirect) {
  const auto s = seq({1, 0, 1, 0, 1});
  for (Method m : {Method::gamma, Method::theta}) {
    EXPECT_EQ(compute_means_recursive(m, s, {true}).values, compute_means(m, s, {true}).values);
  }
}

TEST(RhoThetaIdentity, IndexOne) {
  for (const auto& s : positive_corpus(200, 29)) {
    if (s.size() < 2) continue;
    const double rho1 = compute_means(Method::rho, s).at(1);
    const double theta1 = compute_means(Method::theta, s).at(1);
    EXPECT_NEAR(rho1, theta1, 4.0 * std::numeric_limits<double>::epsilon() * theta1);
  }
}

TEST(GammaRecurrence, HarmonicSplitIdentity) {
  for (std::size_t n = 1; n <= 1000; ++n) {
    const double nd = static_cast<double>(n);
    EXPECT_NEAR(1.0 / (nd + 1.0), 1.0 / nd - 1.0 / (nd * (nd + 1.0)), 1e-16);
  }
}

TEST(SmoothedWeights, Examples) {
  const auto w3 = smoothed_weights(3);
  ASSERT_EQ(w3.size(), 3u);
  EXPECT_DOUBLE_EQ(w3[0], 0.75);
  EXPECT_DOUBLE_EQ(w3[1], 0.5);
  EXPECT_DOUBLE_EQ(w3[2], 0.25);
  EXPECT_EQ(smoothed_weights(1), std::vector<double>{0.5});
  EXPECT_THROW(smoothed_weights(0), DomainError);
  for (std::size_t n : {5u, 17u, 64u}) {
    const auto w = smoothed_weights(n);
    for (std::size_t k = 1; k <= n; ++k) {
      EXPECT_NEAR(w[k - 1] + static_cast<double>(k) / static_cast<double>(n + 1), 1.0, 1e-15);
      EXPECT_GT(w[k - 1], 0.0);
      EXPECT_LT(w[k - 1], 1.0);
      if (k > 1) {
        EXPECT_LT(w[k - 1], w[k - 2]);
      }
    }
  }
}

TEST(WeightedSmoothedSum, Examples) {
  const std::vector<double> only_first = {1, 0, 0, 0, 0};
  for (std::size_t n = 0; n < 5; ++n) EXPECT_EQ(weighted_smoothed_sum(only_first, n), 1.0);
  const std::vector<double> two = {1, 1};
  EXPECT_DOUBLE_EQ(weighted_smoothed_sum(two, 1), 1.5);
  EXPECT_THROW(weighted_smoothed_sum(two, 2), ConfigError);
}

TEST(WeightedSmoothedSum, EqualsMeanOfPartials) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> d;
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> phi(10);
    for (double& p : phi) p = d(rng);
    for (std::size_t n = 0; n < phi.size(); ++n) {
      double partial = 0.0;
      double mean = 0.0;
      for (std::size_t k = 0; k <= n; ++k) {
        partial += phi[k];
        mean += partial;
      }
      mean /= static_cast<double>(n + 1);
      EXPECT_NEAR(weighted_smoothed_sum(phi, n), mean, 1e-12);
    }
  }
}

TEST(IterateMean, Examples) {
  const auto c = iterate_mean(compute_means(Method::sigma, seq({4, 4, 4})));
  for (double v : c.values) EXPECT_EQ(v, 4.0);
  const auto two = iterate_mean(compute_means(Method::sigma, seq({1, -1})));
  EXPECT_EQ(two.values, (std::vector<double>{1.0, 0.5}));
  EXPECT_THROW(iterate_mean(compute_means(Method::theta, seq({1, 2}))), ConfigError);
}

TEST(IterateMean, GrandiDoubleAverage) {
  std::vector<double> terms(100);
  for (std::size_t k = 0; k < terms.size(); ++k) terms[k] = k % 2 == 0 ? 1.0 : -1.0;
  const auto c2 = iterate_mean(compute_means(Method::sigma, number_series_partials(terms)));
  EXPECT_NEAR(c2.at(99), 0.5, 0.02);
}

TEST(NumberSeriesPartials, Examples) {
  const std::vector<double> grandi = {1, -1, 1, -1};
  const auto g = number_series_partials(grandi);
  EXPECT_EQ(std::vector<double>(g.values().begin(), g.values().end()), (std::vector<double>{1, 0, 1, 0}));
  EXPECT_EQ(g.origin(), SeriesOrigin::number_series);
  const std::vector<double> zeros(5, 0.0);
  const auto z = number_series_partials(zeros);
  for (double v : z.values()) EXPECT_EQ(v, 0.0);
  const std::vector<double> ones = {1, 1, 1};
  const auto o = number_series_partials(ones);
  EXPECT_EQ(std::vector<double>(o.values().begin(), o.values().end()), (std::vector<double>{1, 2, 3}));
}

TEST(PartialSumSequence, Invariants) {
  EXPECT_THROW(PartialSumSequence({}), ConfigError);
  EXPECT_THROW(PartialSumSequence({1.0, std::nan("")}), DomainError);
  EXPECT_THROW(PartialSumSequence({1.0, INFINITY}), DomainError);
}

TEST(Method, ParseRoundTrip) {
  for (Method m : {Method::sigma, Method::gamma, Method::theta, Method::rho}) {
    EXPECT_EQ(parse_method(to_string(m)), m);
  }
  EXPECT_THROW(parse_method("omega"), ConfigError);
}

TEST(AsymptoticCyclicity, IncrementsShrinkOnConvergentSequence) {
  std::vector<double> s(400);
  for (std::size_t n = 0; n < s.size(); ++n) s[n] = 2.0 + 1.0 / static_cast<double>(n + 1);
  const auto ps = seq(s);
  for (Method m : {Method::gamma, Method::theta, Method::rho}) {
    const auto t = compute_means(m, ps);
    double prev = INFINITY;
    for (std::size_t n = std::max<std::size_t>(101, t.first_index + 1); n <= t.last_index(); ++n) {
      const double inc = std::abs(t.at(n) - t.at(n - 1));
      EXPECT_LE(inc, prev) << to_string(m) << " n=" << n;
      prev = inc;
    }
    EXPECT_LT(prev, 1e-4) << to_string(m);
  }
}

TEST(AsymptoticCyclicity, WindowMaximaShrinkOnOscillatingSums) {
  // S_n(pi/2) of sign(x) + 2: partial sums oscillate around 3 with O(1/n) amplitude.
  std::vector<double> s;
  double sum = 2.0;
  for (std::size_t k = 0; k <= 800; ++k) {
    if (k % 2 == 1) sum += 4.0 / (static_cast<double>(k) * std::numbers::pi) * std::sin(k * std::numbers::pi / 2);
    s.push_back(sum);
  }
  const auto ps = seq(s);
  for (Method m : {Method::gamma, Method::theta, Method::rho}) {
    const auto t = compute_means(m, ps);
    std::vector<double> window_max;
    for (std::size_t start = 101; start + 100 <= 801; start += 100) {
      double w = 0.0;
      for (std::size_t n = start; n < start + 100; ++n) w = std::max(w, std::abs(t.at(n) - t.at(n - 1)));
      window_max.push_back(w);
    }
    for (std::size_t i = 1; i < window_max.size(); ++i) {
      EXPECT_LT(window_max[i], window_max[i - 1]) << to_string(m);
    }
  }
}
