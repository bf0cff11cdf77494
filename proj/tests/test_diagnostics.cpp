#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "summa/diagnostics.hpp"
#include "summa/error.hpp"

using namespace summa;

namespace {

PartialSumSequence seq(std::vector<double> v) { return PartialSumSequence(std::move(v)); }

std::vector<double> grandi_partials(std::size_t n_max) {
  std::vector<double> s(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) s[n] = n % 2 == 0 ? 1.0 : 0.0;
  return s;
}

// Brute-force scan for the first n with |S_{n+1}/(n+2) - S_n/(n+1)| <= delta.
std::optional<std::size_t> oracle_onset(const std::vector<double>& norms, double delta) {
  for (std::size_t n = 0; n + 1 < norms.size(); ++n) {
    if (std::abs(norms[n + 1] / (n + 2.0) - norms[n] / (n + 1.0)) <= delta) return n;
  }
  return std::nullopt;
}

}  // namespace

TEST(PythagoreanCheck, TwoElementExample) {
  const auto r = pythagorean_check(seq({1, 2}));
  EXPECT_TRUE(r.all_hold);
  EXPECT_NEAR(r.theta.at(1), 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.gamma.at(1), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(r.sigma.at(1), 1.5, 1e-15);
}

TEST(PythagoreanCheck, EqualValues) {
  const auto r = pythagorean_check(seq({0.7, 0.7, 0.7}));
  EXPECT_TRUE(r.all_hold);
  EXPECT_EQ(r.holds.size(), 3u);
}

TEST(PythagoreanCheck, RandomPositiveSequences) {
  std::mt19937_64 rng(2024);
  std::lognormal_distribution<double> d(0.0, 1.5);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> v(50);
    for (double& x : v) x = d(rng);
    EXPECT_TRUE(pythagorean_check(seq(v)).all_hold);
  }
}

TEST(PythagoreanCheck, RejectsNonPositive) {
  EXPECT_THROW(pythagorean_check(seq({1, 0, 2})), DomainError);
  EXPECT_THROW(pythagorean_check(seq({1, -2})), DomainError);
}

TEST(ClosedFormOnset, Cases) {
  auto [n1, c1] = closed_form_onset(1.0, 1.5);
  ASSERT_TRUE(n1);
  EXPECT_NEAR(*n1, 1.0, 1e-15);
  EXPECT_EQ(c1, ClosedFormCase::regular);

  auto [n2, c2] = closed_form_onset(1.0, 2.0);
  ASSERT_TRUE(n2);
  EXPECT_EQ(*n2, 0.0);
  EXPECT_EQ(c2, ClosedFormCase::ratio_at_least_two);

  auto [n3, c3] = closed_form_onset(4.0, 4.0);
  EXPECT_FALSE(n3);
  EXPECT_EQ(c3, ClosedFormCase::unit_ratio);

  auto [n4, c4] = closed_form_onset(2.0, 1.0);
  ASSERT_TRUE(n4);
  EXPECT_EQ(*n4, 0.0);
  EXPECT_EQ(c4, ClosedFormCase::ratio_below_one);

  auto [n5, c5] = closed_form_onset(0.0, 1.0);
  EXPECT_FALSE(n5);
  EXPECT_EQ(c5, ClosedFormCase::zero_norm);
}

TEST(ContractionOnsetSigma, RatioAtLeastTwoGivesZero) {
  const std::vector<double> doubling = {1.0, 2.0, 2.0, 2.0};
  const auto a = contraction_onset_sigma(doubling);
  ASSERT_TRUE(a.onset);
  EXPECT_EQ(*a.onset, 0u);
  ASSERT_TRUE(a.closed_form_onset);
  EXPECT_EQ(*a.closed_form_onset, 0.0);
  EXPECT_EQ(a.closed_form_case, ClosedFormCase::ratio_at_least_two);

  const std::vector<double> tripling = {1.0, 3.0, 3.0};
  const auto b = contraction_onset_sigma(tripling, 0.5);
  ASSERT_TRUE(b.closed_form_onset);
  EXPECT_EQ(*b.closed_form_onset, 0.0);
  EXPECT_EQ(b.closed_form_case, ClosedFormCase::ratio_at_least_two);
}

TEST(ContractionOnsetSigma, ConstantNormsUnbounded) {
  const std::vector<double> norms(30, 3.0);
  const auto r = contraction_onset_sigma(norms);
  EXPECT_FALSE(r.closed_form_onset);
  EXPECT_EQ(r.closed_form_case, ClosedFormCase::unit_ratio);
}

TEST(ContractionOnsetSigma, MatchesScanOracle) {
  std::vector<double> norms;
  for (int n = 0; n <= 200; ++n) norms.push_back(1.0 + std::pow(2.0, -n));
  const auto r = contraction_onset_sigma(norms, 1e-3);
  const auto expected = oracle_onset(norms, 1e-3);
  ASSERT_TRUE(expected);
  ASSERT_TRUE(r.onset);
  EXPECT_EQ(*r.onset, *expected);
  for (std::size_t n = 0; n < r.verdicts.size(); ++n) {
    if (n < *r.onset) {
      EXPECT_EQ(r.verdicts[n], ContractionVerdict::violated) << n;
    } else {
      EXPECT_NE(r.verdicts[n], ContractionVerdict::violated) << n;
    }
  }
}

TEST(ContractionOnsetSigma, MonotoneInDelta) {
  std::vector<double> norms;
  for (int n = 0; n <= 300; ++n) norms.push_back(5.0 + std::sin(0.1 * n) * 3.0 / (n + 1.0));
  std::optional<std::size_t> previous;
  for (double delta : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
    const auto r = contraction_onset_sigma(norms, delta);
    if (previous && r.onset) {
      EXPECT_LE(*r.onset, *previous);
    }
    if (previous) {
      EXPECT_TRUE(r.onset.has_value());
    }
    previous = r.onset;
  }
}

TEST(ContractionOnsetSigma, EmptyTrace) {
  EXPECT_THROW(contraction_onset_sigma(std::vector<double>{}), DomainError);
}

TEST(ContractionCondition, ConstantSignalIsCyclic) {
  const std::vector<double> grid = {-1.0, -0.5, 0.0, 0.5, 1.0};
  std::vector<GridFunction> partials;
  for (int n = 0; n < 12; ++n) partials.emplace_back(grid, std::vector<double>(5, 2.0));
  for (Method m : {Method::gamma, Method::theta, Method::rho}) {
    const auto r = contraction_condition(m, partials);
    ASSERT_FALSE(r.ratio_trace.empty());
    for (double v : r.ratio_trace) EXPECT_NEAR(v, 1.0, 1e-14);
    for (auto v : r.verdicts) EXPECT_EQ(v, ContractionVerdict::cyclic) << to_string(m);
  }
}

TEST(ContractionCondition, DecreasingNormsContractForTheta) {
  std::vector<double> s;
  for (int n = 0; n <= 40; ++n) s.push_back(1.0 / (n + 1.0));
  const auto r = contraction_condition(Method::theta, seq(s));
  ASSERT_EQ(r.first_index, 1u);
  for (std::size_t i = 0; i < r.ratio_trace.size(); ++i) {
    const std::size_t n = r.first_index + i;
    double recip = 0.0;
    for (std::size_t k = 0; k < n; ++k) recip += 1.0 / s[k];
    const double theta_prev = static_cast<double>(n) / recip;
    EXPECT_NEAR(r.ratio_trace[i], theta_prev / s[n], 1e-12);
    EXPECT_GT(r.ratio_trace[i], 1.0);
    EXPECT_EQ(r.verdicts[i], ContractionVerdict::contracting);
  }
}

TEST(ContractionCondition, RhoOnDecreasingSums) {
  std::vector<double> s;
  for (int n = 0; n <= 30; ++n) s.push_back(1.0 + 2.0 / (n + 1.0));  // 3, 2, 1.67, ...
  const auto r = contraction_condition(Method::rho, seq(s));
  const auto rho = compute_means(Method::rho, seq(s));
  ASSERT_EQ(r.ratio_trace.size(), r.secondary_trace.size());
  for (std::size_t i = 0; i < r.ratio_trace.size(); ++i) {
    const std::size_t n = r.first_index + i;
    EXPECT_NEAR(r.ratio_trace[i], s[n] / s[n + 1], 1e-14);
    EXPECT_NEAR(r.secondary_trace[i], rho.at(n - 1) / rho.at(n), 1e-12);
    EXPECT_GT(r.ratio_trace[i], 1.0);
    EXPECT_GT(r.secondary_trace[i], 1.0);
  }
  EXPECT_EQ(r.verdicts.front(), ContractionVerdict::contracting);
}

TEST(ContractionCondition, GammaNumberSeries) {
  std::vector<double> s = {4, 2, 1, 0.5, 0.25};
  const auto r = contraction_condition(Method::gamma, seq(s));
  const auto gamma = compute_means(Method::gamma, seq(s));
  for (std::size_t i = 0; i < r.ratio_trace.size(); ++i) {
    const std::size_t n = r.first_index + i;
    EXPECT_NEAR(r.ratio_trace[i], gamma.at(n - 1) / s[n], 1e-12);
  }
}

TEST(ContractionCondition, SigmaIsNotAConditionMethod) {
  EXPECT_THROW(contraction_condition(Method::sigma, seq({1, 2, 3})), ConfigError);
}

TEST(ContractionCondition, UndefinedTraceIsDomainError) {
  EXPECT_THROW(contraction_condition(Method::theta, seq({1, 0, 1, 0})), DomainError);
}

TEST(Certificate, GrandiUnderZeroConvention) {
  CertificateOptions opts;
  opts.zero_convention = true;
  const auto c = certify_theorem5(seq(grandi_partials(100)), opts);
  EXPECT_EQ(c.K, 1.0);
  EXPECT_EQ(c.M, 1.0);
  EXPECT_TRUE(c.zero_convention_used);
  EXPECT_FALSE(c.flagged_indices.empty());
  EXPECT_EQ(c.flagged_indices.front(), 0u);
}

TEST(Certificate, GrandiStrictIsUndefined) {
  const auto c = certify_theorem5(seq(grandi_partials(20)));
  EXPECT_EQ(c.verdict, CertificateVerdict::undefined_theta);
}

TEST(Certificate, ConstantSequence) {
  const auto exact = certify_theorem5(seq(std::vector<double>(120, 2.0)));
  EXPECT_EQ(exact.M, 0.0);
  EXPECT_EQ(exact.verdict, CertificateVerdict::certified);

  const auto c = certify_theorem5(seq(std::vector<double>(120, 1.5)));
  EXPECT_NEAR(c.M, 0.0, 1e-13);
  EXPECT_EQ(c.K, 1.5);
  for (std::size_t n = 0; n < c.bounds.size(); ++n) {
    EXPECT_LE(c.bounds[n].lower, c.theta[n]);
    EXPECT_GE(c.bounds[n].upper, c.theta[n]);
  }
  EXPECT_EQ(c.verdict, CertificateVerdict::certified);
}

TEST(Certificate, BoundsContainThetaOnConvergentSequence) {
  std::vector<double> s;
  for (int n = 0; n <= 150; ++n) s.push_back(2.0 + 1.0 / (n + 1.0));
  CertificateOptions opts;
  opts.tail_index = 100;
  const auto c = certify_theorem5(seq(s), opts);
  // Independent evaluation of the admissible interval.
  double m = 0.0;
  for (std::size_t n = 0; n + 1 < s.size(); ++n) {
    m = std::max(m, std::abs(c.theta[n] * (c.theta[n] / s[n + 1] - 1.0)));
  }
  EXPECT_NEAR(c.M, m, 1e-15);
  for (std::size_t n = 0; n <= 100; ++n) {
    const double disc = std::sqrt(s[n + 1] * s[n + 1] + 4.0 * m * std::abs(s[n + 1]));
    EXPECT_LE(c.theta[n], 0.5 * (s[n + 1] + disc) * (1 + 1e-12));
    EXPECT_GE(c.theta[n], 0.5 * (s[n + 1] - disc));
    ASSERT_TRUE(c.contained[n].has_value());
    EXPECT_TRUE(*c.contained[n]);
  }
  EXPECT_TRUE(c.tail_window_complete);
  EXPECT_LE(c.cauchy_bound, 0.05);
  EXPECT_EQ(c.verdict, CertificateVerdict::certified);
}

TEST(Certificate, BoundsBracketNextPartialSum) {
  for (double s : {-3.0, -0.1, 0.5, 2.0}) {
    for (double m : {0.0, 0.3, 5.0}) {
      const auto b = admissible_interval(s, m);
      EXPECT_LE(b.lower, s);
      EXPECT_GE(b.upper, s);
      EXPECT_LE(b.lower, b.upper);
    }
  }
}

TEST(Certificate, RejectsTooShort) {
  EXPECT_THROW(certify_theorem5(seq({1.0})), DomainError);
}

TEST(GoldenRatio, ValueAndIndependenceOfK) {
  const double phi = golden_ratio_selfcheck();
  EXPECT_NEAR(phi, 1.6180339887, 1e-9);
  EXPECT_NEAR(phi * phi, phi + 1.0, 1e-12);
  for (double K : {5.0, 100.0}) EXPECT_NEAR(golden_ratio_selfcheck(K), phi, 1e-12);
  EXPECT_GT(phi, 1.0);
}

TEST(Axioms, SigmaPassesEverything) {
  const auto corpus = default_axiom_corpus();
  const auto r = axioms_check(Method::sigma, corpus);
  EXPECT_TRUE(r.asserted);
  EXPECT_EQ(r.violations(), 0u);
  bool saw_geometric = false;
  for (const auto& f : r.findings) {
    if (f.axiom == "regularity" && f.subject.find("geometric_1/2") != std::string::npos) {
      saw_geometric = true;
      EXPECT_NEAR(f.observed, 2.0, 1e-3);
    }
    if (f.axiom == "homogeneity") {
      EXPECT_NEAR(f.observed, f.expected, 1e-9);
    }
  }
  EXPECT_TRUE(saw_geometric);
}

TEST(Axioms, ThetaRegularOnGeometricSeries) {
  const auto corpus = default_axiom_corpus();
  const auto r = axioms_check(Method::theta, corpus);
  EXPECT_FALSE(r.asserted);
  for (const auto& f : r.findings) {
    if (f.axiom == "regularity" && f.subject.find("geometric_1/2") != std::string::npos) {
      EXPECT_NEAR(f.observed, 2.0, 1e-3);
    }
  }
}

TEST(Axioms, MeansAgreeOnConvergentCorpus) {
  for (const auto& series : default_axiom_corpus()) {
    std::vector<double> terms(10001);
    for (std::size_t k = 0; k < terms.size(); ++k) terms[k] = series.term(k);
    const auto s = number_series_partials(terms);
    const double sg = compute_means(Method::sigma, s).values.back();
    const double gm = compute_means(Method::gamma, s).values.back();
    const double th = compute_means(Method::theta, s).values.back();
    EXPECT_NEAR(sg, gm, 1e-3) << series.name;
    EXPECT_NEAR(gm, th, 1e-3) << series.name;
    EXPECT_NEAR(sg, series.sum, 1e-3) << series.name;
  }
}
