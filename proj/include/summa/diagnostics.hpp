#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "summa/means.hpp"
#include "summa/series_core.hpp"

namespace summa {

// ---------------------------------------------------------------------------
// Pythagorean inequality theta_n <= gamma_n <= sigma_n

struct InequalityReport {
  std::vector<bool> holds;  // per n
  bool all_hold = true;
  MeanTrace sigma;
  MeanTrace gamma;
  MeanTrace theta;
};

/// Requires every S_k > 0 (DomainError otherwise).
InequalityReport pythagorean_check(const PartialSumSequence& s, double relative_slack = 1e-12);

// ---------------------------------------------------------------------------
// Contraction diagnostics of the smoothing operators

enum class ContractionVerdict { contracting, cyclic, violated };

std::string_view to_string(ContractionVerdict v) noexcept;

/// How the closed-form onset N = (r - 1)^{-1} - 1, r = ||S_{N+1}|| / ||S_N||,
/// was resolved.
enum class ClosedFormCase {
  regular,             // 1 < r < 2
  ratio_at_least_two,  // r >= 2: N = 0
  unit_ratio,          // r == 1: N unbounded
  ratio_below_one,     // r < 1: formula negative, reported as 0
  zero_norm,           // ||S_N|| == 0: ratio undefined, unbounded
};

std::string_view to_string(ClosedFormCase c) noexcept;

struct ContractionReport {
  Method method = Method::sigma;
  /// First contracting index; nullopt means unbounded (never observed).
  std::optional<std::size_t> onset;
  double delta = 0.0;
  double epsilon = 0.0;
  /// Index n of ratio_trace[0].
  std::size_t first_index = 0;
  /// sigma: ||S_{n+1}||/||S_n||; gamma: ||gamma_{n-1}||/||S_n||;
  /// theta: ||theta_{n-1}||/||S_n||; rho: ||S_n||/||S_{n+1}||.
  std::vector<double> ratio_trace;
  /// theta: side condition (n+1)||theta_n||/||S_{n+1}|| - (n+2)||theta_{n-1}||/||S_n||
  /// (may be one shorter than ratio_trace); rho: ||rho_{n-1}||/||rho_n||.
  /// Empty for sigma and gamma.
  std::vector<double> secondary_trace;
  std::vector<ContractionVerdict> verdicts;

  // sigma only
  /// |(1/(n+2))||S_{n+1}|| - (1/(n+1))||S_n|||, compared against delta.
  std::vector<double> delta_criterion;
  /// Closed-form N at the onset index (or the last index when no onset);
  /// nullopt means unbounded.
  std::optional<double> closed_form_onset;
  ClosedFormCase closed_form_case = ClosedFormCase::regular;
};

/// Closed-form onset from a single norm ratio.
std::pair<std::optional<double>, ClosedFormCase> closed_form_onset(double norm_n,
                                                                   double norm_n_plus_1);

/// Scans the norm trace ||S_0||..||S_Nmax|| for the first n with
/// |(1/(n+2))||S_{n+1}|| - (1/(n+1))||S_n||| <= delta. Per-n verdicts: violated
/// before onset, contracting after, cyclic once (n+1)/(n+2) >= 1 - epsilon.
ContractionReport contraction_onset_sigma(std::span<const double> norms, double delta = 1e-3,
                                          double epsilon = 1e-3);

struct ContractionOptions {
  /// Ratio in [1 - epsilon, 1 + epsilon] is cyclic, above is contracting.
  double epsilon = 1e-3;
  MeansOptions means;
};

/// Sufficient contraction conditions for gamma, theta, rho over grid partial
/// sums S_0(x)..S_N(x); norms from l2_norm.
ContractionReport contraction_condition(Method method, std::span<const GridFunction> partials,
                                        ContractionOptions options = {});

/// Same conditions for a number series, with |.| as the norm.
ContractionReport contraction_condition(Method method, const PartialSumSequence& s,
                                        ContractionOptions options = {});

// ---------------------------------------------------------------------------
// Harmonic summability certificate

enum class CertificateVerdict { certified, bounds_violated, undefined_theta, tail_not_met };

std::string_view to_string(CertificateVerdict v) noexcept;

struct AdmissibleInterval {
  double lower = 0.0;
  double upper = 0.0;
};

struct CertificateOptions {
  bool zero_convention = false;
  /// Index n of the Cauchy tail check; defaults to the last index whose
  /// window n..n+r-1 is fully available.
  std::optional<std::size_t> tail_index;
  std::size_t tail_span = 50;  // r
  double tail_epsilon = 0.05;
  double relative_slack = 1e-12;
};

struct SummabilityCertificate {
  /// max |S_n| over n = 0..window_last.
  double K = 0.0;
  /// max over n = 0..window_last-1 of |theta_n (theta_n / S_{n+1} - 1)|.
  double M = 0.0;
  std::size_t window_last = 0;

  std::vector<double> theta;
  std::vector<double> m_expression;       // per n = 0..window_last-1
  std::vector<AdmissibleInterval> bounds;  // per n = 0..window_last-1
  /// Per n: whether theta_n lies in bounds[n]; nullopt at flagged indices.
  std::vector<std::optional<bool>> contained;

  /// Indices with S_{n+1} = 0, where the M-expression is replaced by the exact
  /// increment (n+1)|theta_n - theta_{n+1}| and containment is not checked.
  std::vector<std::size_t> flagged_indices;
  bool zero_convention_used = false;

  std::size_t tail_index = 0;
  std::size_t tail_span = 0;
  /// Sup of the M-expression over the Cauchy window tail_index..tail_index+r-1.
  double tail_M = 0.0;
  double cauchy_bound = 0.0;  // r * tail_M / (tail_index + 1)
  double tail_epsilon = 0.0;
  bool tail_window_complete = false;

  CertificateVerdict verdict = CertificateVerdict::undefined_theta;
};

/// theta_n^± = (S_{n+1} ± sqrt(S_{n+1}^2 + 4 M |S_{n+1}|)) / 2.
AdmissibleInterval admissible_interval(double s_next, double m);

SummabilityCertificate certify_theorem5(const PartialSumSequence& s,
                                        CertificateOptions options = {});

/// theta^+ / K with M = K and S = K; always (1 + sqrt 5) / 2.
double golden_ratio_selfcheck(double K = 1.0);

// ---------------------------------------------------------------------------
// Empirical regularity / linearity / stability checks

struct ConvergentSeries {
  std::string name;
  std::function<double(std::size_t)> term;
  double sum = 0.0;
};

/// Positive-partial-sum convergent series with known sums.
std::vector<ConvergentSeries> default_axiom_corpus();

struct AxiomsOptions {
  std::size_t n = 10000;
  double regularity_tol = 1e-3;
  double linearity_tol = 1e-9;
  double stability_tol = 1e-3;
  double scale = 3.0;
  std::size_t dropped_index = 1;
};

struct AxiomFinding {
  std::string axiom;    // regularity | additivity | homogeneity | stability
  std::string subject;  // series name(s)
  double observed = 0.0;
  double expected = 0.0;
  double deviation = 0.0;
  bool pass = false;
};

struct AxiomsReport {
  Method method = Method::sigma;
  /// True for sigma, where every finding is expected to pass; other methods
  /// only record what they observe.
  bool asserted = false;
  std::vector<AxiomFinding> findings;

  std::size_t violations() const;
};

AxiomsReport axioms_check(Method method, std::span<const ConvergentSeries> corpus,
                          AxiomsOptions options = {});

}  // namespace summa
