#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "summa/means.hpp"
#include "summa/series_core.hpp"

namespace summa {

/// Pointwise dynamics of the harmonic and semi-harmonic recurrences at a fixed
/// point x0, with S~_n = S_n(x0).
///
/// All per-n vectors are aligned with `partial_sums`. Entries at n = 0 of the
/// derived one-step quantities (rewrite factor, condition value, residuals,
/// model errors) hold neutral values (factor 1, everything else 0), since they
/// need a predecessor.
struct TrajectoryTrace {
  std::optional<double> x0;
  std::vector<double> partial_sums;

  std::vector<double> theta_tilde;
  /// (n+1) / (n [1 + theta~_{n-1} / (n S~_n)]), the one-step growth of theta~.
  std::vector<double> rewrite_factor;

  // logistic reduction
  std::vector<double> u;                  // theta~_n / ((n+1) S~_n)
  std::vector<double> logistic_residual;  // |u_n - u_{n-1}(1 - u_{n-1})|
  std::vector<double> condition_value;    // theta~_{n-1} / (n S~_n)

  // linearized theta model
  std::optional<double> kappa;
  std::optional<double> alpha;  // kappa - 1
  std::vector<double> theta_model;    // ((n - alpha)/n - kappa/n^2) theta~_{n-1}
  std::vector<double> epsilon_model;  // theta~_n - theta_model_n

  // semi-harmonic dynamics (index 0 carries the seed S~_0; rho_0 itself is undefined)
  std::vector<double> sigma_tilde;
  std::vector<double> rho_tilde;
  std::vector<double> rho_condition_small;  // S~_n / (n sigma~_{n-1})
  std::vector<double> rho_condition_unit;   // S~_n / sigma~_{n-1} - 1
  std::vector<double> rho_model;            // ((n^2 - 1)/n^2) rho~_{n-1}
  std::vector<double> rho_epsilon;          // rho~_n - rho_model_n
  std::vector<bool> rho_model_applicable;   // |rho_condition_unit| <= tolerance
};

/// Exact harmonic recurrence on the partial sums; every S~_n must be > 0.
TrajectoryTrace pointwise_theta_trace(const PartialSumSequence& s);

TrajectoryTrace pointwise_theta_trace(const PeriodicSignal& signal, double x0, std::size_t n_max,
                                      SumRoute route = SumRoute::coefficients,
                                      const QuadratureConfig& quad = {});

/// Adds u, the unit-rate logistic residual and the condition value.
TrajectoryTrace logistic_reduction(TrajectoryTrace trace);

/// Median of theta~_{n-1}/S~_n over n = 6..15; needs at least 16 entries.
double estimate_kappa(const TrajectoryTrace& trace);

/// (n - alpha)/n - kappa/n^2 with alpha = kappa - 1.
double kalman_theta_coefficient(std::size_t n, double kappa);

/// One-step linearized model of theta~ with per-n model error. kappa must
/// exceed 1 (DomainError otherwise); estimated from the trace when absent.
TrajectoryTrace kalman_linearized_theta(TrajectoryTrace trace,
                                        std::optional<double> kappa = std::nullopt);

/// (n^2 - 1) / n^2.
double kalman_rho_coefficient(std::size_t n);

struct RhoModelOptions {
  double unit_tolerance = 0.05;
};

/// Exact semi-harmonic recurrence rho~_n = (S~_n / sigma~_n) rho~_{n-1} plus
/// its linearized one-step model.
TrajectoryTrace kalman_linearized_rho(const PartialSumSequence& s, RhoModelOptions options = {});

TrajectoryTrace kalman_linearized_rho(const PeriodicSignal& signal, double x0, std::size_t n_max,
                                      SumRoute route = SumRoute::coefficients,
                                      const QuadratureConfig& quad = {},
                                      RhoModelOptions options = {});

enum class TrajectoryClass { decaying_log, tracks_partial_sums, other };

std::string_view to_string(TrajectoryClass c) noexcept;

struct ClassifyOptions {
  /// Relative deviation allowed over the last quarter of the trace.
  double relative_tolerance = 0.05;
};

/// tracks_partial_sums when theta~_n / S~_n stays within tolerance of 1 over
/// the last quarter; decaying_log when theta~_n ln(2n+1) / S~_n is stable there
/// and theta~_n / S~_n keeps falling; other otherwise. Needs >= 20 entries.
TrajectoryClass trajectory_classify(const TrajectoryTrace& trace, ClassifyOptions options = {});

}  // namespace summa
