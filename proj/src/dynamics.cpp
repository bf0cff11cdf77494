#include "summa/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "summa/error.hpp"

namespace summa {
namespace {

void require_positive(const PartialSumSequence& s) {
  for (std::size_t n = 0; n < s.size(); ++n) {
    if (!(s[n] > 0.0)) {
      throw DomainError("dynamics: partial sums must be strictly positive, S_" +
                            std::to_string(n) + " is not",
                        n);
    }
  }
}

void require_theta(const TrajectoryTrace& trace) {
  if (trace.theta_tilde.empty() || trace.theta_tilde.size() != trace.partial_sums.size()) {
    throw ConfigError("dynamics: trace carries no theta~ sequence");
  }
}

}  // namespace

std::string_view to_string(TrajectoryClass c) noexcept {
  switch (c) {
    case TrajectoryClass::decaying_log: return "decaying_log";
    case TrajectoryClass::tracks_partial_sums: return "tracks_Sn";
    case TrajectoryClass::other: return "other";
  }
  return "unknown";
}

TrajectoryTrace pointwise_theta_trace(const PartialSumSequence& s) {
  require_positive(s);
  TrajectoryTrace trace;
  trace.x0 = s.x();
  trace.partial_sums.assign(s.values().begin(), s.values().end());
  trace.theta_tilde.push_back(s[0]);
  trace.rewrite_factor.push_back(1.0);
  for (std::size_t n = 1; n < s.size(); ++n) {
    const double prev = trace.theta_tilde.back();
    const double inv_n = 1.0 / static_cast<double>(n);
    const double sn = s[n];
    trace.theta_tilde.push_back((inv_n * sn + sn) / (inv_n * prev + sn) * prev);
    trace.rewrite_factor.push_back(static_cast<double>(n + 1) /
                                   (static_cast<double>(n) * (1.0 + inv_n * prev / sn)));
  }
  return trace;
}

TrajectoryTrace pointwise_theta_trace(const PeriodicSignal& signal, double x0, std::size_t n_max,
                                      SumRoute route, const QuadratureConfig& quad) {
  return pointwise_theta_trace(PartialSumSequence(partial_sums(signal, n_max, x0, route, quad),
                                                  SeriesOrigin::fourier_point, x0));
}

TrajectoryTrace logistic_reduction(TrajectoryTrace trace) {
  require_theta(trace);
  const auto& s = trace.partial_sums;
  const auto& th = trace.theta_tilde;
  trace.u.clear();
  trace.logistic_residual.assign(1, 0.0);
  trace.condition_value.assign(1, 0.0);
  for (std::size_t n = 0; n < s.size(); ++n) {
    trace.u.push_back(th[n] / (static_cast<double>(n + 1) * s[n]));
  }
  for (std::size_t n = 1; n < s.size(); ++n) {
    const double prev = trace.u[n - 1];
    trace.logistic_residual.push_back(std::abs(trace.u[n] - prev * (1.0 - prev)));
    trace.condition_value.push_back(th[n - 1] / (static_cast<double>(n) * s[n]));
  }
  return trace;
}

double estimate_kappa(const TrajectoryTrace& trace) {
  require_theta(trace);
  if (trace.partial_sums.size() < 16) {
    throw DomainError("kappa estimate: needs theta~ and S~ up to n = 15");
  }
  std::vector<double> ratios;
  for (std::size_t n = 6; n <= 15; ++n) {
    ratios.push_back(trace.theta_tilde[n - 1] / trace.partial_sums[n]);
  }
  std::sort(ratios.begin(), ratios.end());
  return 0.5 * (ratios[4] + ratios[5]);
}

double kalman_theta_coefficient(std::size_t n, double kappa) {
  const auto nd = static_cast<double>(n);
  const double alpha = kappa - 1.0;
  return (nd - alpha) / nd - kappa / (nd * nd);
}

TrajectoryTrace kalman_linearized_theta(TrajectoryTrace trace, std::optional<double> kappa) {
  require_theta(trace);
  const double k = kappa ? *kappa : estimate_kappa(trace);
  if (!(k > 1.0)) {
    throw DomainError("linearized theta model: kappa must exceed 1 (alpha = kappa - 1 > 0)");
  }
  trace.kappa = k;
  trace.alpha = k - 1.0;
  const auto& th = trace.theta_tilde;
  trace.theta_model.assign(1, th[0]);
  trace.epsilon_model.assign(1, 0.0);
  for (std::size_t n = 1; n < th.size(); ++n) {
    const double model = kalman_theta_coefficient(n, k) * th[n - 1];
    trace.theta_model.push_back(model);
    trace.epsilon_model.push_back(th[n] - model);
  }
  return trace;
}

double kalman_rho_coefficient(std::size_t n) {
  const auto n2 = static_cast<double>(n) * static_cast<double>(n);
  return (n2 - 1.0) / n2;
}

TrajectoryTrace kalman_linearized_rho(const PartialSumSequence& s, RhoModelOptions options) {
  if (s.size() < 2) throw DomainError("linearized rho model: needs S~_0 and S~_1");
  TrajectoryTrace trace;
  trace.x0 = s.x();
  trace.partial_sums.assign(s.values().begin(), s.values().end());

  double running = 0.0;
  for (std::size_t n = 0; n < s.size(); ++n) {
    running += s[n];
    trace.sigma_tilde.push_back(running / static_cast<double>(n + 1));
  }
  trace.rho_tilde.push_back(s[0]);
  trace.rho_condition_small.push_back(0.0);
  trace.rho_condition_unit.push_back(0.0);
  trace.rho_model.push_back(s[0]);
  trace.rho_epsilon.push_back(0.0);
  trace.rho_model_applicable.push_back(false);
  for (std::size_t n = 1; n < s.size(); ++n) {
    const double sig = trace.sigma_tilde[n];
    const double sig_prev = trace.sigma_tilde[n - 1];
    if (sig == 0.0 || sig_prev == 0.0) {
      throw DomainError("linearized rho model: sigma~ vanishes near n = " + std::to_string(n), n);
    }
    const double rho = s[n] / sig * trace.rho_tilde.back();
    const double unit = s[n] / sig_prev - 1.0;
    const double model = kalman_rho_coefficient(n) * trace.rho_tilde.back();
    trace.rho_condition_small.push_back(s[n] / (static_cast<double>(n) * sig_prev));
    trace.rho_condition_unit.push_back(unit);
    trace.rho_model.push_back(model);
    trace.rho_epsilon.push_back(rho - model);
    trace.rho_model_applicable.push_back(std::abs(unit) <= options.unit_tolerance);
    trace.rho_tilde.push_back(rho);
  }
  return trace;
}

TrajectoryTrace kalman_linearized_rho(const PeriodicSignal& signal, double x0, std::size_t n_max,
                                      SumRoute route, const QuadratureConfig& quad,
                                      RhoModelOptions options) {
  return kalman_linearized_rho(PartialSumSequence(partial_sums(signal, n_max, x0, route, quad),
                                                  SeriesOrigin::fourier_point, x0),
                               options);
}

TrajectoryClass trajectory_classify(const TrajectoryTrace& trace, ClassifyOptions options) {
  require_theta(trace);
  const std::size_t size = trace.partial_sums.size();
  if (size < 20) throw DomainError("trajectory classification: needs at least 20 entries");
  const auto& s = trace.partial_sums;
  const auto& th = trace.theta_tilde;
  const std::size_t start = size - size / 4;
  const double tol = options.relative_tolerance;

  bool tracks = true;
  for (std::size_t n = start; n < size; ++n) {
    tracks = tracks && std::abs(th[n] / s[n] - 1.0) < tol;
  }
  if (tracks) return TrajectoryClass::tracks_partial_sums;

  std::vector<double> q;
  for (std::size_t n = start; n < size; ++n) {
    q.push_back(th[n] * std::log(2.0 * static_cast<double>(n) + 1.0) / s[n]);
  }
  double mean = 0.0;
  for (double v : q) mean += v;
  mean /= static_cast<double>(q.size());
  double var = 0.0;
  for (double v : q) var += (v - mean) * (v - mean);
  const double spread = std::sqrt(var / static_cast<double>(q.size()));
  const bool stable = mean != 0.0 && spread / std::abs(mean) < tol;
  const bool falling = th[size - 1] / s[size - 1] < th[start] / s[start];
  if (stable && falling) return TrajectoryClass::decaying_log;
  return TrajectoryClass::other;
}

}  // namespace summa
