#include "summa/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "summa/error.hpp"

namespace summa {
namespace {

std::vector<std::vector<double>> shifted_sums(const PeriodicSignal& shifted, std::size_t n_max,
                                              std::span<const double> grid, SumRoute route,
                                              const QuadratureConfig& quad) {
  std::vector<std::vector<double>> z;
  z.reserve(grid.size());
  for (double x : grid) {
    auto sums = partial_sums(shifted, n_max, x, route, quad);
    for (std::size_t k = 0; k < sums.size(); ++k) {
      if (sums[k] == 0.0) {
        throw DomainError("regularization: shifted partial sum Z_" + std::to_string(k) +
                              " vanishes at x = " + std::to_string(x) +
                              "; choose a larger |beta|",
                          k);
      }
    }
    z.push_back(std::move(sums));
  }
  return z;
}

RegularizedTrace regularized(Method method, const PeriodicSignal& signal,
                             const ShiftConfig& config, std::span<const double> grid,
                             SumRoute route, const QuadratureConfig& quad) {
  config.validate();
  if (grid.empty()) throw ConfigError("regularization: empty grid");
  const auto shifted = shift_signal(signal, config.beta);
  const auto z = shifted_sums(shifted, config.n_max, grid, route, quad);

  RegularizedTrace trace;
  trace.method = method;
  trace.beta = config.beta;
  trace.grid.assign(grid.begin(), grid.end());
  trace.first_index = method == Method::rho ? 1 : 0;
  const std::size_t rows = config.n_max + 1 - trace.first_index;
  trace.values.assign(rows, std::vector<double>(grid.size()));
  if (method == Method::rho) trace.closed_form.assign(rows, std::vector<double>(grid.size()));

  for (std::size_t j = 0; j < grid.size(); ++j) {
    MeanTrace mean;
    try {
      mean = compute_means(method, PartialSumSequence(z[j], SeriesOrigin::fourier_point, grid[j]));
    } catch (const DomainError& e) {
      throw DomainError(std::string("regularization: ") + e.what() + " at x = " +
                            std::to_string(grid[j]) + "; choose a larger |beta|",
                        e.index());
    }
    for (std::size_t i = 0; i < rows; ++i) trace.values[i][j] = mean.values[i];

    if (method == Method::rho) {
      double running = z[j][0];
      double product = 1.0;
      for (std::size_t n = 1; n <= config.n_max; ++n) {
        running += z[j][n];
        const double shifted_mean = running / static_cast<double>(n + 1);
        product *= z[j][n] /
                   (static_cast<double>(n + 1) * shifted_mean + config.beta);
        const double closed = static_cast<double>(n + 1) * config.beta * product;
        trace.closed_form[n - 1][j] = closed;
        trace.closed_form_discrepancy =
            std::max(trace.closed_form_discrepancy, std::abs(closed - trace.values[n - 1][j]));
      }
    }
  }
  return trace;
}

}  // namespace

void ShiftConfig::validate() const {
  if (!std::isfinite(beta) || beta == 0.0) throw ConfigError("shift: beta must be finite and nonzero");
  if (n_max < 1) throw ConfigError("shift: n_max must be at least 1");
  if (!(recovery_tolerance > 0.0)) throw ConfigError("shift: recovery_tolerance must be positive");
}

std::span<const double> RegularizedTrace::at(std::size_t n) const {
  if (values.empty() || n < first_index || n > last_index()) {
    throw DomainError("regularized trace: index " + std::to_string(n) + " out of range", n);
  }
  return values[n - first_index];
}

PeriodicSignal shift_signal(const PeriodicSignal& signal, double beta) {
  if (!std::isfinite(beta) || beta == 0.0) throw ConfigError("shift: beta must be finite and nonzero");
  const double L = signal.half_period();
  std::vector<double> jumps(signal.jumps().begin(), signal.jumps().end());
  std::optional<FourierCoefficients> coeffs;
  if (signal.has_coefficients()) {
    coeffs = signal.coefficients();
    coeffs->a0 += 2.0 * beta;
  }
  if (signal.has_evaluator()) {
    auto f = signal.evaluator();
    PeriodicSignal::Evaluator g = [f, beta](double x) { return f(x) + beta; };
    if (coeffs) return PeriodicSignal::from_both(L, std::move(*coeffs), std::move(g), jumps);
    return PeriodicSignal::from_evaluator(L, std::move(g), jumps);
  }
  return PeriodicSignal::from_coefficients(L, std::move(*coeffs));
}

RegularizedTrace regularized_theta(const PeriodicSignal& signal, const ShiftConfig& config,
                                   std::span<const double> grid, SumRoute route,
                                   const QuadratureConfig& quad) {
  return regularized(Method::theta, signal, config, grid, route, quad);
}

RegularizedTrace regularized_rho(const PeriodicSignal& signal, const ShiftConfig& config,
                                 std::span<const double> grid, SumRoute route,
                                 const QuadratureConfig& quad) {
  return regularized(Method::rho, signal, config, grid, route, quad);
}

std::vector<std::vector<double>> recover(const RegularizedTrace& trace, double beta) {
  auto out = trace.values;
  for (auto& row : out) {
    for (double& v : row) v -= beta;
  }
  return out;
}

std::vector<bool> interior_mask(const PeriodicSignal& signal, std::span<const double> grid,
                                double band) {
  const double period = 2.0 * signal.half_period();
  const double width = band * period;
  std::vector<bool> mask(grid.size(), true);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (double jump : signal.jumps()) {
      double d = std::fmod(std::abs(grid[i] - jump), period);
      d = std::min(d, period - d);
      if (d < width) mask[i] = false;
    }
  }
  return mask;
}

double default_beta(const PeriodicSignal& signal, std::span<const double> grid) {
  double peak = 0.0;
  for (double x : grid) peak = std::max(peak, std::abs(signal(x)));
  return peak > 0.0 ? 10.0 * peak : 1.0;
}

BetaInvarianceReport beta_invariance(const RegularizedTrace& a, const RegularizedTrace& b,
                                     const std::vector<bool>& mask, double tolerance) {
  if (a.grid != b.grid || a.last_index() != b.last_index() || mask.size() != a.grid.size()) {
    throw ConfigError("beta invariance: traces must share grid, index range and mask");
  }
  BetaInvarianceReport report;
  report.beta_a = a.beta;
  report.beta_b = b.beta;
  report.n = a.last_index();
  report.tolerance = tolerance;
  const auto ra = a.at(report.n);
  const auto rb = b.at(report.n);
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (!mask[j]) continue;
    ++report.points_compared;
    report.max_difference =
        std::max(report.max_difference, std::abs((ra[j] - a.beta) - (rb[j] - b.beta)));
  }
  report.passed = report.points_compared > 0 && report.max_difference <= tolerance;
  return report;
}

}  // namespace summa
