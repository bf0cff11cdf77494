#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "summa/means.hpp"
#include "summa/series_core.hpp"

namespace summa {

struct ShiftConfig {
  double beta = 1.0;
  std::size_t n_max = 200;
  double recovery_tolerance = 1e-3;

  /// Throws ConfigError unless beta is finite and nonzero, n_max >= 1 and the
  /// tolerance is positive.
  void validate() const;
};

/// f* = f + beta; beta = 0 throws ConfigError. Coefficients, when present, get a0* = a0 + 2 beta; jumps are kept.
PeriodicSignal shift_signal(const PeriodicSignal& signal, double beta);

/// Means of the shifted partial sums Z_k(x) on a grid.
/// `values[i][j]` is the mean at index `first_index + i` and grid point j.
struct RegularizedTrace {
  Method method = Method::theta;
  double beta = 0.0;
  std::vector<double> grid;
  std::size_t first_index = 0;
  std::vector<std::vector<double>> values;

  /// rho only: the product closed form (n+1) beta prod (S_k + beta) / ((k+1) sigma*_k + beta),
  /// evaluated with sigma*_k the shifted mean, and its largest deviation
  /// from `values`.
  std::vector<std::vector<double>> closed_form;
  double closed_form_discrepancy = 0.0;

  std::size_t last_index() const noexcept { return first_index + values.size() - 1; }
  /// Row for index n; throws DomainError outside the trace.
  std::span<const double> at(std::size_t n) const;
};

/// theta*_n(x) = (n+1) / sum_k 1/Z_k(x). A zero Z_k throws DomainError
/// suggesting a larger |beta|.
RegularizedTrace regularized_theta(const PeriodicSignal& signal, const ShiftConfig& config,
                                   std::span<const double> grid,
                                   SumRoute route = SumRoute::coefficients,
                                   const QuadratureConfig& quad = {});

/// rho*_n(x) = Z_0 prod_{k=1}^{n} Z_k / sigma*_k, from the shifted sums directly.
RegularizedTrace regularized_rho(const PeriodicSignal& signal, const ShiftConfig& config,
                                 std::span<const double> grid,
                                 SumRoute route = SumRoute::coefficients,
                                 const QuadratureConfig& quad = {});

/// Trace values minus beta; approximates S(x) for large n.
std::vector<std::vector<double>> recover(const RegularizedTrace& trace, double beta);

/// False for grid points within `band` * 2L of a declared jump (periodic distance).
std::vector<bool> interior_mask(const PeriodicSignal& signal, std::span<const double> grid,
                                double band = 0.05);

/// 10 * max |f| over the grid, or 1 for a signal that vanishes there.
double default_beta(const PeriodicSignal& signal, std::span<const double> grid);

struct BetaInvarianceReport {
  double beta_a = 0.0;
  double beta_b = 0.0;
  std::size_t n = 0;
  std::size_t points_compared = 0;
  double max_difference = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Compares the recovered last rows of two traces on the masked grid points.
BetaInvarianceReport beta_invariance(const RegularizedTrace& a, const RegularizedTrace& b,
                                     const std::vector<bool>& mask, double tolerance);

}  // namespace summa
