#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "summa/quadrature.hpp"

namespace summa {

/// Truncated trigonometric series a0/2 + sum_k (a_k cos(k pi x / L) + b_k sin(k pi x / L)).
/// `a[k-1]` and `b[k-1]` hold the k-th harmonic.
struct FourierCoefficients {
  double a0 = 0.0;
  std::vector<double> a;
  std::vector<double> b;

  std::size_t k_max() const noexcept { return a.size(); }
  double cos_coeff(std::size_t k) const { return k == 0 ? a0 : a.at(k - 1); }
  double sin_coeff(std::size_t k) const { return k == 0 ? 0.0 : b.at(k - 1); }
};

/// A 2L-periodic function given by its coefficients, a pointwise evaluator on
/// [-L, L], or both.
///
/// Jump locations are optional metadata used to place quadrature panel edges;
/// they are stored reduced to [-L, L).
class PeriodicSignal {
 public:
  using Evaluator = std::function<double(double)>;

  static PeriodicSignal from_coefficients(double half_period, FourierCoefficients coeffs);
  static PeriodicSignal from_evaluator(double half_period, Evaluator f,
                                       std::vector<double> jumps = {});
  static PeriodicSignal from_both(double half_period, FourierCoefficients coeffs,
                                  Evaluator f, std::vector<double> jumps = {});

  double half_period() const noexcept { return half_period_; }
  bool has_coefficients() const noexcept { return coeffs_.has_value(); }
  bool has_evaluator() const noexcept { return static_cast<bool>(evaluator_); }

  /// Throws ConfigError when the representation is absent.
  const FourierCoefficients& coefficients() const;
  const Evaluator& evaluator() const;

  /// Evaluates the periodic extension; x is reduced to [-L, L) first.
  double operator()(double x) const;

  std::span<const double> jumps() const noexcept { return jumps_; }

  /// Reduces x to [-L, L).
  double wrap(double x) const noexcept;

 private:
  PeriodicSignal(double half_period, std::optional<FourierCoefficients> coeffs,
                 Evaluator f, std::vector<double> jumps);

  double half_period_;
  std::optional<FourierCoefficients> coeffs_;
  Evaluator evaluator_;
  std::vector<double> jumps_;
};

/// Samples on a strictly increasing grid spanning [-L, L] (both endpoints).
class GridFunction {
 public:
  GridFunction(std::vector<double> grid, std::vector<double> values);

  static GridFunction sample(const PeriodicSignal& signal, std::span<const double> grid);

  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return grid_.size(); }
  double half_period() const noexcept { return grid_.back(); }

  GridFunction scaled(double c) const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
};

inline constexpr std::size_t kDefaultGridPoints = 1024;

/// `points` uniform nodes on [-L, L] including both endpoints.
std::vector<double> uniform_grid(double half_period, std::size_t points = kDefaultGridPoints);

enum class SumRoute { coefficients, dirichlet };

/// a0 and (a_k, b_k), k = 1..k_max, from the Euler formulas by composite
/// Gauss–Legendre quadrature of the evaluator over [-L, L].
FourierCoefficients fourier_coefficients(const PeriodicSignal& signal, std::size_t k_max,
                                         const QuadratureConfig& quad = {});

/// Max |difference| between the stored coefficients and the ones recomputed
/// from the evaluator. Both representations must be present.
double coefficient_mismatch(const PeriodicSignal& signal, const QuadratureConfig& quad = {});

/// sin((n + 1/2) t) / sin(t / 2) with t = pi x / L; 2n+1 at the removable singularity.
double dirichlet_kernel(std::size_t n, double x, double half_period);

/// (1/(n+1)) [sin((n+1) t / 2) / sin(t / 2)]^2 with t = pi x / L; n+1 at the singularity.
double fejer_kernel(std::size_t n, double x, double half_period);

/// S_n(x), by summing coefficients or by Dirichlet convolution of the evaluator.
double partial_sum(const PeriodicSignal& signal, std::size_t n, double x,
                   SumRoute route, const QuadratureConfig& quad = {});

/// S_0(x)..S_{n_max}(x) in one pass.
std::vector<double> partial_sums(const PeriodicSignal& signal, std::size_t n_max, double x,
                                 SumRoute route, const QuadratureConfig& quad = {});

/// Cesàro–Fejér mean sigma_n(x) as the Fejér-kernel convolution of the evaluator.
double cesaro_via_fejer(const PeriodicSignal& signal, std::size_t n, double x,
                        const QuadratureConfig& quad = {});

/// {integral over [-L, L] of g^2}^{1/2} by composite Simpson on the grid.
/// An odd interval count closes with the three-point end correction.
double l2_norm(const GridFunction& g);

}  // namespace summa
