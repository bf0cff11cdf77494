#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace summa {

/// Composite Gauss–Legendre settings for every integral over one period.
struct QuadratureConfig {
  int panels = 64;
  int points_per_panel = 8;
  double abs_tol = 1e-8;

  /// Throws ConfigError unless panels >= 1, points_per_panel >= 2, abs_tol > 0.
  void validate() const;
};

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int points);

/// Node/weight pairs of the composite rule on [a, b].
///
/// Panels are uniform, but every point in `cuts` that falls strictly inside
/// (a, b) becomes an additional panel edge, so integrands with jumps at known
/// locations are integrated piecewise-smoothly.
struct QuadratureNodes {
  std::vector<double> x;
  std::vector<double> w;
};

QuadratureNodes composite_nodes(double a, double b, const QuadratureConfig& config,
                                std::span<const double> cuts = {});

template <typename F>
double integrate(F&& f, double a, double b, const QuadratureConfig& config,
                 std::span<const double> cuts = {}) {
  const auto q = composite_nodes(a, b, config, cuts);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) sum += q.w[i] * f(q.x[i]);
  return sum;
}

}  // namespace summa
