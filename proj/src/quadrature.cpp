#include "summa/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "summa/error.hpp"

namespace summa {

void QuadratureConfig::validate() const {
  if (panels < 1) throw ConfigError("quadrature: panels must be >= 1");
  if (points_per_panel < 2) throw ConfigError("quadrature: points_per_panel must be >= 2");
  if (!(abs_tol > 0.0)) throw ConfigError("quadrature: abs_tol must be > 0");
}

GaussLegendreRule gauss_legendre(int points) {
  if (points < 1) throw ConfigError("gauss_legendre: need at least one point");
  const auto n = static_cast<std::size_t>(points);
  GaussLegendreRule rule{std::vector<double>(n), std::vector<double>(n)};

  // Roots are symmetric; Newton on P_n from the Chebyshev-like initial guess.
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        const auto jd = static_cast<double>(j);
        p0 = ((2.0 * jd - 1.0) * z * p1 - (jd - 1.0) * p2) / jd;
      }
      dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

QuadratureNodes composite_nodes(double a, double b, const QuadratureConfig& config,
                                std::span<const double> cuts) {
  config.validate();
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(config.panels) + 1 + cuts.size());
  const double h = (b - a) / config.panels;
  for (int p = 0; p <= config.panels; ++p) edges.push_back(a + h * p);
  edges.back() = b;
  const double guard = 1e-12 * std::abs(b - a);
  for (double c : cuts) {
    if (c > a + guard && c < b - guard) edges.push_back(c);
  }
  std::sort(edges.begin(), edges.end());
  // Drop slivers produced by a cut landing on (or next to) a uniform edge.
  std::vector<double> merged{edges.front()};
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] - merged.back() > guard) merged.push_back(edges[i]);
  }
  merged.back() = b;

  const auto rule = gauss_legendre(config.points_per_panel);
  QuadratureNodes out;
  out.x.reserve((merged.size() - 1) * rule.nodes.size());
  out.w.reserve(out.x.capacity());
  for (std::size_t p = 0; p + 1 < merged.size(); ++p) {
    const double mid = 0.5 * (merged[p] + merged[p + 1]);
    const double rad = 0.5 * (merged[p + 1] - merged[p]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      out.x.push_back(mid + rad * rule.nodes[i]);
      out.w.push_back(rad * rule.weights[i]);
    }
  }
  return out;
}

}  // namespace summa
