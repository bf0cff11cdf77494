#include "summa/series_core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "summa/error.hpp"

namespace summa {
namespace {

constexpr double kSingularityThreshold = 1e-12;

double checked_eval(const PeriodicSignal::Evaluator& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "evaluator returned a non-finite value at quadrature node x = " << x;
    throw EvaluationError(msg.str(), x);
  }
  return v;
}

// Quadrature of (1/2L) K(tau) f(x + tau) over tau in [-L, L]. The evaluator is
// sampled once; `accumulate(tau, weight * f)` receives each node.
template <typename Accumulate>
void convolve_nodes(const PeriodicSignal& signal, double x, const QuadratureConfig& quad,
                    Accumulate&& accumulate) {
  const double L = signal.half_period();
  std::vector<double> cuts;
  cuts.reserve(signal.jumps().size());
  for (double j : signal.jumps()) cuts.push_back(signal.wrap(j - x));
  const auto nodes = composite_nodes(-L, L, quad, cuts);
  const double scale = 1.0 / (2.0 * L);
  for (std::size_t i = 0; i < nodes.x.size(); ++i) {
    const double tau = nodes.x[i];
    const double fx = checked_eval(signal.evaluator(), signal.wrap(x + tau));
    accumulate(tau, scale * nodes.w[i] * fx);
  }
}

}  // namespace

PeriodicSignal::PeriodicSignal(double half_period, std::optional<FourierCoefficients> coeffs,
                               Evaluator f, std::vector<double> jumps)
    : half_period_(half_period), coeffs_(std::move(coeffs)), evaluator_(std::move(f)) {
  if (!(half_period > 0.0) || !std::isfinite(half_period)) {
    throw ConfigError("periodic signal: half period L must be positive and finite");
  }
  if (!coeffs_ && !evaluator_) {
    throw ConfigError("periodic signal: need coefficients or an evaluator");
  }
  if (coeffs_ && coeffs_->a.size() != coeffs_->b.size()) {
    throw ConfigError("periodic signal: cosine and sine coefficient lists differ in length");
  }
  jumps_.reserve(jumps.size());
  for (double j : jumps) jumps_.push_back(wrap(j));
}

PeriodicSignal PeriodicSignal::from_coefficients(double half_period, FourierCoefficients coeffs) {
  return PeriodicSignal(half_period, std::move(coeffs), {}, {});
}

PeriodicSignal PeriodicSignal::from_evaluator(double half_period, Evaluator f,
                                              std::vector<double> jumps) {
  if (!f) throw ConfigError("periodic signal: empty evaluator");
  return PeriodicSignal(half_period, std::nullopt, std::move(f), std::move(jumps));
}

PeriodicSignal PeriodicSignal::from_both(double half_period, FourierCoefficients coeffs,
                                         Evaluator f, std::vector<double> jumps) {
  if (!f) throw ConfigError("periodic signal: empty evaluator");
  return PeriodicSignal(half_period, std::move(coeffs), std::move(f), std::move(jumps));
}

const FourierCoefficients& PeriodicSignal::coefficients() const {
  if (!coeffs_) throw ConfigError("periodic signal has no coefficient representation");
  return *coeffs_;
}

const PeriodicSignal::Evaluator& PeriodicSignal::evaluator() const {
  if (!evaluator_) throw ConfigError("periodic signal has no pointwise evaluator");
  return evaluator_;
}

double PeriodicSignal::operator()(double x) const { return evaluator()(wrap(x)); }

double PeriodicSignal::wrap(double x) const noexcept {
  const double period = 2.0 * half_period_;
  double y = x - period * std::floor((x + half_period_) / period);
  if (y >= half_period_) y -= period;
  if (y < -half_period_) y = -half_period_;
  return y;
}

GridFunction::GridFunction(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() != values_.size()) {
    throw ConfigError("grid function: grid and values differ in length");
  }
  if (grid_.size() < 2) throw ConfigError("grid function: need at least two grid points");
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (!(grid_[i] > grid_[i - 1])) {
      throw ConfigError("grid function: grid must be strictly increasing");
    }
  }
  const double L = grid_.back();
  if (!(L > 0.0) || std::abs(grid_.front() + L) > 1e-12 * L) {
    throw ConfigError("grid function: grid must span [-L, L] including both endpoints");
  }
}

GridFunction GridFunction::sample(const PeriodicSignal& signal, std::span<const double> grid) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double x : grid) values.push_back(signal(x));
  return {std::vector<double>(grid.begin(), grid.end()), std::move(values)};
}

GridFunction GridFunction::scaled(double c) const {
  std::vector<double> values(values_);
  for (double& v : values) v *= c;
  return {grid_, std::move(values)};
}

std::vector<double> uniform_grid(double half_period, std::size_t points) {
  if (!(half_period > 0.0)) throw ConfigError("uniform grid: L must be positive");
  if (points < 2) throw ConfigError("uniform grid: need at least two points");
  std::vector<double> grid(points);
  const double h = 2.0 * half_period / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = -half_period + h * static_cast<double>(i);
  grid.back() = half_period;
  return grid;
}

FourierCoefficients fourier_coefficients(const PeriodicSignal& signal, std::size_t k_max,
                                         const QuadratureConfig& quad) {
  const double L = signal.half_period();
  const auto& f = signal.evaluator();
  const auto nodes = composite_nodes(-L, L, quad, signal.jumps());
  const double omega = std::numbers::pi / L;

  FourierCoefficients out;
  out.a.assign(k_max, 0.0);
  out.b.assign(k_max, 0.0);
  for (std::size_t i = 0; i < nodes.x.size(); ++i) {
    const double x = nodes.x[i];
    const double wf = nodes.w[i] * checked_eval(f, x) / L;
    out.a0 += wf;
    for (std::size_t k = 1; k <= k_max; ++k) {
      const double arg = static_cast<double>(k) * omega * x;
      out.a[k - 1] += wf * std::cos(arg);
      out.b[k - 1] += wf * std::sin(arg);
    }
  }
  return out;
}

double coefficient_mismatch(const PeriodicSignal& signal, const QuadratureConfig& quad) {
  const auto& given = signal.coefficients();
  const auto computed = fourier_coefficients(signal, given.k_max(), quad);
  double worst = std::abs(given.a0 - computed.a0);
  for (std::size_t k = 0; k < given.k_max(); ++k) {
    worst = std::max(worst, std::abs(given.a[k] - computed.a[k]));
    worst = std::max(worst, std::abs(given.b[k] - computed.b[k]));
  }
  return worst;
}

double dirichlet_kernel(std::size_t n, double x, double half_period) {
  const double t = std::numbers::pi * x / half_period;
  const double denom = std::sin(0.5 * t);
  const auto nd = static_cast<double>(n);
  if (std::abs(denom) < kSingularityThreshold) return 2.0 * nd + 1.0;
  return std::sin((nd + 0.5) * t) / denom;
}

double fejer_kernel(std::size_t n, double x, double half_period) {
  const double t = std::numbers::pi * x / half_period;
  const double denom = std::sin(0.5 * t);
  const double m = static_cast<double>(n) + 1.0;
  if (std::abs(denom) < kSingularityThreshold) return m;
  const double r = std::sin(0.5 * m * t) / denom;
  return r * r / m;
}

double partial_sum(const PeriodicSignal& signal, std::size_t n, double x, SumRoute route,
                   const QuadratureConfig& quad) {
  if (route == SumRoute::coefficients) {
    if (!signal.has_coefficients()) {
      throw ConfigError("partial sum: coefficient route needs a coefficient list");
    }
    const auto& c = signal.coefficients();
    if (c.k_max() < n) {
      throw ConfigError("partial sum: coefficient route needs K_max >= n");
    }
    const double omega = std::numbers::pi / signal.half_period();
    double s = 0.5 * c.a0;
    for (std::size_t k = 1; k <= n; ++k) {
      const double arg = static_cast<double>(k) * omega * x;
      s += c.a[k - 1] * std::cos(arg) + c.b[k - 1] * std::sin(arg);
    }
    return s;
  }
  if (!signal.has_evaluator()) {
    throw ConfigError("partial sum: Dirichlet route needs an evaluator");
  }
  const double L = signal.half_period();
  double s = 0.0;
  convolve_nodes(signal, x, quad,
                 [&](double tau, double wf) { s += wf * dirichlet_kernel(n, tau, L); });
  return s;
}

std::vector<double> partial_sums(const PeriodicSignal& signal, std::size_t n_max, double x,
                                 SumRoute route, const QuadratureConfig& quad) {
  std::vector<double> out(n_max + 1, 0.0);
  if (route == SumRoute::coefficients) {
    if (!signal.has_coefficients()) {
      throw ConfigError("partial sums: coefficient route needs a coefficient list");
    }
    const auto& c = signal.coefficients();
    if (c.k_max() < n_max) {
      throw ConfigError("partial sums: coefficient route needs K_max >= n_max");
    }
    const double omega = std::numbers::pi / signal.half_period();
    double s = 0.5 * c.a0;
    out[0] = s;
    for (std::size_t k = 1; k <= n_max; ++k) {
      const double arg = static_cast<double>(k) * omega * x;
      s += c.a[k - 1] * std::cos(arg) + c.b[k - 1] * std::sin(arg);
      out[k] = s;
    }
    return out;
  }
  if (!signal.has_evaluator()) {
    throw ConfigError("partial sums: Dirichlet route needs an evaluator");
  }
  const double L = signal.half_period();
  convolve_nodes(signal, x, quad, [&](double tau, double wf) {
    for (std::size_t n = 0; n <= n_max; ++n) out[n] += wf * dirichlet_kernel(n, tau, L);
  });
  return out;
}

double cesaro_via_fejer(const PeriodicSignal& signal, std::size_t n, double x,
                        const QuadratureConfig& quad) {
  const double L = signal.half_period();
  double s = 0.0;
  convolve_nodes(signal, x, quad,
                 [&](double tau, double wf) { s += wf * fejer_kernel(n, tau, L); });
  return s;
}

double l2_norm(const GridFunction& g) {
  const auto x = g.grid();
  const auto v = g.values();
  const std::size_t n = x.size();
  if (n < 3) throw ConfigError("l2 norm: Simpson rule needs at least three grid points");

  auto y = [&](std::size_t i) { return v[i] * v[i]; };
  const std::size_t intervals = n - 1;
  const std::size_t paired = intervals - intervals % 2;
  double sum = 0.0;
  for (std::size_t i = 0; i + 2 <= paired; i += 2) {
    const double h0 = x[i + 1] - x[i];
    const double h1 = x[i + 2] - x[i + 1];
    const double hs = h0 + h1;
    sum += hs / 6.0 *
           ((2.0 - h1 / h0) * y(i) + hs * hs / (h0 * h1) * y(i + 1) + (2.0 - h0 / h1) * y(i + 2));
  }
  if (paired != intervals) {
    const double h0 = x[n - 2] - x[n - 3];
    const double h1 = x[n - 1] - x[n - 2];
    const double alpha = (2.0 * h1 * h1 + 3.0 * h0 * h1) / (6.0 * (h0 + h1));
    const double beta = (h1 * h1 + 3.0 * h0 * h1) / (6.0 * h0);
    const double eta = h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
    sum += alpha * y(n - 1) + beta * y(n - 2) - eta * y(n - 3);
  }
  return std::sqrt(std::max(sum, 0.0));
}

}  // namespace summa
