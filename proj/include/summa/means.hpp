#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace summa {

/// The four summation methods: arithmetic (Cesàro–Fejér), geometric,
/// Pythagorean harmonic, and semi-harmonic means of partial sums.
enum class Method { sigma, gamma, theta, rho };

std::string_view to_string(Method m) noexcept;

/// Parses "sigma" | "gamma" | "theta" | "rho"; throws ConfigError otherwise.
Method parse_method(std::string_view name);

enum class SeriesOrigin { fourier_point, fourier_grid, number_series };

/// Partial sums S_0..S_N of a Fourier series at a point (or grid) or of a number series.
class PartialSumSequence {
 public:
  /// Throws ConfigError for an empty list and DomainError for non-finite values.
  explicit PartialSumSequence(std::vector<double> values,
                              SeriesOrigin origin = SeriesOrigin::number_series,
                              std::optional<double> x = std::nullopt);

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t n) const { return values_[n]; }
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t index_max() const noexcept { return values_.size() - 1; }
  SeriesOrigin origin() const noexcept { return origin_; }
  std::optional<double> x() const noexcept { return x_; }

 private:
  std::vector<double> values_;
  SeriesOrigin origin_;
  std::optional<double> x_;
};

struct MeansOptions {
  /// Extended arithmetic for zero partial sums: once S_k = 0, gamma_n and
  /// theta_n are 0 for every n >= k. Off means such inputs are domain errors.
  bool zero_convention = false;
};

/// A derived sequence of means. `values[i]` is the mean at index
/// `first_index + i`; rho starts at 1 because rho_0 is undefined.
struct MeanTrace {
  Method method = Method::sigma;
  std::vector<double> values;
  std::size_t first_index = 0;
  bool zero_convention_used = false;
  std::shared_ptr<const PartialSumSequence> source;

  std::size_t last_index() const noexcept { return first_index + values.size() - 1; }

  /// Mean at index n; DomainError outside [first_index, last_index].
  double at(std::size_t n) const;
};

/// Closed-form means: sigma_n = (1/(n+1)) sum S_k, gamma_n = (prod S_k)^(1/(n+1)),
/// theta_n = (n+1) / sum 1/S_k, rho_n = prod_{k<n} ((k+2) S_k / sum_{m<=k+1} S_m) * S_n.
MeanTrace compute_means(Method method, const PartialSumSequence& s, MeansOptions options = {});

/// The same traces through their one-step smoothing recurrences.
MeanTrace compute_means_recursive(Method method, const PartialSumSequence& s,
                                  MeansOptions options = {});

/// phi_n(k) = 1 - k/(n+1) for k = 1..n.
std::vector<double> smoothed_weights(std::size_t n);

/// phi_0 + sum_{k=1}^{n} phi_n(k) * term_means[k]; needs term_means.size() > n.
double weighted_smoothed_sum(std::span<const double> term_means, std::size_t n);

/// Arithmetic means of an arithmetic-mean trace (C2 from C1).
MeanTrace iterate_mean(const MeanTrace& trace);

/// S_n = v_0 + ... + v_n.
PartialSumSequence number_series_partials(std::span<const double> terms);

}  // namespace summa
