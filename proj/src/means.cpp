#include "summa/means.hpp"

#include <cmath>
#include <string>

#include "summa/error.hpp"

namespace summa {
namespace {

std::string at_index(std::string_view what, std::size_t k) {
  return std::string(what) + " at index " + std::to_string(k);
}

std::shared_ptr<const PartialSumSequence> share(const PartialSumSequence& s) {
  return std::make_shared<const PartialSumSequence>(s);
}

// First index carrying a zero partial sum, after rejecting negative terms for gamma
// and applying the strict/convention rule shared by gamma and theta.
std::optional<std::size_t> scan_zeros(Method method, const PartialSumSequence& s,
                                      const MeansOptions& options) {
  std::optional<std::size_t> first_zero;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (method == Method::gamma && s[k] < 0.0) {
      throw DomainError(at_index("gamma: negative partial sum", k), k);
    }
    if (s[k] == 0.0) {
      if (!options.zero_convention) {
        throw DomainError(at_index(std::string(to_string(method)) + ": zero partial sum", k), k);
      }
      if (!first_zero) first_zero = k;
    }
  }
  return first_zero;
}

void require_rho_length(const PartialSumSequence& s) {
  if (s.size() < 2) throw DomainError("rho: needs at least S_0 and S_1 (rho_0 is undefined)", 0);
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::sigma: return "sigma";
    case Method::gamma: return "gamma";
    case Method::theta: return "theta";
    case Method::rho: return "rho";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "sigma") return Method::sigma;
  if (name == "gamma") return Method::gamma;
  if (name == "theta") return Method::theta;
  if (name == "rho") return Method::rho;
  throw ConfigError("unknown summation method '" + std::string(name) +
                    "' (expected sigma, gamma, theta or rho)");
}

PartialSumSequence::PartialSumSequence(std::vector<double> values, SeriesOrigin origin,
                                       std::optional<double> x)
    : values_(std::move(values)), origin_(origin), x_(x) {
  if (values_.empty()) throw ConfigError("partial sum sequence: need at least S_0");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw DomainError(at_index("partial sum sequence: non-finite value", k), k);
    }
  }
}

double MeanTrace::at(std::size_t n) const {
  if (n < first_index) {
    throw DomainError(std::string(to_string(method)) + "_" + std::to_string(n) + " is undefined",
                      n);
  }
  if (n > last_index()) {
    throw DomainError(at_index(std::string(to_string(method)) + ": trace ends before", n), n);
  }
  return values[n - first_index];
}

MeanTrace compute_means(Method method, const PartialSumSequence& s, MeansOptions options) {
  MeanTrace trace{method, {}, 0, false, share(s)};
  const std::size_t N = s.index_max();
  auto& out = trace.values;

  switch (method) {
    case Method::sigma: {
      double sum = 0.0;
      for (std::size_t n = 0; n <= N; ++n) {
        sum += s[n];
        out.push_back(sum / static_cast<double>(n + 1));
      }
      break;
    }
    case Method::gamma: {
      const auto zero = scan_zeros(method, s, options);
      double log_sum = 0.0;
      for (std::size_t n = 0; n <= N; ++n) {
        if (zero && n >= *zero) {
          out.push_back(0.0);
          trace.zero_convention_used = true;
          continue;
        }
        log_sum += std::log(s[n]);
        out.push_back(std::exp(log_sum / static_cast<double>(n + 1)));
      }
      break;
    }
    case Method::theta: {
      const auto zero = scan_zeros(method, s, options);
      double reciprocal_sum = 0.0;
      for (std::size_t n = 0; n <= N; ++n) {
        if (zero && n >= *zero) {
          out.push_back(0.0);
          trace.zero_convention_used = true;
          continue;
        }
        reciprocal_sum += 1.0 / s[n];
        if (reciprocal_sum == 0.0) {
          throw DomainError(at_index("theta: reciprocal sum vanishes", n), n);
        }
        out.push_back(static_cast<double>(n + 1) / reciprocal_sum);
      }
      break;
    }
    case Method::rho: {
      require_rho_length(s);
      trace.first_index = 1;
      double running = s[0];
      double product = 1.0;
      for (std::size_t n = 1; n <= N; ++n) {
        // Factor k = n-1 needs sum_{m=0}^{n} S_m.
        const std::size_t k = n - 1;
        running += s[n];
        if (running == 0.0) {
          throw DomainError(at_index("rho: running sum of partial sums vanishes", k), n);
        }
        product *= static_cast<double>(k + 2) * s[k] / running;
        out.push_back(product * s[n]);
      }
      break;
    }
  }
  return trace;
}

MeanTrace compute_means_recursive(Method method, const PartialSumSequence& s,
                                  MeansOptions options) {
  MeanTrace trace{method, {}, 0, false, share(s)};
  const std::size_t N = s.index_max();
  auto& out = trace.values;

  switch (method) {
    case Method::sigma: {
      out.push_back(s[0]);
      for (std::size_t n = 1; n <= N; ++n) {
        const double p = 1.0 / static_cast<double>(n + 1);
        out.push_back(static_cast<double>(n) * p * out.back() + p * s[n]);
      }
      break;
    }
    case Method::gamma: {
      scan_zeros(method, s, options);
      out.push_back(s[0]);
      for (std::size_t n = 1; n <= N; ++n) {
        const double m = static_cast<double>(n + 1);
        out.push_back(std::pow(s[n], 1.0 / m) * std::pow(out.back(), static_cast<double>(n) / m));
      }
      trace.zero_convention_used = options.zero_convention && [&] {
        for (double v : s.values()) if (v == 0.0) return true;
        return false;
      }();
      break;
    }
    case Method::theta: {
      scan_zeros(method, s, options);
      out.push_back(s[0]);
      if (s[0] == 0.0) trace.zero_convention_used = true;
      for (std::size_t n = 1; n <= N; ++n) {
        const double prev = out.back();
        if (prev == 0.0 || s[n] == 0.0) {
          out.push_back(0.0);
          trace.zero_convention_used = true;
          continue;
        }
        const double inv_n = 1.0 / static_cast<double>(n);
        const double denom = inv_n * prev + s[n];
        if (denom == 0.0) throw DomainError(at_index("theta: recurrence denominator vanishes", n), n);
        out.push_back((inv_n * s[n] + s[n]) / denom * prev);
      }
      break;
    }
    case Method::rho: {
      require_rho_length(s);
      trace.first_index = 1;
      double running = s[0] + s[1];
      if (running == 0.0) throw DomainError("rho: sigma_1 vanishes at index 1", 1);
      const double sigma1 = 0.5 * running;
      out.push_back(s[0] / sigma1 * s[1]);
      for (std::size_t n = 2; n <= N; ++n) {
        running += s[n];
        if (running == 0.0) {
          throw DomainError(at_index("rho: recurrence denominator vanishes", n), n);
        }
        out.push_back(static_cast<double>(n + 1) * s[n] / running * out.back());
      }
      break;
    }
  }
  return trace;
}

std::vector<double> smoothed_weights(std::size_t n) {
  if (n < 1) throw DomainError("smoothed weights: n must be >= 1", n);
  std::vector<double> w;
  w.reserve(n);
  const auto m = static_cast<double>(n + 1);
  for (std::size_t k = 1; k <= n; ++k) w.push_back(1.0 - static_cast<double>(k) / m);
  return w;
}

double weighted_smoothed_sum(std::span<const double> term_means, std::size_t n) {
  if (term_means.size() <= n) {
    throw ConfigError("weighted smoothed sum: need term means phi_0..phi_n");
  }
  double sum = term_means[0];
  if (n == 0) return sum;
  const auto w = smoothed_weights(n);
  for (std::size_t k = 1; k <= n; ++k) sum += w[k - 1] * term_means[k];
  return sum;
}

MeanTrace iterate_mean(const MeanTrace& trace) {
  if (trace.method != Method::sigma) {
    throw ConfigError("iterate_mean: only arithmetic-mean (sigma) traces can be iterated, got " +
                      std::string(to_string(trace.method)));
  }
  PartialSumSequence as_partials(trace.values, SeriesOrigin::number_series);
  return compute_means(Method::sigma, as_partials);
}

PartialSumSequence number_series_partials(std::span<const double> terms) {
  std::vector<double> sums;
  sums.reserve(terms.size());
  double s = 0.0;
  for (double v : terms) {
    s += v;
    sums.push_back(s);
  }
  return PartialSumSequence(std::move(sums), SeriesOrigin::number_series);
}

}  // namespace summa
