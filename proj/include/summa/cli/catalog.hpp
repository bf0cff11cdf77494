#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "summa/series_core.hpp"

namespace summa::cli {

/// "name", "name:value" or "name:key=val,key=val". A positional value binds to
/// the signal's first parameter.
struct SignalSpec {
  std::string name;
  std::map<std::string, std::string> params;
};

SignalSpec parse_signal_spec(std::string_view text);

const std::vector<std::string>& catalog_names();

/// Builds a catalog signal with coefficients through harmonic `k_max` and an
/// evaluator. An inline list "[a0, a1, b1, a2, b2, ...]" is also accepted.
///
///   constant:value          f = value
///   square                  1 on (0, L), 0 on (-L, 0)
///   seismic-square          sign(x), a0 = 0
///   sawtooth                x / L
///   triangle                |x| / L
///   offset-square:offset    sign(x) + offset (default 2, keeps sums positive)
///   random-coeffs:seed,K    a_k, b_k uniform in [-1, 1] / k for k <= K
///
/// Unknown names or parameters throw ConfigError.
PeriodicSignal catalog_signal(std::string_view spec, double half_period, std::size_t k_max);

}  // namespace summa::cli
