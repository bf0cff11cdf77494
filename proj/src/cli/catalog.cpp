#include "summa/cli/catalog.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "summa/error.hpp"

namespace summa::cli {
namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

double to_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("signal: " + what + " is not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw ConfigError("signal: " + what + " is not a finite number: '" + text + "'");
  }
  return v;
}

std::uint64_t to_count(const std::string& text, const std::string& what) {
  const double v = to_real(text, what);
  if (v < 0.0 || v != std::floor(v)) {
    throw ConfigError("signal: " + what + " must be a nonnegative integer");
  }
  return static_cast<std::uint64_t>(v);
}

void allow_only(const SignalSpec& spec, const std::set<std::string>& keys) {
  for (const auto& [key, value] : spec.params) {
    if (!keys.contains(key)) {
      throw ConfigError("signal '" + spec.name + "': unknown parameter '" + key + "'");
    }
  }
}

double param(const SignalSpec& spec, const std::string& key, double fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : to_real(it->second, key);
}

/// Evaluates a coefficient list; used for band-limited catalog entries.
PeriodicSignal::Evaluator series_evaluator(const FourierCoefficients& c, double L) {
  return [c, L](double x) {
    double sum = 0.5 * c.a0;
    for (std::size_t k = 1; k <= c.k_max(); ++k) {
      const double t = static_cast<double>(k) * kPi * x / L;
      sum += c.a[k - 1] * std::cos(t) + c.b[k - 1] * std::sin(t);
    }
    return sum;
  };
}

FourierCoefficients zeros(std::size_t k_max) {
  FourierCoefficients c;
  c.a.assign(k_max, 0.0);
  c.b.assign(k_max, 0.0);
  return c;
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

PeriodicSignal inline_signal(std::string_view text, double L, std::size_t k_max) {
  std::vector<double> numbers;
  std::string body(text.substr(1, text.size() - 2));
  std::size_t start = 0;
  while (start <= body.size()) {
    const auto comma = body.find(',', start);
    const auto item = trim(std::string_view(body).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start));
    if (item.empty()) throw ConfigError("signal: empty entry in inline coefficient list");
    numbers.push_back(to_real(item, "inline coefficient"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (numbers.size() % 2 == 0) {
    throw ConfigError("signal: inline list must read [a0, a1, b1, a2, b2, ...]");
  }
  const std::size_t harmonics = (numbers.size() - 1) / 2;
  auto c = zeros(std::max(k_max, harmonics));
  c.a0 = numbers[0];
  for (std::size_t k = 1; k <= harmonics; ++k) {
    c.a[k - 1] = numbers[2 * k - 1];
    c.b[k - 1] = numbers[2 * k];
  }
  auto f = series_evaluator(c, L);
  return PeriodicSignal::from_both(L, std::move(c), std::move(f));
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"constant",      "square",  "seismic-square",
                                                 "sawtooth",      "triangle", "offset-square",
                                                 "random-coeffs"};
  return names;
}

SignalSpec parse_signal_spec(std::string_view text) {
  SignalSpec spec;
  const auto colon = text.find(':');
  spec.name = trim(text.substr(0, colon));
  if (spec.name.empty()) throw ConfigError("signal: empty name");
  if (colon == std::string_view::npos) return spec;

  const std::string rest(text.substr(colon + 1));
  std::size_t start = 0;
  bool first = true;
  while (start <= rest.size()) {
    const auto comma = rest.find(',', start);
    const auto item = trim(std::string_view(rest).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start));
    if (item.empty()) throw ConfigError("signal '" + spec.name + "': empty parameter");
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      if (!first) throw ConfigError("signal '" + spec.name + "': only the first parameter may be positional");
      spec.params["_"] = item;
    } else {
      spec.params[trim(std::string_view(item).substr(0, eq))] = trim(std::string_view(item).substr(eq + 1));
    }
    first = false;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return spec;
}

PeriodicSignal catalog_signal(std::string_view text, double L, std::size_t k_max) {
  if (!(L > 0.0)) throw ConfigError("signal: half period must be positive");
  const auto trimmed = trim(text);
  if (!trimmed.empty() && trimmed.front() == '[') {
    if (trimmed.back() != ']') throw ConfigError("signal: unterminated inline coefficient list");
    return inline_signal(trimmed, L, k_max);
  }

  auto spec = parse_signal_spec(trimmed);
  const auto bind_positional = [&spec](const std::string& key) {
    if (auto it = spec.params.find("_"); it != spec.params.end()) {
      spec.params[key] = it->second;
      spec.params.erase(it);
    }
  };
  auto c = zeros(k_max);
  const std::vector<double> edges = {0.0, -L};

  if (spec.name == "constant") {
    bind_positional("value");
    allow_only(spec, {"value"});
    const double v = param(spec, "value", 1.0);
    c.a0 = 2.0 * v;
    return PeriodicSignal::from_both(L, std::move(c), [v](double) { return v; });
  }
  if (spec.name == "square" || spec.name == "seismic-square" || spec.name == "offset-square") {
    double offset = 0.0;
    double amplitude = 1.0;
    if (spec.name == "offset-square") {
      bind_positional("offset");
      allow_only(spec, {"offset"});
      offset = param(spec, "offset", 2.0);
    } else {
      allow_only(spec, {});
    }
    if (spec.name == "square") {
      offset = 0.5;
      amplitude = 0.5;
    }
    c.a0 = 2.0 * offset;
    for (std::size_t k = 1; k <= k_max; k += 2) {
      c.b[k - 1] = amplitude * 4.0 / (static_cast<double>(k) * kPi);
    }
    return PeriodicSignal::from_both(
        L, std::move(c), [offset, amplitude](double x) { return offset + amplitude * sign(x); },
        edges);
  }
  if (spec.name == "sawtooth") {
    allow_only(spec, {});
    for (std::size_t k = 1; k <= k_max; ++k) {
      c.b[k - 1] = (k % 2 == 1 ? 2.0 : -2.0) / (static_cast<double>(k) * kPi);
    }
    return PeriodicSignal::from_both(L, std::move(c), [L](double x) { return x / L; }, {-L});
  }
  if (spec.name == "triangle") {
    allow_only(spec, {});
    c.a0 = 1.0;
    for (std::size_t k = 1; k <= k_max; k += 2) {
      const auto kd = static_cast<double>(k);
      c.a[k - 1] = -4.0 / (kPi * kPi * kd * kd);
    }
    return PeriodicSignal::from_both(L, std::move(c), [L](double x) { return std::abs(x) / L; });
  }
  if (spec.name == "random-coeffs") {
    bind_positional("seed");
    allow_only(spec, {"seed", "K"});
    const auto seed = spec.params.contains("seed") ? to_count(spec.params["seed"], "seed") : 1;
    const auto harmonics = spec.params.contains("K") ? to_count(spec.params["K"], "K") : 8;
    c = zeros(std::max<std::size_t>(k_max, harmonics));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    c.a0 = unit(rng);
    for (std::size_t k = 1; k <= harmonics; ++k) {
      c.a[k - 1] = unit(rng) / static_cast<double>(k);
      c.b[k - 1] = unit(rng) / static_cast<double>(k);
    }
    auto f = series_evaluator(c, L);
    return PeriodicSignal::from_both(L, std::move(c), std::move(f));
  }

  std::string valid;
  for (const auto& name : catalog_names()) valid += (valid.empty() ? "" : ", ") + name;
  throw ConfigError("unknown signal '" + spec.name + "' (valid: " + valid + ")");
}

}  // namespace summa::cli
