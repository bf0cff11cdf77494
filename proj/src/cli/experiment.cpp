#include "summa/cli/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "summa/cli/catalog.hpp"
#include "summa/diagnostics.hpp"
#include "summa/dynamics.hpp"
#include "summa/error.hpp"
#include "summa/regularization.hpp"

namespace summa::cli {
namespace {

using Rows = std::vector<CsvRecord>;

struct Context {
  const ExperimentConfig& config;
  std::string id;
  Rows rows;
  std::vector<std::string> summary;

  void add(std::size_t n, std::optional<double> x, std::string method, std::optional<double> value,
           std::string aux = {}) {
    rows.push_back({id, n, x, std::move(method), value, std::move(aux)});
  }
  template <typename... Args>
  void say(fmt::format_string<Args...> f, Args&&... args) {
    summary.push_back(fmt::format(f, std::forward<Args>(args)...));
  }
};

std::string g(double v) { return fmt::format("{:.10g}", v); }

PeriodicSignal make_signal(const ExperimentConfig& c) {
  return catalog_signal(c.signal, c.L, c.n_max);
}

std::vector<double> evaluation_points(const ExperimentConfig& c) {
  if (c.x) return {*c.x};
  return uniform_grid(c.L, c.grid_points);
}

PartialSumSequence series_partials(const ExperimentConfig& c) {
  std::vector<double> terms(c.series.begin(), c.series.end());
  if (terms.size() > c.n_max + 1) terms.resize(c.n_max + 1);
  return number_series_partials(terms);
}

PartialSumSequence sums_at(const ExperimentConfig& c, const PeriodicSignal& signal, double x) {
  return PartialSumSequence(partial_sums(signal, c.n_max, x, c.route, c.quadrature),
                            SeriesOrigin::fourier_point, x);
}

/// Trace values indexed by n = 0..N, with nullopt where the mean is undefined.
std::vector<std::optional<double>> trace_or_undefined(Method m, const PartialSumSequence& s,
                                                      MeansOptions options) {
  std::vector<std::optional<double>> out(s.size());
  try {
    const auto trace = compute_means(m, s, options);
    for (std::size_t i = 0; i < trace.values.size(); ++i) out[trace.first_index + i] = trace.values[i];
    return out;
  } catch (const DomainError& e) {
    const std::size_t stop = e.index().value_or(0);
    const std::size_t needed = m == Method::rho ? 2 : 1;
    if (stop < needed || stop > s.size()) return out;
    std::vector<double> prefix(s.values().begin(), s.values().begin() + static_cast<long>(stop));
    const auto trace = compute_means(m, PartialSumSequence(std::move(prefix), s.origin(), s.x()), options);
    for (std::size_t i = 0; i < trace.values.size(); ++i) out[trace.first_index + i] = trace.values[i];
    return out;
  }
}

void emit_means(Context& ctx, const PartialSumSequence& s, std::optional<double> x,
                std::span<const Method> methods, MeansOptions options) {
  for (Method m : methods) {
    const auto values = trace_or_undefined(m, s, options);
    for (std::size_t n = 0; n < values.size(); ++n) {
      ctx.add(n, x, std::string(to_string(m)), values[n],
              options.zero_convention && (m == Method::gamma || m == Method::theta) ? "zero_convention" : "");
    }
  }
}

void summarize_last(Context& ctx, std::span<const Method> methods) {
  for (Method m : methods) {
    const auto name = std::string(to_string(m));
    std::size_t last = 0;
    for (const auto& r : ctx.rows) {
      if (r.method == name) last = std::max(last, r.n);
    }
    double lo = INFINITY;
    double hi = -INFINITY;
    std::size_t undefined = 0;
    for (const auto& r : ctx.rows) {
      if (r.method != name || r.n != last) continue;
      if (!r.value) {
        ++undefined;
        continue;
      }
      lo = std::min(lo, *r.value);
      hi = std::max(hi, *r.value);
    }
    if (lo > hi) {
      ctx.say("{} at n={}: undefined", name, last);
    } else if (lo == hi) {
      ctx.say("{} at n={}: {}{}", name, last, g(lo),
              undefined ? fmt::format(" ({} undefined)", undefined) : "");
    } else {
      ctx.say("{} at n={}: range [{}, {}]{}", name, last, g(lo), g(hi),
              undefined ? fmt::format(" ({} undefined)", undefined) : "");
    }
  }
}

void run_coeffs(Context& ctx) {
  const auto& c = ctx.config;
  const auto signal = make_signal(c);
  const auto coeffs = fourier_coefficients(signal, c.n_max, c.quadrature);
  for (std::size_t k = 0; k <= c.n_max; ++k) {
    ctx.add(k, std::nullopt, "a", coeffs.cos_coeff(k), "quadrature");
    if (k > 0) ctx.add(k, std::nullopt, "b", coeffs.sin_coeff(k), "quadrature");
  }
  ctx.say("a0 = {}", g(coeffs.a0));
  if (signal.has_coefficients()) {
    ctx.say("max |stored - quadrature| = {:.3e}", coefficient_mismatch(signal, c.quadrature));
  }
}

void run_sums(Context& ctx) {
  const auto& c = ctx.config;
  if (!c.series.empty()) {
    const auto s = series_partials(c);
    for (std::size_t n = 0; n < s.size(); ++n) ctx.add(n, std::nullopt, "S", s[n]);
    ctx.say("S_{} = {}", s.index_max(), g(s[s.index_max()]));
    return;
  }
  const auto signal = make_signal(c);
  const auto route = c.route == SumRoute::coefficients ? "coefficients" : "dirichlet";
  double worst = 0.0;
  for (double x : evaluation_points(c)) {
    const auto s = sums_at(c, signal, x);
    for (std::size_t n = 0; n < s.size(); ++n) ctx.add(n, x, "S", s[n], route);
    worst = std::max(worst, std::abs(s[s.index_max()] - signal(x)));
  }
  ctx.say("route: {}", route);
  ctx.say("max |S_{} - f| over points = {}", c.n_max, g(worst));
}

void run_means(Context& ctx) {
  const auto& c = ctx.config;
  const MeansOptions options{c.zero_convention};
  if (!c.series.empty()) {
    emit_means(ctx, series_partials(c), std::nullopt, c.methods, options);
  } else {
    const auto signal = make_signal(c);
    for (double x : evaluation_points(c)) emit_means(ctx, sums_at(c, signal, x), x, c.methods, options);
  }
  summarize_last(ctx, c.methods);
}

void report_contraction(Context& ctx, const ContractionReport& r) {
  const auto name = std::string(to_string(r.method));
  for (std::size_t i = 0; i < r.ratio_trace.size(); ++i) {
    ctx.add(r.first_index + i, std::nullopt, name + "_ratio", r.ratio_trace[i],
            i < r.verdicts.size() ? std::string(to_string(r.verdicts[i])) : "");
  }
  for (std::size_t i = 0; i < r.secondary_trace.size(); ++i) {
    ctx.add(r.first_index + i, std::nullopt, name + "_secondary", r.secondary_trace[i]);
  }
  for (std::size_t i = 0; i < r.delta_criterion.size(); ++i) {
    ctx.add(i, std::nullopt, name + "_delta", r.delta_criterion[i]);
  }
  const auto onset = r.onset ? fmt::format("{}", *r.onset) : std::string("unbounded");
  if (r.method == Method::sigma) {
    const auto closed = r.closed_form_onset ? g(*r.closed_form_onset) : std::string("unbounded");
    ctx.say("sigma: onset N = {} (delta {}), closed form N = {} [{}]", onset, g(r.delta), closed,
            to_string(r.closed_form_case));
  } else {
    ctx.say("{}: first contracting index = {}", name, onset);
  }
}

void report_certificate(Context& ctx, const PartialSumSequence& s) {
  const auto& c = ctx.config;
  CertificateOptions opts;
  opts.zero_convention = c.zero_convention;
  const auto cert = certify_theorem5(s, opts);
  ctx.say("certificate: K = {}, M = {}, verdict {}{}", g(cert.K), g(cert.M), to_string(cert.verdict),
          cert.flagged_indices.empty()
              ? std::string()
              : fmt::format(", {} flagged indices (zero convention)", cert.flagged_indices.size()));
  if (cert.tail_window_complete) {
    ctx.say("certificate: Cauchy tail r M / (n+1) = {} at n = {}, r = {}", g(cert.cauchy_bound),
            cert.tail_index, cert.tail_span);
  }
}

void run_diagnose(Context& ctx) {
  const auto& c = ctx.config;
  ContractionOptions options;
  options.means.zero_convention = c.zero_convention;

  std::optional<PartialSumSequence> point;
  std::vector<double> norms;
  std::vector<GridFunction> partials;
  if (!c.series.empty()) {
    point = series_partials(c);
    for (double v : point->values()) norms.push_back(std::abs(v));
  } else {
    const auto signal = make_signal(c);
    const auto grid = uniform_grid(c.L, c.grid_points);
    std::vector<std::vector<double>> by_n(c.n_max + 1, std::vector<double>(grid.size()));
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const auto s = partial_sums(signal, c.n_max, grid[j], c.route, c.quadrature);
      for (std::size_t n = 0; n <= c.n_max; ++n) by_n[n][j] = s[n];
    }
    for (auto& values : by_n) {
      partials.emplace_back(grid, std::move(values));
      norms.push_back(l2_norm(partials.back()));
    }
    if (c.x) point = sums_at(c, signal, *c.x);
  }

  for (Method m : c.methods) {
    if (m == Method::sigma) {
      report_contraction(ctx, contraction_onset_sigma(norms, c.delta, options.epsilon));
    } else if (partials.empty()) {
      report_contraction(ctx, contraction_condition(m, *point, options));
    } else {
      report_contraction(ctx, contraction_condition(m, partials, options));
    }
  }
  if (point) {
    const bool positive = std::all_of(point->values().begin(), point->values().end(),
                                      [](double v) { return v > 0.0; });
    if (positive) {
      const auto ineq = pythagorean_check(*point);
      ctx.say("theta <= gamma <= sigma: {}", ineq.all_hold ? "holds" : "violated");
    }
    report_certificate(ctx, *point);
  }
}

void run_dynamics(Context& ctx) {
  const auto& c = ctx.config;
  PartialSumSequence s = !c.series.empty()
                             ? series_partials(c)
                             : sums_at(c, make_signal(c), c.x.value_or(0.5 * c.L));
  auto trace = logistic_reduction(pointwise_theta_trace(s));
  const auto x = s.x();
  for (std::size_t n = 0; n < s.size(); ++n) {
    ctx.add(n, x, "theta_tilde", trace.theta_tilde[n]);
    ctx.add(n, x, "u", trace.u[n]);
    ctx.add(n, x, "logistic_residual", trace.logistic_residual[n]);
    ctx.add(n, x, "condition", trace.condition_value[n]);
  }
  if (s.size() >= 16) {
    try {
      const auto model = kalman_linearized_theta(trace);
      for (std::size_t n = 0; n < s.size(); ++n) {
        ctx.add(n, x, "theta_model", model.theta_model[n]);
        ctx.add(n, x, "theta_epsilon", model.epsilon_model[n]);
      }
      ctx.say("kappa = {}, alpha = {}", g(*model.kappa), g(*model.alpha));
    } catch (const DomainError& e) {
      ctx.say("linearized theta model skipped: {}", e.what());
    }
  }
  const auto rho = kalman_linearized_rho(s);
  std::size_t applicable = 0;
  for (std::size_t n = 0; n < s.size(); ++n) {
    ctx.add(n, x, "rho_tilde", rho.rho_tilde[n], n == 0 ? "seed" : "");
    ctx.add(n, x, "rho_model", rho.rho_model[n]);
    ctx.add(n, x, "rho_epsilon", rho.rho_epsilon[n],
            n == 0 ? "" : (rho.rho_model_applicable[n] ? "applicable" : "outside"));
    applicable += rho.rho_model_applicable[n] ? 1 : 0;
  }
  ctx.say("theta~_{} = {}, rho~_{} = {}", s.index_max(), g(trace.theta_tilde.back()),
          s.index_max(), g(rho.rho_tilde.back()));
  ctx.say("linearized rho model applicable at {} of {} indices", applicable, s.size() - 1);
  if (s.size() >= 20) ctx.say("trajectory: {}", to_string(trajectory_classify(trace)));
}

void run_regularize(Context& ctx) {
  const auto& c = ctx.config;
  const auto signal = make_signal(c);
  const auto grid = evaluation_points(c);
  const double beta = c.beta.value_or(default_beta(signal, grid));
  ShiftConfig shift{beta, c.n_max};
  ShiftConfig doubled{2.0 * beta, c.n_max};
  const auto theta = regularized_theta(signal, shift, grid, c.route, c.quadrature);
  const auto theta2 = regularized_theta(signal, doubled, grid, c.route, c.quadrature);
  const auto rho = regularized_rho(signal, shift, grid, c.route, c.quadrature);
  auto mask = c.x ? std::vector<bool>{true} : interior_mask(signal, grid);

  const auto emit = [&](const RegularizedTrace& t, const std::string& name) {
    const auto row = t.at(c.n_max);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      ctx.add(c.n_max, grid[j], name, row[j] - t.beta,
              fmt::format("beta={};{}", g(t.beta), mask[j] ? "interior" : "gibbs_band"));
    }
  };
  emit(theta, "theta_star");
  emit(theta2, "theta_star_2beta");
  emit(rho, "rho_star");

  const auto inv = beta_invariance(theta, theta2, mask, shift.recovery_tolerance);
  ctx.say("beta invariance (theta*, beta = {} vs {}, n = {}): max |diff| = {:.3e} over {} interior points, tolerance {} -> {}",
          g(beta), g(2.0 * beta), c.n_max, inv.max_difference, inv.points_compared,
          g(inv.tolerance), inv.passed ? "PASS" : "FAIL");
  double vs_f = 0.0;
  double rho_vs_theta = 0.0;
  const auto rt = theta.at(c.n_max);
  const auto rr = rho.at(c.n_max);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!mask[j]) continue;
    vs_f = std::max(vs_f, std::abs(rt[j] - beta - signal(grid[j])));
    rho_vs_theta = std::max(rho_vs_theta, std::abs(rr[j] - rt[j]));
  }
  ctx.say("max |theta* - beta - f| interior = {:.3e}", vs_f);
  ctx.say("max |rho* - theta*| interior = {:.3e}", rho_vs_theta);
  ctx.say("rho* closed-form discrepancy = {:.3e}", rho.closed_form_discrepancy);
}

void run_demo_grandi(Context& ctx) {
  const auto& c = ctx.config;
  std::vector<double> terms(c.n_max + 1);
  for (std::size_t k = 0; k <= c.n_max; ++k) terms[k] = k % 2 == 0 ? 1.0 : -1.0;
  const auto s = number_series_partials(terms);
  const std::vector<Method> all = {Method::sigma, Method::gamma, Method::theta, Method::rho};
  emit_means(ctx, s, std::nullopt, all, MeansOptions{true});
  summarize_last(ctx, all);
  CertificateOptions opts;
  opts.zero_convention = true;
  const auto cert = certify_theorem5(s, opts);
  ctx.say("certificate: K = {}, M = {}, {} flagged indices (zero convention), verdict {}", g(cert.K),
          g(cert.M), cert.flagged_indices.size(), to_string(cert.verdict));
}

void run_demo_fejer(Context& ctx) {
  const auto& c = ctx.config;
  const std::size_t top = std::min<std::size_t>(c.n_max, 20);
  const auto grid = uniform_grid(c.L, 100);
  double worst = 0.0;
  for (std::size_t n = 0; n <= top; ++n) {
    double err = 0.0;
    for (double x : grid) {
      double mean = 0.0;
      for (std::size_t k = 0; k <= n; ++k) mean += dirichlet_kernel(k, x, c.L);
      mean /= static_cast<double>(n + 1);
      err = std::max(err, std::abs(fejer_kernel(n, x, c.L) - mean));
    }
    worst = std::max(worst, err);
    ctx.add(n, std::nullopt, "kernel_identity_error", err);
    ctx.add(n, 0.0, "fejer", fejer_kernel(n, 0.0, c.L));
    ctx.add(n, 0.0, "dirichlet", dirichlet_kernel(n, 0.0, c.L));
  }
  ctx.say("max |F_n - mean D_k| for n <= {}: {:.3e}", top, worst);

  const auto square = catalog_signal("seismic-square", c.L, 50);
  const double sigma0 = cesaro_via_fejer(square, 50, 0.0, c.quadrature);
  double overshoot = 0.0;
  for (std::size_t i = 1; i <= 400; ++i) {
    const double x = c.L * static_cast<double>(i) / 4000.0;
    overshoot = std::max(overshoot, partial_sum(square, 50, x, SumRoute::coefficients));
  }
  ctx.say("square wave: sigma_50(0) = {:.3e}, max S_50 near the jump = {}", sigma0, g(overshoot));
}

void run_demo_golden(Context& ctx) {
  for (double K : {1.0, 5.0, 100.0}) {
    const double phi = golden_ratio_selfcheck(K);
    ctx.add(static_cast<std::size_t>(K), std::nullopt, "golden", phi, "K");
  }
  const double phi = golden_ratio_selfcheck(1.0);
  ctx.say("theta+/K with K = M: {} (phi^2 - phi - 1 = {:.3e})", g(phi), phi * phi - phi - 1.0);
}

template <typename T>
T json_get(const nlohmann::json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file: bad value for '" + key + "': " + e.what());
  }
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::coeffs: return "coeffs";
    case Command::sums: return "sums";
    case Command::means: return "means";
    case Command::diagnose: return "diagnose";
    case Command::dynamics: return "dynamics";
    case Command::regularize: return "regularize";
    case Command::demo: return "demo";
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::coeffs, Command::sums, Command::means, Command::diagnose,
                    Command::dynamics, Command::regularize, Command::demo}) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("unknown command '" + std::string(name) +
                    "' (valid: coeffs, sums, means, diagnose, dynamics, regularize, demo)");
}

void ExperimentConfig::validate() const {
  if (n_max < 1) throw ConfigError("config: n_max must be at least 1");
  if (grid_points < 16) throw ConfigError("config: grid_points must be at least 16");
  if (methods.empty()) throw ConfigError("config: methods must not be empty");
  if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("config: L must be positive");
  if (!(delta > 0.0)) throw ConfigError("config: delta must be positive");
  if (beta && (*beta == 0.0 || !std::isfinite(*beta))) {
    throw ConfigError("config: beta must be finite and nonzero");
  }
  if (x && !std::isfinite(*x)) throw ConfigError("config: x must be finite");
  quadrature.validate();
  if (command == Command::demo && demo != "grandi" && demo != "fejer" && demo != "golden") {
    throw ConfigError("demo: expected one of grandi, fejer, golden (got '" + demo + "')");
  }
}

std::string ExperimentConfig::experiment_id() const {
  if (!experiment.empty()) return experiment;
  return command == Command::demo ? demo : std::string(to_string(command));
}

void apply_config_file(const std::string& path, ExperimentConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file: " + std::string(e.what()));
  }
  if (!j.is_object()) throw ConfigError("config file: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "signal") config.signal = json_get<std::string>(j, key);
    else if (key == "series") config.series = json_get<std::vector<double>>(j, key);
    else if (key == "L") config.L = json_get<double>(j, key);
    else if (key == "n_max") config.n_max = json_get<std::size_t>(j, key);
    else if (key == "grid_points") config.grid_points = json_get<std::size_t>(j, key);
    else if (key == "x") config.x = json_get<double>(j, key);
    else if (key == "route") {
      const auto r = json_get<std::string>(j, key);
      if (r == "coefficients") config.route = SumRoute::coefficients;
      else if (r == "dirichlet") config.route = SumRoute::dirichlet;
      else throw ConfigError("config file: route must be coefficients or dirichlet");
    } else if (key == "quadrature") {
      for (const auto& [qk, qv] : value.items()) {
        if (qk == "panels") config.quadrature.panels = json_get<int>(value, qk);
        else if (qk == "points_per_panel") config.quadrature.points_per_panel = json_get<int>(value, qk);
        else if (qk == "abs_tol") config.quadrature.abs_tol = json_get<double>(value, qk);
        else throw ConfigError("config file: unknown quadrature key '" + qk + "'");
      }
    } else if (key == "methods") {
      config.methods.clear();
      for (const auto& name : json_get<std::vector<std::string>>(j, key)) {
        config.methods.push_back(parse_method(name));
      }
    } else if (key == "beta") config.beta = json_get<double>(j, key);
    else if (key == "delta") config.delta = json_get<double>(j, key);
    else if (key == "zero_convention") config.zero_convention = json_get<bool>(j, key);
    else if (key == "output_path") config.output_path = json_get<std::string>(j, key);
    else if (key == "plot_path") config.plot_path = json_get<std::string>(j, key);
    else if (key == "experiment") config.experiment = json_get<std::string>(j, key);
    else throw ConfigError("config file: unknown key '" + key + "'");
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  Context ctx{config, config.experiment_id(), {}, {}};
  switch (config.command) {
    case Command::coeffs: run_coeffs(ctx); break;
    case Command::sums: run_sums(ctx); break;
    case Command::means: run_means(ctx); break;
    case Command::diagnose: run_diagnose(ctx); break;
    case Command::dynamics: run_dynamics(ctx); break;
    case Command::regularize: run_regularize(ctx); break;
    case Command::demo:
      if (config.demo == "grandi") run_demo_grandi(ctx);
      else if (config.demo == "fejer") run_demo_fejer(ctx);
      else run_demo_golden(ctx);
      break;
  }
  sort_records(ctx.rows);
  return {std::move(ctx.rows), std::move(ctx.summary)};
}

std::string gnuplot_script(const ExperimentConfig& config, const std::string& csv_path) {
  std::string out = "set datafile separator ','\nset xlabel 'n'\nset ylabel 'value'\n";
  out += fmt::format("set title '{}'\n", config.experiment_id());
  std::vector<std::string> names;
  for (Method m : config.methods) names.emplace_back(to_string(m));
  std::string list;
  for (const auto& n : names) list += (list.empty() ? "" : " ") + n;
  out += fmt::format(
      "plot for [m in \"{}\"] '< awk -F, -v m='.m.' \"\\$4 == m\" {}' using 2:5 with lines title m\n",
      list, csv_path);
  return out;
}

}  // namespace summa::cli
