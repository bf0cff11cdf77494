#include "summa/cli/app.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "summa/cli/experiment.hpp"
#include "summa/error.hpp"

namespace summa::cli {
namespace {

std::vector<double> parse_terms(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--series: not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("--series: empty term list");
  return out;
}

std::vector<Method> parse_methods(const std::string& text) {
  std::vector<Method> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_method(item));
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear and nonlinear summability of Fourier and number series", "summa"};
  std::string command;
  std::string demo;
  std::string config_path;
  std::optional<std::string> signal, series, methods, route, output, plot, experiment;
  std::optional<double> L, x, beta, delta, abs_tol;
  std::optional<std::size_t> n_max, grid_points;
  std::optional<int> panels, points;
  bool zero_convention = false;

  app.add_option("command", command,
                 "coeffs | sums | means | diagnose | dynamics | regularize | demo")
      ->required();
  app.add_option("demo", demo, "demo name: grandi | fejer | golden");
  app.add_option("--config", config_path, "JSON config file; flags override its keys");
  app.add_option("--signal", signal, "catalog signal, e.g. constant:3, random-coeffs:seed=7,K=8");
  app.add_option("--series", series, "comma-separated number-series terms");
  app.add_option("--L", L, "half period");
  app.add_option("--n-max", n_max, "largest index");
  app.add_option("--grid-points", grid_points, "uniform grid size");
  app.add_option("--x", x, "single evaluation point");
  app.add_option("--route", route, "coefficients | dirichlet");
  app.add_option("--panels", panels, "quadrature panels");
  app.add_option("--points-per-panel", points, "Gauss-Legendre points per panel");
  app.add_option("--abs-tol", abs_tol, "quadrature tolerance");
  app.add_option("--methods", methods, "subset of sigma,gamma,theta,rho");
  app.add_option("--beta", beta, "regularization shift");
  app.add_option("--delta", delta, "contraction onset threshold");
  app.add_flag("--zero-convention", zero_convention, "gamma and theta are 0 after a zero sum");
  app.add_option("--output,-o", output, "CSV path, '-' for standard output");
  app.add_option("--plot", plot, "write a gnuplot script");
  app.add_option("--experiment", experiment, "experiment id column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    ExperimentConfig config;
    config.command = parse_command(command);
    config.demo = demo;
    if (!config_path.empty()) apply_config_file(config_path, config);
    if (signal) config.signal = *signal;
    if (series) config.series = parse_terms(*series);
    if (L) config.L = *L;
    if (n_max) config.n_max = *n_max;
    if (grid_points) config.grid_points = *grid_points;
    if (x) config.x = *x;
    if (route) {
      if (*route == "coefficients") config.route = SumRoute::coefficients;
      else if (*route == "dirichlet") config.route = SumRoute::dirichlet;
      else throw ConfigError("--route must be coefficients or dirichlet");
    }
    if (panels) config.quadrature.panels = *panels;
    if (points) config.quadrature.points_per_panel = *points;
    if (abs_tol) config.quadrature.abs_tol = *abs_tol;
    if (methods) config.methods = parse_methods(*methods);
    if (beta) config.beta = *beta;
    if (delta) config.delta = *delta;
    if (zero_convention) config.zero_convention = true;
    if (output) config.output_path = *output;
    if (plot) config.plot_path = *plot;
    if (experiment) config.experiment = *experiment;

    const auto result = run_experiment(config);
    const auto csv = render_csv(result.records);
    const auto path = config.output_path.empty() ? config.experiment_id() + ".csv" : config.output_path;
    std::ostream& summary = path == "-" ? err : out;
    if (path == "-") {
      out << csv;
    } else {
      write_file(path, csv);
      summary << "wrote " << result.records.size() << " rows to " << path << '\n';
    }
    if (!config.plot_path.empty()) {
      write_file(config.plot_path, gnuplot_script(config, path));
    }
    for (const auto& line : result.summary) summary << line << '\n';
    return 0;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace summa::cli
