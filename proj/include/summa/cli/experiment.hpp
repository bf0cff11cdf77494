#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "summa/cli/csv.hpp"
#include "summa/means.hpp"
#include "summa/quadrature.hpp"
#include "summa/series_core.hpp"

namespace summa::cli {

enum class Command { coeffs, sums, means, diagnose, dynamics, regularize, demo };

std::string_view to_string(Command c) noexcept;
Command parse_command(std::string_view name);

struct ExperimentConfig {
  Command command = Command::means;
  std::string demo;        // grandi | fejer | golden
  std::string experiment;  // row id; the command (or demo) name when empty
  std::string signal = "offset-square";
  /// Terms of a number series; when nonempty they replace the signal.
  std::vector<double> series;
  double L = std::numbers::pi;
  std::size_t n_max = 50;
  std::size_t grid_points = 256;
  /// Single evaluation point; the uniform grid is used when absent.
  std::optional<double> x;
  SumRoute route = SumRoute::coefficients;
  QuadratureConfig quadrature;
  std::vector<Method> methods = {Method::sigma};
  std::optional<double> beta;
  double delta = 1e-3;
  bool zero_convention = false;
  /// CSV destination; "<experiment>.csv" when empty, standard output for "-".
  std::string output_path;
  /// Optional gnuplot script plotting the CSV.
  std::string plot_path;

  /// Throws ConfigError on n_max < 1, grid_points < 16, empty methods and the like.
  void validate() const;
  std::string experiment_id() const;
};

/// Overlays keys from a JSON object file onto `config`. Keys: signal, series,
/// L, n_max, grid_points, x, route, quadrature {panels, points_per_panel,
/// abs_tol}, methods, beta, delta, zero_convention, output_path, plot_path,
/// experiment. Unknown keys throw ConfigError.
void apply_config_file(const std::string& path, ExperimentConfig& config);

struct ExperimentResult {
  std::vector<CsvRecord> records;
  std::vector<std::string> summary;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// A gnuplot script drawing value against n per method from `csv_path`.
std::string gnuplot_script(const ExperimentConfig& config, const std::string& csv_path);

}  // namespace summa::cli
