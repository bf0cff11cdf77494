#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace summa::cli {

inline constexpr std::string_view kCsvHeader = "experiment,n,x,method,value,aux";
inline constexpr std::string_view kUndefined = "undefined";

/// One output row. An empty `x` marks a number-series row; an empty `value`
/// is written as the token "undefined".
struct CsvRecord {
  std::string experiment;
  std::size_t n = 0;
  std::optional<double> x;
  std::string method;
  std::optional<double> value;
  std::string aux;

  bool operator==(const CsvRecord&) const = default;
};

/// 17 significant digits.
std::string format_real(double v);

std::string to_csv_line(const CsvRecord& r);

/// Inverse of to_csv_line; throws ConfigError on malformed input.
CsvRecord parse_csv_line(std::string_view line);

/// Orders rows by method, then n, then x (number-series rows first).
void sort_records(std::vector<CsvRecord>& records);

/// Header plus sorted rows, LF line endings.
std::string render_csv(std::vector<CsvRecord> records);

}  // namespace summa::cli
