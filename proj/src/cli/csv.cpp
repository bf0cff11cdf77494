#include "summa/cli/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <tuple>

#include <fmt/format.h>

#include "summa/error.hpp"

namespace summa::cli {
namespace {

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw ConfigError("csv: unterminated quoted field");
  return fields;
}

double parse_real(const std::string& text, std::string_view column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(fmt::format("csv: bad {} '{}'", column, text));
  }
  return v;
}

}  // namespace

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

std::string to_csv_line(const CsvRecord& r) {
  return fmt::format("{},{},{},{},{},{}", quote(r.experiment), r.n,
                     r.x ? format_real(*r.x) : std::string(), quote(r.method),
                     r.value ? format_real(*r.value) : std::string(kUndefined), quote(r.aux));
}

CsvRecord parse_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  const auto fields = split_fields(line);
  if (fields.size() != 6) {
    throw ConfigError(fmt::format("csv: expected 6 fields, found {}", fields.size()));
  }
  CsvRecord r;
  r.experiment = fields[0];
  const auto& n = fields[1];
  const auto [ptr, ec] = std::from_chars(n.data(), n.data() + n.size(), r.n);
  if (n.empty() || ec != std::errc() || ptr != n.data() + n.size()) {
    throw ConfigError("csv: bad n '" + n + "'");
  }
  if (!fields[2].empty()) r.x = parse_real(fields[2], "x");
  r.method = fields[3];
  if (fields[4] != kUndefined) r.value = parse_real(fields[4], "value");
  r.aux = fields[5];
  return r;
}

void sort_records(std::vector<CsvRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const CsvRecord& a, const CsvRecord& b) {
    return std::tuple(a.method, a.n, a.x.has_value(), a.x.value_or(0.0)) <
           std::tuple(b.method, b.n, b.x.has_value(), b.x.value_or(0.0));
  });
}

std::string render_csv(std::vector<CsvRecord> records) {
  sort_records(records);
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += to_csv_line(r);
    out += '\n';
  }
  return out;
}

}  // namespace summa::cli
