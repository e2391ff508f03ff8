#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ighit/inverse_process.hpp"
#include "ighit/montecarlo.hpp"
#include "ighit/numeric_spec.hpp"
#include "ighit/pde_residuals.hpp"
#include "ighit/subordinators.hpp"

namespace ighit {

/// 17 significant digits, '.' radix, independent of the locale.
std::string format_double(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Header row then one line per row, LF endings.
std::string to_csv(const Table& table);
Table path_table(const SamplePath& path);

/// Writes through a sibling temporary file and renames it into place.
void atomic_write(const std::filesystem::path& path, std::string_view content);

nlohmann::json to_json(const Table& table);
nlohmann::json to_json(const NumericSpec& spec);
nlohmann::json to_json(const ResidualReport& report);
nlohmann::json to_json(const TailBoundReport& report);
nlohmann::json to_json(const MCEstimate& estimate);
/// Two-space indented with a trailing newline.
std::string dump_json(const nlohmann::json& j);

Table residual_table(const ResidualReport& report);

struct SvgSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  /// Draw as a right-continuous step function.
  bool staircase = false;
};

std::string svg_plot(const std::vector<SvgSeries>& series, std::string_view title, std::string_view x_label,
                     std::string_view y_label);

}  // namespace ighit
