#include "ighit/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ighit/errors.hpp"

namespace ighit {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

Table path_table(const SamplePath& path) {
  Table t{{"t", "value"}, {}};
  for (std::size_t i = 0; i < path.size(); ++i) t.rows.push_back({path.times[i], path.values[i]});
  return t;
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move output into place at " + path.string());
  }
}

namespace {

// nlohmann writes non-finite doubles as null; keep them readable instead.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

nlohmann::json numbers(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

}  // namespace

nlohmann::json to_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) rows.push_back(numbers(r));
  return {{"columns", table.columns}, {"rows", rows}};
}

nlohmann::json to_json(const NumericSpec& spec) {
  return {{"abs_tol", spec.abs_tol},
          {"rel_tol", spec.rel_tol},
          {"max_subdivisions", spec.max_subdivisions},
          {"truncation_eps", spec.truncation_eps},
          {"ilt_terms", spec.ilt_terms},
          {"ilt_method", std::string(to_string(spec.ilt_method))},
          {"ilt_tol", spec.ilt_tol}};
}

nlohmann::json to_json(const ResidualReport& report) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : report.levels) {
    levels.push_back({{"step_x", l.step_x},
                      {"step_t", l.step_t},
                      {"max_abs", number(l.max_abs)},
                      {"rms", number(l.rms)},
                      {"scale", number(l.scale)},
                      {"residuals", numbers(l.residuals)}});
  }
  return {{"equation", report.equation},
          {"x", numbers(report.x)},
          {"t", numbers(report.t)},
          {"levels", levels},
          {"refinement_ratio", number(report.refinement_ratio)},
          {"observed_order", number(report.observed_order)},
          {"relative_residual", number(report.relative_residual())}};
}

nlohmann::json to_json(const TailBoundReport& r) {
  return {{"t", r.t},
          {"x", numbers(r.x_grid)},
          {"survival", numbers(r.survival)},
          {"log_survival", numbers(r.log_survival)},
          {"bound", numbers(r.bound_values)},
          {"ratio", numbers(r.ratio)},
          {"fitted_constant", number(r.fitted_constant)},
          {"fitted_rate", number(r.fitted_gaussian_rate)},
          {"rate_power", r.rate_power},
          {"claimed_rate", r.claimed_rate},
          {"bounded", r.bounded}};
}

nlohmann::json to_json(const MCEstimate& e) {
  return {{"value", number(e.value)},
          {"std_error", number(e.std_error)},
          {"n_samples", e.n_samples},
          {"seed", e.seed}};
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

Table residual_table(const ResidualReport& report) {
  Table t{{"x", "t"}, {}};
  for (std::size_t l = 0; l < report.levels.size(); ++l) t.columns.push_back("residual_level_" + std::to_string(l));
  const std::size_t nt = report.t.size();
  for (std::size_t k = 0; k < report.x.size() * nt; ++k) {
    std::vector<double> row{report.x[k / nt], report.t[k % nt]};
    for (const auto& l : report.levels) row.push_back(l.residuals[k]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string svg_plot(const std::vector<SvgSeries>& series, std::string_view title, std::string_view x_label,
                     std::string_view y_label) {
  constexpr double width = 640.0;
  constexpr double height = 400.0;
  constexpr double margin = 50.0;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (double v : s.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
    for (double v : s.y) y0 = std::min(y0, v), y1 = std::max(y1, v);
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  const auto px = [&](double v) { return margin + (v - x0) / (x1 - x0) * (width - 2 * margin); };
  const auto py = [&](double v) { return height - margin - (v - y0) / (y1 - y0) * (height - 2 * margin); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << x_label << "</text>\n";
  out << "<text x=\"15\" y=\"" << height / 2 << "\" font-size=\"12\" transform=\"rotate(-90 15 " << height / 2
      << ")\">" << y_label << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    out << "<polyline fill=\"none\" stroke=\"" << colors[k % 4] << "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.staircase && i > 0) out << px(s.x[i]) << ',' << py(s.y[i - 1]) << ' ';
      out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << width - margin - 100 << "\" y=\"" << margin + 15 * static_cast<double>(k)
        << "\" font-size=\"12\" fill=\"" << colors[k % 4] << "\">" << s.name << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace ighit
