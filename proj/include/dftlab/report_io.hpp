#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dftlab/bounds.hpp"

namespace dftlab {

/// 12 significant digits ("%.12g"), the precision of every float the project
/// writes; enough to round-trip the interesting structure, stable across
/// platforms with IEEE doubles.
std::string format_double(double v);

/// RFC-4180-style quoting: the field is wrapped in double quotes when it
/// contains a comma, quote, or newline, with embedded quotes doubled.
std::string csv_field(const std::string& raw);

/// Header plus rows, comma-separated, "\n" line endings (trailing newline
/// included).
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

/// Stable serialization: name, premises_hold, premise_detail, verdict,
/// bound_value, bounds_quantity ("norm" | "norm_squared"),
/// failure_probability (null when absent), parameters (insertion order),
/// conjectural.
nlohmann::ordered_json bound_report_json(const BoundReport& r);

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Minimal self-contained line plot: axes, ticks, legend, one polyline plus
/// point markers per series.  Output is deterministic for identical input.
std::string render_line_svg(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<PlotSeries>& series);

}  // namespace dftlab
