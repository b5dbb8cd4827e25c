#include "dftlab/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace dftlab {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_field(cells[i]);
    }
    out += '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return out;
}

nlohmann::ordered_json bound_report_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["premises_hold"] = r.premises_hold;
  j["premise_detail"] = r.premise_detail;
  j["verdict"] = r.verdict;
  j["bound_value"] = r.bound_value;
  j["bounds_quantity"] = r.quantity == BoundQuantity::norm ? "norm" : "norm_squared";
  if (r.failure_probability)
    j["failure_probability"] = *r.failure_probability;
  else
    j["failure_probability"] = nullptr;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [name, value] : r.parameters) params[name] = value;
  j["parameters"] = params;
  j["conjectural"] = r.conjectural;
  return j;
}

namespace {

constexpr double kWidth = 800.0, kHeight = 520.0;
constexpr double kLeft = 70.0, kRight = 30.0, kTop = 50.0, kBottom = 60.0;

const char* series_color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_line_svg(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<PlotSeries>& series) {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool any = false;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!any) {
        x_min = x_max = x;
        y_min = y_max = y;
        any = true;
      }
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;
  // A little headroom so markers at the extremes stay inside the frame.
  const double x_pad = 0.03 * (x_max - x_min), y_pad = 0.06 * (y_max - y_min);
  x_min -= x_pad; x_max += x_pad;
  y_min -= y_pad; y_max += y_pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_double(kWidth) +
         "\" height=\"" + format_double(kHeight) + "\" viewBox=\"0 0 " +
         format_double(kWidth) + " " + format_double(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + format_double(kWidth / 2) +
         "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         xml_escape(title) + "</text>\n";

  // Frame and ticks (5 per axis).
  svg += "<rect x=\"" + format_double(kLeft) + "\" y=\"" + format_double(kTop) +
         "\" width=\"" + format_double(plot_w) + "\" height=\"" + format_double(plot_h) +
         "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = x_min + (x_max - x_min) * i / 5.0;
    const double fy = y_min + (y_max - y_min) * i / 5.0;
    svg += "<line x1=\"" + format_double(px(fx)) + "\" y1=\"" + format_double(kTop + plot_h) +
           "\" x2=\"" + format_double(px(fx)) + "\" y2=\"" +
           format_double(kTop + plot_h + 5) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + format_double(px(fx)) + "\" y=\"" +
           format_double(kTop + plot_h + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           format_double(std::round(fx * 1e4) / 1e4) + "</text>\n";
    svg += "<line x1=\"" + format_double(kLeft - 5) + "\" y1=\"" + format_double(py(fy)) +
           "\" x2=\"" + format_double(kLeft) + "\" y2=\"" + format_double(py(fy)) +
           "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + format_double(kLeft - 9) + "\" y=\"" +
           format_double(py(fy) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           format_double(std::round(fy * 1e4) / 1e4) + "</text>\n";
  }
  svg += "<text x=\"" + format_double(kLeft + plot_w / 2) + "\" y=\"" +
         format_double(kHeight - 14) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         xml_escape(x_label) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + format_double(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
         format_double(kTop + plot_h / 2) + ")\">" + xml_escape(y_label) + "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = series_color(si);
    if (s.points.size() > 1) {
      std::string path = "<polyline fill=\"none\" stroke=\"";
      path += color;
      path += "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points)
        path += format_double(px(x)) + "," + format_double(py(y)) + " ";
      path += "\"/>\n";
      svg += path;
    }
    for (const auto& [x, y] : s.points)
      svg += "<circle cx=\"" + format_double(px(x)) + "\" cy=\"" + format_double(py(y)) +
             "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
    // Legend entry.
    const double ly = kTop + 14 + 16 * static_cast<double>(si);
    svg += "<line x1=\"" + format_double(kLeft + plot_w - 150) + "\" y1=\"" +
           format_double(ly - 4) + "\" x2=\"" + format_double(kLeft + plot_w - 130) +
           "\" y2=\"" + format_double(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + format_double(kLeft + plot_w - 124) + "\" y=\"" +
           format_double(ly) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
           xml_escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace dftlab
