#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "config.hpp"

namespace splab::app {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string report_csv(const RateReport& report) {
  std::string out = "parameter,value_low,value_high,bound,ratio\n";
  for (const auto& pt : report.points) {
    out += format_number(pt.parameter) + "," + format_number(pt.value.lower) + "," +
           format_number(pt.value.upper) + "," + format_number(pt.bound) + "," +
           format_number(pt.ratio) + "\n";
  }
  return out;
}

namespace {

nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

}  // namespace

nlohmann::ordered_json report_json(const std::string& statement, const RateReport& report) {
  nlohmann::ordered_json j;
  j["statement"] = statement;
  j["quantity"] = report.quantity_name;
  j["verdict"] = to_string(report.verdict);
  j["fitted_slope"] = report.fitted_slope ? number(*report.fitted_slope) : nullptr;
  j["ratio_growth"] = number(report.ratio_growth);
  j["asymptote"] = report.asymptote == Asymptote::kZero ? "parameter->0" : "parameter->inf";
  j["thresholds"] = {{"slope_tolerance", report.thresholds.slope_tolerance},
                     {"ratio_band", report.thresholds.ratio_band}};
  j["detail"] = report.detail;
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const auto& pt : report.points) {
    points.push_back({{"parameter", number(pt.parameter)},
                      {"value_low", number(pt.value.lower)},
                      {"value_high", number(pt.value.upper)},
                      {"bound", number(pt.bound)},
                      {"ratio", number(pt.ratio)}});
  }
  j["points"] = points;
  return j;
}

nlohmann::ordered_json implications_json(const std::vector<Implication>& implications) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& i : implications) {
    out.push_back({{"implication", i.name}, {"verdict", to_string(i.verdict)}, {"detail", i.detail}});
  }
  return out;
}

std::string report_svg(const std::string& title, const RateReport& report) {
  constexpr double kW = 640;
  constexpr double kH = 420;
  constexpr double kMargin = 60;
  struct Series {
    const char* label;
    const char* colour;
    std::vector<std::pair<double, double>> pts;
  };
  Series value{"value (upper)", "#1f5fa8", {}};
  Series bound{"bound", "#c0392b", {}};
  for (const auto& pt : report.points) {
    if (pt.parameter > 0 && pt.value.upper > 0 && std::isfinite(pt.value.upper)) {
      value.pts.emplace_back(std::log10(pt.parameter), std::log10(pt.value.upper));
    }
    if (pt.parameter > 0 && pt.bound > 0 && std::isfinite(pt.bound)) {
      bound.pts.emplace_back(std::log10(pt.parameter), std::log10(pt.bound));
    }
  }
  double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
  for (const Series* s : {&value, &bound}) {
    for (const auto& [x, y] : s->pts) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!(x1 > x0)) x0 -= 1, x1 += 1;
  if (!(y1 > y0)) y0 -= 1, y1 += 1;
  auto sx = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * (kW - 2 * kMargin); };
  auto sy = [&](double y) { return kH - kMargin - (y - y0) / (y1 - y0) * (kH - 2 * kMargin); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kH - kMargin << "\" x2=\"" << kW - kMargin
     << "\" y2=\"" << kH - kMargin << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
     << kH - kMargin << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 15
     << "\" text-anchor=\"middle\">log10 parameter</text>\n";
  os << "<text x=\"15\" y=\"" << kH / 2 << "\" transform=\"rotate(-90 15 " << kH / 2
     << ")\" text-anchor=\"middle\">log10 value</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = x0 + (x1 - x0) * i / 4;
    const double y = y0 + (y1 - y0) * i / 4;
    os << "<text x=\"" << sx(x) << "\" y=\"" << kH - kMargin + 15 << "\" text-anchor=\"middle\">"
       << format_number(std::round(x * 100) / 100) << "</text>\n";
    os << "<text x=\"" << kMargin - 5 << "\" y=\"" << sy(y) << "\" text-anchor=\"end\">"
       << format_number(std::round(y * 100) / 100) << "</text>\n";
  }
  int legend = 0;
  for (const Series* s : {&value, &bound}) {
    if (s->pts.empty()) continue;
    os << "<polyline fill=\"none\" stroke=\"" << s->colour << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : s->pts) os << sx(x) << "," << sy(y) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << kW - kMargin - 100 << "\" y=\"" << kMargin + 15 * legend++
       << "\" fill=\"" << s->colour << "\">" << s->label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path);
  out << content;
  if (!out) throw ConfigError("write failed for " + path);
}

}  // namespace splab::app
