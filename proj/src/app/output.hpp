#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "splab/experiments.hpp"

namespace splab::app {

// Round-trip formatting (%.17g); "inf" and "nan" spelled out.
std::string format_number(double x);

// Header `parameter,value_low,value_high,bound,ratio` and one row per point.
std::string report_csv(const RateReport& report);

nlohmann::ordered_json report_json(const std::string& statement, const RateReport& report);
nlohmann::ordered_json implications_json(const std::vector<Implication>& implications);

// Log-log plot of value.upper and bound against the parameter.
std::string report_svg(const std::string& title, const RateReport& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace splab::app
