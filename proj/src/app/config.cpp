#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>

namespace splab::app {

GridRange parse_range(const std::string& text) {
  static const std::regex pattern(R"(\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw ConfigError("grid range must look like j1..j2, got '" + text + "'");
  }
  GridRange g{std::stoi(m[1]), std::stoi(m[2])};
  if (g.j1 > g.j2) throw ConfigError("grid range " + text + " is empty");
  return g;
}

void RunConfig::validate() const {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("p must be a finite number >= 1");
  if (r < 1) throw ConfigError("r must be >= 1");
  if (!(s >= 1.0)) throw ConfigError("s must be >= 1");
  if (family.d < 1 || family.d > 4) throw ConfigError("d must lie in 1..4");
  if (rho_grid.j1 < 1 || rho_grid.j2 > 50) throw ConfigError("rho grid exponents must lie in 1..50");
  if (n_grid.j1 < 0 || n_grid.j2 > 40) throw ConfigError("n grid exponents must lie in 0..40");
  if (h_grid.j1 < 0 || h_grid.j2 > 60) throw ConfigError("h grid exponents must lie in 0..60");
  if (rho_grid.j2 - rho_grid.j1 < 3 || n_grid.j2 - n_grid.j1 < 3 || h_grid.j2 - h_grid.j1 < 3) {
    throw ConfigError("every grid needs at least 4 points");
  }
  if (cutoff && *cutoff < 0) throw ConfigError("cutoff must be >= 0");
  if (!(thresholds.slope_tolerance >= 0.0) || !(thresholds.ratio_band > 0.0)) {
    throw ConfigError("thresholds must be nonnegative");
  }
  static const char* names[] = {"geometric", "power", "y_power", "single_block", "lacunary"};
  if (std::find(std::begin(names), std::end(names), family.name) == std::end(names)) {
    throw ConfigError("unknown family '" + family.name + "'");
  }
  if (omega.kind != "power" && omega.kind != "power_log") {
    throw ConfigError("unknown modulus kind '" + omega.kind + "'");
  }
  try {
    (void)make_modulus();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

RunConfig RunConfig::resolved(const std::string& experiment) const {
  validate();
  RunConfig out = *this;
  if (!out.family.beta) {
    double order = 1.0;
    if (experiment == "thm1") order = r;
    if (experiment == "thm2" || experiment == "equiv7") order = s;
    out.family.beta = omega.alpha + 1.0 / p + (order - 1.0);
  }
  const Family f = out.make_family();
  if (!out.cutoff) out.cutoff = f.default_cutoff(p);
  return out;
}

Family RunConfig::make_family() const {
  try {
    const double beta = family.beta.value_or(omega.alpha + 1.0 / p);
    Family f = [&] {
      if (family.name == "geometric") return Family::geometric(family.q, family.d);
      if (family.name == "power") return Family::power(beta, family.d);
      if (family.name == "y_power") return Family::y_power(beta, family.d);
      if (family.name == "single_block") return Family::single_block(family.nu0, family.d);
      if (family.name == "lacunary") return Family::lacunary(family.base, family.d);
      throw ConfigError("unknown family '" + family.name + "'");
    }();
    f.check_exponent(p);
    return f;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

Modulus RunConfig::make_modulus() const {
  if (omega.kind == "power_log") return Modulus::power_log(omega.alpha, omega.beta);
  return Modulus::power(omega.alpha);
}

ExperimentGrids RunConfig::grids() const {
  return {dyadic_rho_grid(rho_grid.j1, rho_grid.j2), dyadic_n_grid(n_grid.j1, n_grid.j2),
          dyadic_h_grid(h_grid.j1, h_grid.j2)};
}

namespace {

std::string range_text(const GridRange& g) {
  return std::to_string(g.j1) + ".." + std::to_string(g.j2);
}

}  // namespace

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json fam;
  fam["name"] = family.name;
  fam["d"] = family.d;
  if (family.name == "geometric") fam["q"] = family.q;
  if (family.name == "power" || family.name == "y_power") {
    fam["beta"] = family.beta ? nlohmann::ordered_json(*family.beta) : nullptr;
  }
  if (family.name == "single_block") fam["nu0"] = family.nu0;
  if (family.name == "lacunary") fam["base"] = family.base;

  nlohmann::ordered_json om;
  om["kind"] = omega.kind;
  om["alpha"] = omega.alpha;
  if (omega.kind == "power_log") om["beta"] = omega.beta;

  nlohmann::ordered_json j;
  j["family"] = fam;
  j["p"] = p;
  j["r"] = r;
  j["s"] = s;
  j["omega"] = om;
  j["rho_grid"] = range_text(rho_grid);
  j["n_grid"] = range_text(n_grid);
  j["h_grid"] = range_text(h_grid);
  j["cutoff"] = cutoff ? nlohmann::ordered_json(*cutoff) : nullptr;
  j["seed"] = seed ? nlohmann::ordered_json(*seed) : nullptr;
  j["thresholds"] = {{"slope_tolerance", thresholds.slope_tolerance},
                     {"ratio_band", thresholds.ratio_band}};
  return j;
}

RunConfig config_from_json(const nlohmann::json& doc) {
  RunConfig c;
  try {
    if (doc.contains("family")) {
      const auto& f = doc.at("family");
      c.family.name = f.value("name", c.family.name);
      c.family.q = f.value("q", c.family.q);
      if (f.contains("beta") && !f.at("beta").is_null()) c.family.beta = f.at("beta").get<double>();
      c.family.d = f.value("d", c.family.d);
      c.family.nu0 = f.value("nu0", c.family.nu0);
      c.family.base = f.value("base", c.family.base);
    }
    c.p = doc.value("p", c.p);
    c.r = doc.value("r", c.r);
    c.s = doc.value("s", c.s);
    if (doc.contains("omega")) {
      const auto& o = doc.at("omega");
      c.omega.kind = o.value("kind", c.omega.kind);
      c.omega.alpha = o.value("alpha", c.omega.alpha);
      c.omega.beta = o.value("beta", c.omega.beta);
    }
    if (doc.contains("rho_grid")) c.rho_grid = parse_range(doc.at("rho_grid").get<std::string>());
    if (doc.contains("n_grid")) c.n_grid = parse_range(doc.at("n_grid").get<std::string>());
    if (doc.contains("h_grid")) c.h_grid = parse_range(doc.at("h_grid").get<std::string>());
    if (doc.contains("cutoff") && !doc.at("cutoff").is_null()) {
      c.cutoff = doc.at("cutoff").get<std::int64_t>();
    }
    if (doc.contains("seed") && !doc.at("seed").is_null()) c.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("thresholds")) {
      const auto& t = doc.at("thresholds");
      c.thresholds.slope_tolerance = t.value("slope_tolerance", c.thresholds.slope_tolerance);
      c.thresholds.ratio_band = t.value("ratio_band", c.thresholds.ratio_band);
    }
    c.out_dir = doc.value("out", c.out_dir);
    c.svg = doc.value("svg", c.svg);
    c.strict = doc.value("strict", c.strict);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  try {
    return config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
}

}  // namespace splab::app
