#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "splab/experiments.hpp"
#include "splab/families.hpp"
#include "splab/moduli.hpp"

namespace splab::app {

inline constexpr const char* kToolVersion = "splab 0.1.0";

// Invalid or inconsistent run configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inclusive exponent range j1..j2 for the dyadic grids.
struct GridRange {
  int j1 = 0;
  int j2 = 0;
};

// "j1..j2"
GridRange parse_range(const std::string& text);

struct FamilyConfig {
  std::string name = "power";
  double q = 0.5;
  std::optional<double> beta;  // defaults from alpha, p and the derivative order
  int d = 1;
  std::int64_t nu0 = 5;
  std::int64_t base = 2;
};

struct ModulusConfig {
  std::string kind = "power";  // power | power_log
  double alpha = 0.5;
  double beta = -1.0;  // power_log only
};

struct RunConfig {
  FamilyConfig family;
  double p = 2.0;
  int r = 1;
  double s = 1.0;
  ModulusConfig omega;
  GridRange rho_grid{1, 14};
  GridRange n_grid{2, 16};
  GridRange h_grid{1, 20};
  std::optional<std::int64_t> cutoff;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  bool svg = false;
  bool strict = false;
  Thresholds thresholds;

  // Throws ConfigError.
  void validate() const;

  // Fill beta and cutoff for the given experiment; the result is what gets
  // echoed into every output.
  RunConfig resolved(const std::string& experiment) const;

  Family make_family() const;
  Modulus make_modulus() const;
  ExperimentGrids grids() const;

  nlohmann::ordered_json to_json() const;
};

// Fields missing from the document keep their defaults.
RunConfig config_from_json(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

}  // namespace splab::app
