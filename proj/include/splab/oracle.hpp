#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "splab/spectrum.hpp"
#include "splab/summation.hpp"

// Brute-force reference computations. Plain loops and direct formulas only,
// so that they share no numerical machinery with the main library.
namespace splab::oracle {

struct OracleConfig {
  std::int64_t max_cutoff = 10'000;             // spectra
  std::int64_t max_profile_cutoff = 1'000'000;  // one-dimensional profiles
  double fd_step = 1e-4;
  double tolerance = 1e-12;

  void validate() const;
};

// ||f - method(f)||_{S^p} by building method(f) coefficientwise from the
// oracle's own multipliers and subtracting, in long double. f must be exact.
double naive_error(const SummationMethod& method, const Spectrum& f, double p,
                   const OracleConfig& config = {});

// The oracle's own block multiplier.
double naive_multiplier(const SummationMethod& method, std::int64_t nu);

// r-th central difference in rho of rho -> a_nu rho^nu for each stored
// block, recombined into an S^p norm. Second order in the step.
double fd_radial_derivative(const BlockProfile& a, int r, double rho, double step,
                            const OracleConfig& config = {});

struct SeriesValue {
  double value = 0.0;
  double error_bound = 0.0;  // |value - true sum| <= error_bound
  std::string tail_estimate;
};

// Named reference series; see series_registry() for names and parameters.
SeriesValue series_reference(const std::string& name, const std::map<std::string, double>& params);

struct SeriesEntry {
  std::string name;
  std::string formula;
  std::vector<std::string> parameters;
  std::string tail_estimate;
};
std::vector<SeriesEntry> series_registry();

// Random inputs for agreement suites. Spectra are exact, of order <= max_order,
// with roughly half of each block populated by complex coefficients.
Spectrum random_exact_spectrum(std::mt19937_64& rng, int d, std::int64_t max_order);
// Exact profile a_0..a_{length-1}, entries in [0, 1) times a decaying envelope.
BlockProfile random_profile(std::mt19937_64& rng, std::int64_t length, double p);

}  // namespace splab::oracle
