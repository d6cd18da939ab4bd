#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "splab/moduli.hpp"
#include "splab/numeric.hpp"
#include "splab/spectrum.hpp"
#include "splab/verdict.hpp"

namespace splab {

struct RatePoint {
  double parameter = 0.0;
  Interval value;
  double bound = 0.0;
  double ratio = 0.0;  // value.upper / bound
};

struct RateReport {
  std::string quantity_name;
  std::vector<RatePoint> points;
  // Least-squares slope of log(value.upper) against log(parameter).
  std::optional<double> fitted_slope;
  // Fitted growth of the ratios toward the asymptote.
  double ratio_growth = 0.0;
  Asymptote asymptote = Asymptote::kZero;
  Thresholds thresholds;
  Verdict verdict = Verdict::kInconclusive;
  std::string detail;
};

// Ratios value.upper / bound(parameter) and their trend. Needs >= 4 points
// and a positive bound on the grid.
RateReport big_O_ratio_test(std::string quantity_name,
                            const std::vector<std::pair<double, Interval>>& values,
                            const std::function<double(double)>& bound, Asymptote asymptote,
                            const Thresholds& thresholds = {});

struct Implication {
  std::string name;
  Verdict verdict = Verdict::kInconclusive;
  std::string detail;
};

struct StatementReport {
  std::string statement;
  RateReport report;
};

struct TheoremOutcome {
  std::string experiment;
  std::vector<StatementReport> reports;  // statements 1, 2, 3 in order
  std::vector<Implication> implications;
  bool y_supported = false;

  // Pass iff every statement and every implication passes.
  Verdict overall() const;
  const RateReport& report(const std::string& statement) const;
};

struct ExperimentGrids {
  std::vector<double> rho;         // increasing to 1
  std::vector<std::int64_t> n;     // increasing
  std::vector<double> h;           // decreasing to 0
};

// rho_j = 1 - 2^-j, j = 1..14; n_j = 2^j, j = 2..16; h_j = 2^-j, j = 1..20.
ExperimentGrids default_grids();
std::vector<double> dyadic_rho_grid(int j1, int j2);

// Throws PreconditionError unless omega passes the basic conditions and B.
void require_admissible(const Modulus& omega);

// A(n) = ||S_n(f_[1])||, B(n) = ||f - sigma_n(f)||, statement 3 via membership.
TheoremOutcome proposition1_experiment(const Spectrum& f, double p, const Modulus& omega,
                                       const ExperimentGrids& grids = default_grids(),
                                       const Thresholds& thresholds = {});
TheoremOutcome proposition1_experiment(const BlockProfile& a, const Modulus& omega,
                                       const ExperimentGrids& grids = default_grids(),
                                       const Thresholds& thresholds = {});

// E(rho) = ||f - A_{rho,r}(f)|| against (1-rho)^(r-1) omega(1-rho);
// D(rho) = ||P(f_[r])(rho, .)|| against omega(1-rho)/(1-rho);
// statement 3: f_[r-1] in S^p H_omega.
TheoremOutcome theorem1_experiment(const Spectrum& f, double p, int r, const Modulus& omega,
                                   const ExperimentGrids& grids = default_grids(),
                                   const Thresholds& thresholds = {});
TheoremOutcome theorem1_experiment(const BlockProfile& a, int r, const Modulus& omega,
                                   const ExperimentGrids& grids = default_grids(),
                                   const Thresholds& thresholds = {});

// As theorem 1 with P_{rho,s} and the radial derivatives f^(s), f^(s-1).
TheoremOutcome theorem2_experiment(const Spectrum& f, double p, double s, const Modulus& omega,
                                   const ExperimentGrids& grids = default_grids(),
                                   const Thresholds& thresholds = {});
TheoremOutcome theorem2_experiment(const BlockProfile& a, double s, const Modulus& omega,
                                   const ExperimentGrids& grids = default_grids(),
                                   const Thresholds& thresholds = {});

// ||f - P_{rho,s}(f)||^p / ||f^(s-1) - P_{rho,1}(f^(s-1))||^p over the rho
// grid. Pass when the last three ratios lie within 1 +- ratio_band and the
// distance to 1 does not grow over them.
RateReport equivalence7_experiment(const BlockProfile& a, double s,
                                   const std::vector<double>& rho_grid,
                                   const Thresholds& thresholds = {});
RateReport equivalence7_experiment(const Spectrum& f, double p, double s,
                                   const std::vector<double>& rho_grid,
                                   const Thresholds& thresholds = {});

// Right side of the summation-by-parts bound on the Fejer error,
//   p sum_{n <= v <= N} v^-(p+1) ||S_v(f_[1])||^p + N^-p sum_{k<=N} (k a_k)^p
//   + sum_{v > N} a_v^p,
// with N the profile cutoff; the last sum uses the certified tail. Compare
// with approximation_error(fejer(n), a).upper^p.
double fejer_summation_by_parts_bound(const BlockProfile& a, std::int64_t n);

}  // namespace splab
