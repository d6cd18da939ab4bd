#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "splab/numeric.hpp"
#include "splab/spectrum.hpp"
#include "splab/verdict.hpp"

namespace splab {

// Modulus of continuity omega on [0, 1].
//   power(alpha):          t^alpha,                       alpha in (0, 1]
//   power_log(alpha, beta): t^alpha (1 - log t)^beta,      alpha in [0, 1], beta <= alpha,
//                                                          and beta < 0 when alpha = 0
//   custom(f):             any evaluator, checked only empirically
class Modulus {
 public:
  enum class Kind { kPower, kPowerLog, kCustom };

  static Modulus power(double alpha);
  static Modulus power_log(double alpha, double beta);
  static Modulus custom(std::function<double(double)> evaluator, std::string name);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  const std::string& name() const { return name_; }

  // Throws EvaluationError on a negative or non-finite value.
  double operator()(double t) const;

 private:
  Modulus(Kind kind, double alpha, double beta, std::function<double(double)> f, std::string name)
      : kind_(kind), alpha_(alpha), beta_(beta), f_(std::move(f)), name_(std::move(name)) {}

  Kind kind_;
  double alpha_;
  double beta_;
  std::function<double(double)> f_;
  std::string name_;
};

struct ConditionReport {
  std::string condition;
  std::vector<double> grid;
  // Per grid point: the measured quantity, its majorant and their ratio.
  std::vector<Interval> values;
  std::vector<double> bounds;
  std::vector<double> ratios;
  double worst_ratio = 0.0;
  double threshold = 0.0;
  Verdict verdict = Verdict::kInconclusive;
  std::string detail;
};

// Basic conditions: continuity, monotonicity, positivity, omega(t) -> 0.
// Positivity and monotonicity are exact on the probe grid (uniform i/G plus
// 2^-j); continuity and the limit are heuristic and may yield
// "inconclusive" for custom moduli. worst_ratio is the largest decrease
// between neighbouring probes relative to omega(1).
ConditionReport check_basic_conditions(const Modulus& omega, int grid_size = 1024);

// R(n) = sum_{v > n} omega(1/v)/v / omega(1/n), summed over n < v <= n + tail_terms
// plus an estimate of the remainder (closed form for power, quadrature in
// log variables otherwise). Pass when the fitted log-log growth of R over
// the grid is within the slope tolerance.
ConditionReport check_condition_B(const Modulus& omega, const std::vector<std::int64_t>& n_grid,
                                  std::int64_t tail_terms = 10'000,
                                  const Thresholds& thresholds = {});

// Q(h) = ||f - f_h||.upper / omega(h) over a grid decreasing to 0; the sine
// form is used for Y-supported spectra.
ConditionReport estimate_class_membership(const Spectrum& f, const Modulus& omega, double p,
                                          const std::vector<double>& h_grid,
                                          const Thresholds& thresholds = {});
// Profile variant; requires a Y-supported or one-dimensional profile.
ConditionReport estimate_class_membership(const BlockProfile& a, const Modulus& omega,
                                          const std::vector<double>& h_grid,
                                          const Thresholds& thresholds = {});

// {2^-j : j = j1..j2} and {2^j : j = j1..j2}.
std::vector<double> dyadic_h_grid(int j1 = 1, int j2 = 20);
std::vector<std::int64_t> dyadic_n_grid(int j1 = 2, int j2 = 16);

}  // namespace splab
