#pragma once

#include <span>
#include <string>

namespace splab {

enum class Verdict { kPass, kFail, kInconclusive };

std::string to_string(Verdict v);

// Direction in which the parameter approaches the asymptotic regime.
enum class Asymptote { kZero, kInfinity };

struct Thresholds {
  // Largest tolerated log-log growth of a ratio toward the asymptote.
  double slope_tolerance = 0.05;
  // Half-width of the band around 1 for asymptotic equivalences.
  double ratio_band = 0.1;
};

// Least-squares slope of log(y) against log(x); all inputs positive.
double log_log_slope(std::span<const double> x, std::span<const double> y);

struct TrendVerdict {
  // Growth rate of log(ratio) per unit of log(parameter) toward the asymptote.
  double growth = 0.0;
  Verdict verdict = Verdict::kInconclusive;
  std::string detail;
};

// Boundedness evidence for a ratio sequence: pass when every ratio is finite
// and the growth fitted over the half of the grid nearest the asymptote
// (at least four points) is at most the tolerance.
// Fewer than four positive ratios count as flat.
TrendVerdict ratio_trend(std::span<const double> parameters, std::span<const double> ratios,
                         Asymptote asymptote, const Thresholds& thresholds);

}  // namespace splab
