#include "splab/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "splab/errors.hpp"

namespace splab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw PreconditionError("log_log_slope: need two or more paired points");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw PreconditionError("log_log_slope: parameters are all equal");
  return sxy / sxx;
}

TrendVerdict ratio_trend(std::span<const double> parameters, std::span<const double> ratios,
                         Asymptote asymptote, const Thresholds& thresholds) {
  TrendVerdict out;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (!std::isfinite(ratios[i]) || ratios[i] < 0.0) {
      out.detail = "non-finite ratio at parameter " + std::to_string(parameters[i]);
      return out;
    }
    if (ratios[i] > 0.0) {
      xs.push_back(parameters[i]);
      ys.push_back(ratios[i]);
    }
  }
  std::ostringstream os;
  if (xs.size() < 4) {
    out.growth = 0.0;
    out.verdict = Verdict::kPass;
    os << "fewer than 4 positive ratios; treated as flat";
  } else {
    // Only the half of the grid nearest the asymptote enters the fit.
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return asymptote == Asymptote::kZero ? xs[a] < xs[b] : xs[a] > xs[b];
    });
    const std::size_t keep = std::max<std::size_t>(4, (xs.size() + 1) / 2);
    std::vector<double> fx;
    std::vector<double> fy;
    for (std::size_t i = 0; i < keep; ++i) {
      fx.push_back(xs[order[i]]);
      fy.push_back(ys[order[i]]);
    }
    const double slope = log_log_slope(fx, fy);
    out.growth = asymptote == Asymptote::kZero ? -slope : slope;
    out.verdict = out.growth <= thresholds.slope_tolerance ? Verdict::kPass : Verdict::kFail;
    os << "ratio growth " << out.growth << " over the " << keep << " points nearest the limit"
       << " vs tolerance " << thresholds.slope_tolerance;
  }
  out.detail = os.str();
  return out;
}

}  // namespace splab
