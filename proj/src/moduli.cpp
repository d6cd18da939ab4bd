#include "splab/moduli.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "splab/errors.hpp"

namespace splab {

namespace {

// exp(-745) is the smallest positive double; omega is not probed below it.
constexpr double kLogTinyT = 745.0;

std::string format_name(const char* kind, double a, double b, bool two) {
  std::ostringstream os;
  os << kind << "(" << a;
  if (two) os << ", " << b;
  os << ")";
  return os.str();
}

}  // namespace

Modulus Modulus::power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("power modulus: alpha must lie in (0, 1]");
  return Modulus(Kind::kPower, alpha, 0.0, nullptr, format_name("power", alpha, 0.0, false));
}

Modulus Modulus::power_log(double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("power_log modulus: alpha must lie in [0, 1]");
  }
  if (!(beta <= alpha)) throw DomainError("power_log modulus: beta <= alpha keeps it monotone");
  if (alpha == 0.0 && !(beta < 0.0)) {
    throw DomainError("power_log modulus: alpha = 0 needs beta < 0 to vanish at 0");
  }
  return Modulus(Kind::kPowerLog, alpha, beta, nullptr,
                 format_name("power_log", alpha, beta, true));
}

Modulus Modulus::custom(std::function<double(double)> evaluator, std::string name) {
  if (!evaluator) throw DomainError("custom modulus: empty evaluator");
  return Modulus(Kind::kCustom, 0.0, 0.0, std::move(evaluator), std::move(name));
}

double Modulus::operator()(double t) const {
  double v = 0.0;
  switch (kind_) {
    case Kind::kPower:
      v = t <= 0.0 ? 0.0 : std::pow(t, alpha_);
      break;
    case Kind::kPowerLog:
      v = t <= 0.0 ? 0.0 : std::pow(t, alpha_) * std::pow(1.0 - std::log(t), beta_);
      break;
    case Kind::kCustom:
      v = f_(t);
      break;
  }
  if (!std::isfinite(v) || v < 0.0) {
    std::ostringstream os;
    os << name_ << " returned " << v << " at t=" << t;
    throw EvaluationError(os.str());
  }
  return v;
}

ConditionReport check_basic_conditions(const Modulus& omega, int grid_size) {
  if (grid_size < 16) throw PreconditionError("check_basic_conditions: grid_size must be >= 16");
  ConditionReport report;
  report.condition = "basic conditions";
  report.threshold = 0.0;

  std::vector<double> grid{0.0};
  for (int j = 1000; j >= 1; --j) grid.push_back(std::ldexp(1.0, -j));
  for (int i = 1; i <= grid_size; ++i) grid.push_back(static_cast<double>(i) / grid_size);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const double at_one = omega(1.0);
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid) values.push_back(omega(t));

  bool positive = true;
  double worst_drop = 0.0;
  double worst_at = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] > 0.0 && !(values[i] > 0.0)) positive = false;
    if (i + 1 < grid.size()) {
      const double drop = values[i] - values[i + 1];
      if (drop > worst_drop) {
        worst_drop = drop;
        worst_at = grid[i + 1];
      }
    }
  }
  const bool monotone = worst_drop == 0.0;
  const bool vanishes = at_one > 0.0 && values[1] <= 1e-2 * at_one;

  // A jump that survives a fourfold refinement indicates a discontinuity.
  auto max_jump = [&](int m) {
    const double lo = std::ldexp(1.0, -10);
    double prev = omega(lo);
    double jump = 0.0;
    for (int i = 1; i <= m; ++i) {
      const double v = omega(lo + (1.0 - lo) * static_cast<double>(i) / m);
      jump = std::max(jump, std::abs(v - prev));
      prev = v;
    }
    return jump;
  };
  const int m = std::max(grid_size, 4096);
  const double coarse = max_jump(m);
  const double fine = max_jump(4 * m);
  const bool continuous = coarse <= 1e-12 * std::max(at_one, 1.0) || fine <= 0.5 * coarse;

  report.grid = grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    report.values.push_back({values[i], values[i]});
    report.bounds.push_back(at_one);
    report.ratios.push_back(at_one > 0.0 ? values[i] / at_one : kInf);
  }
  report.worst_ratio = at_one > 0.0 ? worst_drop / at_one : kInf;

  std::ostringstream os;
  os << "continuity " << (continuous ? "ok" : "suspect") << " (jump " << coarse << " -> " << fine
     << "); monotone " << (monotone ? "ok" : "violated");
  if (!monotone) os << " (drop " << worst_drop << " before t=" << worst_at << ")";
  os << "; positive " << (positive ? "ok" : "violated") << "; limit "
     << (vanishes ? "ok" : "suspect") << " (omega(2^-1000)=" << values[1] << ")";
  report.detail = os.str();

  if (!positive || !monotone) {
    report.verdict = Verdict::kFail;
  } else if (!continuous || !vanishes) {
    report.verdict =
        omega.kind() == Modulus::Kind::kCustom ? Verdict::kInconclusive : Verdict::kFail;
  } else {
    report.verdict = Verdict::kPass;
  }
  return report;
}

namespace {

// Estimate of sum_{v > V} omega(1/v)/v.
double condition_B_remainder(const Modulus& omega, std::int64_t last) {
  const double edge = static_cast<double>(last) + 0.5;
  if (omega.kind() == Modulus::Kind::kPower) {
    return std::pow(edge, -omega.alpha()) / omega.alpha();
  }
  // int_{edge}^inf omega(1/v)/v dv = int_{log edge}^inf omega(e^-x) dx.
  const double a = std::log(edge);
  if (a >= kLogTinyT) return 0.0;
  auto integrand = [&](double x) { return omega(std::exp(-x)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, a, kLogTinyT,
                                                                       15, 1e-12);
}

}  // namespace

ConditionReport check_condition_B(const Modulus& omega, const std::vector<std::int64_t>& n_grid,
                                  std::int64_t tail_terms, const Thresholds& thresholds) {
  if (tail_terms < 10'000) throw PreconditionError("check_condition_B: tail_terms must be >= 1e4");
  if (n_grid.empty()) throw PreconditionError("check_condition_B: empty n grid");
  ConditionReport report;
  report.condition = "condition B";
  report.threshold = thresholds.slope_tolerance;
  for (std::int64_t n : n_grid) {
    if (n < 1) throw PreconditionError("check_condition_B: n must be >= 1");
    CompensatedSum s;
    for (std::int64_t v = n + 1; v <= n + tail_terms; ++v) {
      const double x = static_cast<double>(v);
      s.add(omega(1.0 / x) / x);
    }
    s.add(condition_B_remainder(omega, n + tail_terms));
    const double bound = omega(1.0 / static_cast<double>(n));
    report.grid.push_back(static_cast<double>(n));
    report.values.push_back({s.value(), s.value()});
    report.bounds.push_back(bound);
    report.ratios.push_back(bound > 0.0 ? s.value() / bound : kInf);
  }
  report.worst_ratio = *std::max_element(report.ratios.begin(), report.ratios.end());
  const TrendVerdict trend =
      ratio_trend(report.grid, report.ratios, Asymptote::kInfinity, thresholds);
  report.verdict = trend.verdict;
  report.detail = trend.detail;
  return report;
}

namespace {

void check_h_grid(const std::vector<double>& h_grid) {
  if (h_grid.empty()) throw PreconditionError("membership: empty h grid");
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    if (!(h_grid[i] > 0.0 && h_grid[i] <= 1.0)) {
      throw PreconditionError("membership: h must lie in (0, 1]");
    }
    if (i > 0 && !(h_grid[i] < h_grid[i - 1])) {
      throw PreconditionError("membership: h grid must decrease");
    }
  }
}

template <class ShiftNorm>
ConditionReport membership_report(const Modulus& omega, const std::vector<double>& h_grid,
                                  const Thresholds& thresholds, ShiftNorm&& shift) {
  check_h_grid(h_grid);
  ConditionReport report;
  report.condition = "class membership " + omega.name();
  report.threshold = thresholds.slope_tolerance;
  report.grid = h_grid;
  for (double h : h_grid) {
    const Interval v = shift(h);
    const double bound = omega(h);
    report.values.push_back(v);
    report.bounds.push_back(bound);
    report.ratios.push_back(bound > 0.0 ? v.upper / bound : kInf);
  }
  report.worst_ratio = *std::max_element(report.ratios.begin(), report.ratios.end());
  const TrendVerdict trend = ratio_trend(report.grid, report.ratios, Asymptote::kZero, thresholds);
  report.verdict = trend.verdict;
  report.detail = trend.detail;
  return report;
}

}  // namespace

ConditionReport estimate_class_membership(const Spectrum& f, const Modulus& omega, double p,
                                          const std::vector<double>& h_grid,
                                          const Thresholds& thresholds) {
  if (f.y_supported() || f.dimension() == 1) {
    return estimate_class_membership(profile_of(f, p), omega, h_grid, thresholds);
  }
  return membership_report(omega, h_grid, thresholds,
                           [&](double h) { return shift_difference_norm(f, h, p); });
}

ConditionReport estimate_class_membership(const BlockProfile& a, const Modulus& omega,
                                          const std::vector<double>& h_grid,
                                          const Thresholds& thresholds) {
  return membership_report(omega, h_grid, thresholds,
                           [&](double h) { return shift_difference_norm(a, h); });
}

std::vector<double> dyadic_h_grid(int j1, int j2) {
  std::vector<double> out;
  for (int j = j1; j <= j2; ++j) out.push_back(std::ldexp(1.0, -j));
  return out;
}

std::vector<std::int64_t> dyadic_n_grid(int j1, int j2) {
  std::vector<std::int64_t> out;
  for (int j = j1; j <= j2; ++j) out.push_back(std::int64_t{1} << j);
  return out;
}

}  // namespace splab
