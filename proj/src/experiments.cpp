#include "splab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "splab/calculus.hpp"
#include "splab/errors.hpp"
#include "splab/summation.hpp"

namespace splab {

RateReport big_O_ratio_test(std::string quantity_name,
                            const std::vector<std::pair<double, Interval>>& values,
                            const std::function<double(double)>& bound, Asymptote asymptote,
                            const Thresholds& thresholds) {
  if (values.size() < 4) throw PreconditionError("big_O_ratio_test: needs at least 4 points");
  RateReport report;
  report.quantity_name = std::move(quantity_name);
  report.asymptote = asymptote;
  report.thresholds = thresholds;
  std::vector<double> params;
  std::vector<double> ratios;
  std::vector<double> uppers;
  bool loggable = true;
  for (const auto& [x, v] : values) {
    const double b = bound(x);
    if (!(b > 0.0) || !std::isfinite(b)) {
      throw PreconditionError("big_O_ratio_test: bound must be positive on the grid");
    }
    const double ratio = v.upper / b;
    report.points.push_back({x, v, b, ratio});
    params.push_back(x);
    ratios.push_back(ratio);
    uppers.push_back(v.upper);
    if (!(x > 0.0) || !(v.upper > 0.0) || !std::isfinite(v.upper)) loggable = false;
  }
  if (loggable) report.fitted_slope = log_log_slope(params, uppers);
  const TrendVerdict trend = ratio_trend(params, ratios, asymptote, thresholds);
  report.ratio_growth = trend.growth;
  report.verdict = trend.verdict;
  report.detail = trend.detail;
  return report;
}

Verdict TheoremOutcome::overall() const {
  bool inconclusive = false;
  auto fold = [&](Verdict v) {
    if (v == Verdict::kFail) return false;
    if (v == Verdict::kInconclusive) inconclusive = true;
    return true;
  };
  for (const auto& s : reports) {
    if (!fold(s.report.verdict)) return Verdict::kFail;
  }
  for (const auto& i : implications) {
    if (!fold(i.verdict)) return Verdict::kFail;
  }
  return inconclusive ? Verdict::kInconclusive : Verdict::kPass;
}

const RateReport& TheoremOutcome::report(const std::string& statement) const {
  for (const auto& s : reports) {
    if (s.statement == statement) return s.report;
  }
  throw PreconditionError("no report for statement " + statement);
}

std::vector<double> dyadic_rho_grid(int j1, int j2) {
  std::vector<double> out;
  for (int j = j1; j <= j2; ++j) out.push_back(1.0 - std::ldexp(1.0, -j));
  return out;
}

ExperimentGrids default_grids() {
  return {dyadic_rho_grid(1, 14), dyadic_n_grid(2, 16), dyadic_h_grid(1, 20)};
}

void require_admissible(const Modulus& omega) {
  const ConditionReport basic = check_basic_conditions(omega);
  if (basic.verdict != Verdict::kPass) {
    throw PreconditionError(omega.name() + " fails the basic conditions: " + basic.detail);
  }
  const ConditionReport b = check_condition_B(omega, dyadic_n_grid(2, 16));
  if (b.verdict != Verdict::kPass) {
    throw PreconditionError(omega.name() + " fails condition B: " + b.detail);
  }
}

namespace {

void check_rho_grid(const std::vector<double>& rho) {
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] >= 0.0 && rho[i] < 1.0)) throw PreconditionError("rho grid must lie in [0, 1)");
    if (i > 0 && !(rho[i] > rho[i - 1])) throw PreconditionError("rho grid must increase");
  }
}

// The function whose coefficients are examined for statement 3.
struct Subject {
  const BlockProfile& profile;
  const Spectrum* spectrum;
};

RateReport membership_statement(const Subject& f, const PsiWeight& psi, const Modulus& omega,
                                const std::vector<double>& h_grid, const Thresholds& thresholds) {
  std::optional<ConditionReport> c;
  if (f.profile.y_supported() || f.profile.dimension() == 1) {
    c = estimate_class_membership(psi_derivative(f.profile, psi), omega, h_grid, thresholds);
  } else if (f.spectrum != nullptr) {
    c = estimate_class_membership(psi_derivative(*f.spectrum, psi), omega, f.profile.p(), h_grid,
                                  thresholds);
  }
  const std::string name = "||g - g_h|| / omega(h), g = " + psi.describe() + " derivative";
  if (!c) {
    RateReport r;
    r.quantity_name = name;
    r.asymptote = Asymptote::kZero;
    r.thresholds = thresholds;
    r.detail = "shift norm of a non-Y profile needs the coefficients";
    return r;
  }
  std::vector<std::pair<double, Interval>> values;
  for (std::size_t i = 0; i < c->grid.size(); ++i) values.emplace_back(c->grid[i], c->values[i]);
  return big_O_ratio_test(name, values, omega, Asymptote::kZero, thresholds);
}

Verdict join(Verdict a, Verdict b) {
  if (a == Verdict::kInconclusive || b == Verdict::kInconclusive) return Verdict::kInconclusive;
  return a == b ? Verdict::kPass : Verdict::kFail;
}

Verdict implies(Verdict premise, Verdict conclusion) {
  if (premise != Verdict::kPass) return premise == Verdict::kFail ? Verdict::kPass : premise;
  return conclusion;
}

void add_implications(TheoremOutcome& out) {
  const Verdict v1 = out.reports[0].report.verdict;
  const Verdict v2 = out.reports[1].report.verdict;
  const Verdict v3 = out.reports[2].report.verdict;
  out.implications.push_back({"1<=>2", join(v1, v2),
                              "statement 1 " + to_string(v1) + ", statement 2 " + to_string(v2)});
  out.implications.push_back(
      {"1=>3", implies(v1, v3), "statement 3 " + to_string(v3) + " given 1 " + to_string(v1)});
  if (out.y_supported) {
    out.implications.push_back(
        {"3=>1", implies(v3, v1), "Y-supported: statement 1 " + to_string(v1) + " given 3"});
  }
}

TheoremOutcome run_proposition1(const Subject& f, const Modulus& omega, const ExperimentGrids& g,
                                const Thresholds& thresholds) {
  require_admissible(omega);
  const BlockProfile& a = f.profile;
  const BlockProfile d1 = psi_derivative(a, PsiWeight::falling_factorial(1));
  std::vector<std::pair<double, Interval>> av;
  std::vector<std::pair<double, Interval>> bv;
  for (std::int64_t n : g.n) {
    if (n < 1) throw PreconditionError("prop1: n must be >= 1");
    const auto x = static_cast<double>(n);
    av.emplace_back(x, sp_norm(apply(SummationMethod::triangular_partial(n), d1)));
    bv.emplace_back(x, approximation_error(SummationMethod::fejer(n), a));
  }
  TheoremOutcome out;
  out.experiment = "prop1";
  out.y_supported = a.y_supported() || a.dimension() == 1;
  out.reports.push_back(
      {"A_partial_sums_of_derivative",
       big_O_ratio_test(
           "||S_n(f_[1])||", av, [&](double n) { return n * omega(1.0 / n); },
           Asymptote::kInfinity, thresholds)});
  out.reports.push_back({"B_fejer_error", big_O_ratio_test(
                                              "||f - sigma_n(f)||", bv,
                                              [&](double n) { return omega(1.0 / n); },
                                              Asymptote::kInfinity, thresholds)});
  out.reports.push_back(
      {"membership", membership_statement(f, PsiWeight::falling_factorial(0), omega, g.h,
                                          thresholds)});
  add_implications(out);
  return out;
}

// Shared body of thm1 and thm2: error E, derivative D, membership of the
// derivative one order lower.
TheoremOutcome run_theorem(const std::string& name, const Subject& f, const Modulus& omega,
                           const ExperimentGrids& g, const Thresholds& thresholds,
                           const std::function<SummationMethod(double)>& method,
                           double error_order, const PsiWeight& top, const PsiWeight& lower,
                           const std::string& e_name, const std::string& d_name) {
  require_admissible(omega);
  check_rho_grid(g.rho);
  const BlockProfile& a = f.profile;
  const BlockProfile deriv = psi_derivative(a, top);
  std::vector<std::pair<double, Interval>> ev;
  std::vector<std::pair<double, Interval>> dv;
  for (double rho : g.rho) {
    const double x = 1.0 - rho;
    ev.emplace_back(x, approximation_error(method(rho), a));
    dv.emplace_back(x, sp_norm(poisson_transform(deriv, rho)));
  }
  TheoremOutcome out;
  out.experiment = name;
  out.y_supported = a.y_supported() || a.dimension() == 1;
  out.reports.push_back(
      {e_name, big_O_ratio_test(
                   "||f - method(f)||", ev,
                   [&](double x) { return std::pow(x, error_order) * omega(x); },
                   Asymptote::kZero, thresholds)});
  out.reports.push_back(
      {d_name, big_O_ratio_test(
                   "||P(" + top.describe() + " derivative)(rho, .)||", dv,
                   [&](double x) { return omega(x) / x; }, Asymptote::kZero, thresholds)});
  out.reports.push_back({"membership", membership_statement(f, lower, omega, g.h, thresholds)});
  add_implications(out);
  return out;
}

TheoremOutcome run_theorem1(const Subject& f, int r, const Modulus& omega,
                            const ExperimentGrids& g, const Thresholds& thresholds) {
  if (r < 1) throw PreconditionError("thm1: r must be >= 1");
  return run_theorem(
      "thm1", f, omega, g, thresholds,
      [r](double rho) { return SummationMethod::taylor(rho, r); }, r - 1,
      PsiWeight::falling_factorial(r), PsiWeight::falling_factorial(r - 1), "E_taylor_error",
      "D_poisson_of_bracket_derivative");
}

TheoremOutcome run_theorem2(const Subject& f, double s, const Modulus& omega,
                            const ExperimentGrids& g, const Thresholds& thresholds) {
  if (!(s >= 1.0)) throw PreconditionError("thm2: s must be >= 1");
  return run_theorem(
      "thm2", f, omega, g, thresholds,
      [s](double rho) { return SummationMethod::abel_poisson(rho, s); }, 0.0,
      PsiWeight::radial_power(s), PsiWeight::radial_power(s - 1.0), "E_abel_poisson_error",
      "D_poisson_of_radial_derivative");
}

}  // namespace

TheoremOutcome proposition1_experiment(const Spectrum& f, double p, const Modulus& omega,
                                       const ExperimentGrids& grids,
                                       const Thresholds& thresholds) {
  const BlockProfile a = profile_of(f, p);
  return run_proposition1({a, &f}, omega, grids, thresholds);
}

TheoremOutcome proposition1_experiment(const BlockProfile& a, const Modulus& omega,
                                       const ExperimentGrids& grids,
                                       const Thresholds& thresholds) {
  return run_proposition1({a, nullptr}, omega, grids, thresholds);
}

TheoremOutcome theorem1_experiment(const Spectrum& f, double p, int r, const Modulus& omega,
                                   const ExperimentGrids& grids, const Thresholds& thresholds) {
  const BlockProfile a = profile_of(f, p);
  return run_theorem1({a, &f}, r, omega, grids, thresholds);
}

TheoremOutcome theorem1_experiment(const BlockProfile& a, int r, const Modulus& omega,
                                   const ExperimentGrids& grids, const Thresholds& thresholds) {
  return run_theorem1({a, nullptr}, r, omega, grids, thresholds);
}

TheoremOutcome theorem2_experiment(const Spectrum& f, double p, double s, const Modulus& omega,
                                   const ExperimentGrids& grids, const Thresholds& thresholds) {
  const BlockProfile a = profile_of(f, p);
  return run_theorem2({a, &f}, s, omega, grids, thresholds);
}

TheoremOutcome theorem2_experiment(const BlockProfile& a, double s, const Modulus& omega,
                                   const ExperimentGrids& grids, const Thresholds& thresholds) {
  return run_theorem2({a, nullptr}, s, omega, grids, thresholds);
}

RateReport equivalence7_experiment(const BlockProfile& a, double s,
                                   const std::vector<double>& rho_grid,
                                   const Thresholds& thresholds) {
  if (!(s >= 1.0)) throw PreconditionError("equiv7: s must be >= 1");
  if (rho_grid.size() < 4) throw PreconditionError("equiv7: needs at least 4 points");
  check_rho_grid(rho_grid);
  const Interval top = sp_norm(psi_derivative(a, PsiWeight::radial_power(s)));
  if (!std::isfinite(top.upper)) {
    throw PreconditionError("equiv7: ||f^(s)|| has no finite upper bound");
  }
  const double p = a.p();
  const BlockProfile lower = psi_derivative(a, PsiWeight::radial_power(s - 1.0));

  RateReport report;
  report.quantity_name = "||f - P_{rho,s}(f)||^p / ||f^(s-1) - P_{rho,1}(f^(s-1))||^p";
  report.asymptote = Asymptote::kZero;
  report.thresholds = thresholds;
  std::vector<double> params;
  std::vector<double> ratios;
  std::vector<double> uppers;
  bool loggable = true;
  for (double rho : rho_grid) {
    const Interval e1 = approximation_error(SummationMethod::abel_poisson(rho, s), a);
    const Interval e2 = approximation_error(SummationMethod::abel_poisson(rho, 1.0), lower);
    const Interval value{pow_abs(e1.lower, p), pow_abs(e1.upper, p)};
    const double bound = pow_abs(e2.upper, p);
    double ratio = value.upper / bound;
    if (bound == 0.0) ratio = value.upper == 0.0 ? 1.0 : kInf;
    report.points.push_back({1.0 - rho, value, bound, ratio});
    params.push_back(1.0 - rho);
    ratios.push_back(ratio);
    uppers.push_back(value.upper);
    if (!(value.upper > 0.0) || !std::isfinite(value.upper)) loggable = false;
  }
  if (loggable) report.fitted_slope = log_log_slope(params, uppers);

  const std::size_t n = ratios.size();
  bool finite = true;
  for (double r : ratios) finite = finite && std::isfinite(r);
  const double delta = thresholds.ratio_band;
  bool in_band = true;
  for (std::size_t i = n - 3; i < n; ++i) in_band = in_band && std::abs(ratios[i] - 1.0) <= delta;
  const bool toward_one = std::abs(ratios[n - 1] - 1.0) <= std::abs(ratios[n - 3] - 1.0);
  std::vector<double> positive_params;
  std::vector<double> positive_ratios;
  for (std::size_t i = 0; i < n; ++i) {
    if (ratios[i] > 0.0 && std::isfinite(ratios[i])) {
      positive_params.push_back(params[i]);
      positive_ratios.push_back(ratios[i]);
    }
  }
  if (positive_ratios.size() >= 2) {
    report.ratio_growth = -log_log_slope(positive_params, positive_ratios);
  }

  std::ostringstream os;
  os << "last ratios";
  for (std::size_t i = n - 3; i < n; ++i) os << " " << ratios[i];
  os << "; band 1 +- " << delta << (in_band ? " met" : " missed") << "; distance to 1 "
     << (toward_one ? "non-increasing" : "increasing");
  report.detail = os.str();
  if (!finite) {
    report.verdict = Verdict::kInconclusive;
  } else {
    report.verdict = in_band && toward_one ? Verdict::kPass : Verdict::kFail;
  }
  return report;
}

RateReport equivalence7_experiment(const Spectrum& f, double p, double s,
                                   const std::vector<double>& rho_grid,
                                   const Thresholds& thresholds) {
  return equivalence7_experiment(profile_of(f, p), s, rho_grid, thresholds);
}

double fejer_summation_by_parts_bound(const BlockProfile& a, std::int64_t n) {
  const std::int64_t big_n = a.cutoff();
  if (n < 1 || n >= big_n) throw PreconditionError("Fejer bound: need 1 <= n < cutoff");
  const double p = a.p();
  CompensatedSum partial;  // ||S_v(f_[1])||^p = sum_{k<=v} (k a_k)^p
  CompensatedSum weighted;
  for (std::int64_t v = 1; v <= big_n; ++v) {
    partial.add(pow_abs(static_cast<double>(v) * a[static_cast<std::size_t>(v)], p));
    if (v >= n) weighted.add(partial.value() / std::pow(static_cast<double>(v), p + 1.0));
  }
  return p * weighted.value() + partial.value() / std::pow(static_cast<double>(big_n), p) +
         a.tail_mass();
}

}  // namespace splab
