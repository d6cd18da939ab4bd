#include "verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "config.hpp"
#include "splab/calculus.hpp"
#include "splab/errors.hpp"
#include "splab/experiments.hpp"
#include "splab/families.hpp"
#include "splab/moduli.hpp"
#include "splab/oracle.hpp"
#include "splab/summation.hpp"

namespace splab::app {

namespace {

using LambdaFn = std::function<double(std::int64_t, int, double)>;

std::vector<double> percent_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 99; ++i) g.push_back(i / 100.0);
  return g;
}

double rel_diff(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

struct Check {
  std::string name;
  bool heavy;
  std::function<CheckResult()> run;
};

CheckResult result(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok, std::move(detail)};
}

std::vector<Check> build_checks(const VerifyOptions& options) {
  std::vector<Check> checks;

  for (int part = 0; part < 4; ++part) {
    const std::int64_t lo = part == 0 ? 0 : 50 * part + 1;
    const std::int64_t hi = 50 * (part + 1);
    const std::string name = "binomial_identity[nu=" + std::to_string(lo) + ".." +
                             std::to_string(hi) + "]";
    checks.push_back({name, false, [=] {
                        double worst = 0.0;
                        for (std::int64_t nu = lo; nu <= hi; ++nu) {
                          worst = std::max(worst, verify_identity_8(nu, percent_grid()).max_deviation);
                        }
                        return result(name, worst <= 1e-11, "max deviation " + fmt(worst));
                      }});
  }

  for (int r = 1; r <= 5; ++r) {
    const std::string name = "binomial_tail_bound[r=" + std::to_string(r) + "]";
    checks.push_back({name, false, [=] {
                        double worst = -kInf;
                        for (std::int64_t nu = r; nu <= 200; ++nu) {
                          worst = std::max(worst,
                                           verify_inequality_12(nu, r, percent_grid()).max_deviation);
                        }
                        return result(name, worst <= 1e-12, "max(LHS - RHS) " + fmt(worst));
                      }});
  }

  checks.push_back({"taylor_r1_equals_abel_poisson_s1", true, [] {
                      double worst = 0.0;
                      for (double rho : percent_grid()) {
                        const auto a = multipliers(SummationMethod::taylor(rho, 1), 10'000);
                        const auto b = multipliers(SummationMethod::abel_poisson(rho, 1.0), 10'000);
                        for (std::size_t i = 0; i < a.values.size(); ++i) {
                          worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
                          worst = std::max(worst, std::abs(a.gaps[i] - b.gaps[i]));
                        }
                      }
                      return result("taylor_r1_equals_abel_poisson_s1", worst <= 1e-15,
                                    "max row difference " + fmt(worst));
                    }});

  LambdaFn lambda = [](std::int64_t nu, int r, double rho) { return lambda_coeff(nu, r, rho); };
  if (options.inject_fault == "lambda_truncated") {
    lambda = [](std::int64_t nu, int r, double rho) {
      return r - 2 >= 1 ? lambda_coeff(nu, r - 2, rho) : 0.0;
    };
  }
  for (int r = 2; r <= 5; ++r) {
    const std::string name = "taylor_coefficients_vs_oracle[r=" + std::to_string(r) + "]";
    checks.push_back({name, false, [=] {
                        double worst = 0.0;
                        for (int i = 5; i <= 95; i += 5) {
                          const double rho = i / 100.0;
                          const auto method = SummationMethod::taylor(rho, r);
                          for (std::int64_t nu = r; nu <= 200; ++nu) {
                            const double want = oracle::naive_multiplier(method, nu);
                            const double got = lambda(nu, r, rho);
                            const double err = std::abs(got - want) / (std::abs(want) + 1e-290);
                            worst = std::max(worst, err);
                          }
                        }
                        return result(name, worst <= 1e-12, "max relative error " + fmt(worst));
                      }});
  }

  checks.push_back({"taylor_coefficient_complement", false, [] {
                      double worst = 0.0;
                      for (int r = 1; r <= 5; ++r) {
                        for (double rho : percent_grid()) {
                          for (std::int64_t nu = r; nu <= 300; ++nu) {
                            const double s = lambda_coeff(nu, r, rho) + lambda_complement(nu, r, rho);
                            worst = std::max(worst, std::abs(s - 1.0));
                          }
                        }
                      }
                      return result("taylor_coefficient_complement", worst <= 1e-14,
                                    "max |lambda + (1 - lambda) - 1| " + fmt(worst));
                    }});

  for (int r = 1; r <= 3; ++r) {
    const std::string name = "poisson_bracket_two_routes[r=" + std::to_string(r) + "]";
    checks.push_back({name, false, [=] {
                        std::mt19937_64 rng(1000 + r);
                        double worst = 0.0;
                        for (double p : {1.0, 1.5, 2.0, 3.0}) {
                          const BlockProfile a = oracle::random_profile(rng, 1000, p);
                          const BlockProfile d = psi_derivative(a, PsiWeight::falling_factorial(r));
                          for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
                            const Interval direct = poisson_of_bracket_derivative_norm(a, {rho, r});
                            const Interval composed = sp_norm(poisson_transform(d, rho));
                            worst = std::max(worst, rel_diff(direct.upper, composed.upper));
                          }
                        }
                        return result(name, worst <= 1e-12, "max relative difference " + fmt(worst));
                      }});
  }

  for (int r = 0; r <= 2; ++r) {
    const std::string name = "finite_difference_oracle[r=" + std::to_string(r) + "]";
    checks.push_back({name, false, [=] {
                        std::mt19937_64 rng(2000 + r);
                        const BlockProfile a = oracle::random_profile(rng, 200, 2.0);
                        double worst = 0.0;
                        for (double rho : {0.2, 0.5, 0.8}) {
                          const double fd = oracle::fd_radial_derivative(a, r, rho, 1e-4);
                          const double exact = poisson_radial_derivative_norm(a, {rho, r}).upper;
                          worst = std::max(worst, rel_diff(fd, exact));
                        }
                        return result(name, worst <= 1e-5, "max relative difference " + fmt(worst));
                      }});
  }

  checks.push_back({"finite_difference_second_order", false, [] {
                      std::mt19937_64 rng(3000);
                      const BlockProfile a = oracle::random_profile(rng, 200, 2.0);
                      bool ok = true;
                      std::ostringstream os;
                      for (int r = 1; r <= 2; ++r) {
                        const double exact = poisson_radial_derivative_norm(a, {0.5, r}).upper;
                        const double e1 = std::abs(oracle::fd_radial_derivative(a, r, 0.5, 4e-3) - exact);
                        const double e2 = std::abs(oracle::fd_radial_derivative(a, r, 0.5, 2e-3) - exact);
                        const double q = e2 / e1;
                        ok = ok && q >= 0.2 && q <= 0.3;
                        os << "r=" << r << " ratio " << q << "; ";
                      }
                      return result("finite_difference_second_order", ok, os.str());
                    }});

  const std::vector<std::pair<std::string, std::function<SummationMethod(std::mt19937_64&)>>>
      methods = {
          {"triangular_partial",
           [](std::mt19937_64& g) {
             return SummationMethod::triangular_partial(std::uniform_int_distribution<int>(0, 8)(g));
           }},
          {"fejer",
           [](std::mt19937_64& g) {
             return SummationMethod::fejer(std::uniform_int_distribution<int>(1, 8)(g));
           }},
          {"abel_poisson",
           [](std::mt19937_64& g) {
             return SummationMethod::abel_poisson(std::uniform_real_distribution<double>(0.05, 0.95)(g),
                                                  std::uniform_real_distribution<double>(0.5, 2.5)(g));
           }},
          {"taylor",
           [](std::mt19937_64& g) {
             return SummationMethod::taylor(std::uniform_real_distribution<double>(0.05, 0.95)(g),
                                            std::uniform_int_distribution<int>(1, 3)(g));
           }},
      };
  int seed = 0;
  for (const auto& [mname, make] : methods) {
    const std::string name = "approximation_error_vs_oracle[" + mname + "]";
    const int s = 4000 + seed++;
    checks.push_back({name, false, [=, make = make] {
                        std::mt19937_64 rng(s);
                        double worst = 0.0;
                        for (int i = 0; i < 25; ++i) {
                          const int d = 1 + i % 3;
                          const std::int64_t order = d == 1 ? 40 : (d == 2 ? 12 : 6);
                          const Spectrum f = oracle::random_exact_spectrum(rng, d, order);
                          const double p = std::uniform_real_distribution<double>(1.0, 3.0)(rng);
                          const SummationMethod m = make(rng);
                          const double got = approximation_error(m, f, p).upper;
                          const double want = oracle::naive_error(m, f, p);
                          worst = std::max(worst, rel_diff(got, want));
                        }
                        return result(name, worst <= 1e-12, "25 spectra, max relative difference " + fmt(worst));
                      }});
  }

  checks.push_back({"fejer_two_sum_decomposition", false, [] {
                      std::mt19937_64 rng(5000);
                      double worst = 0.0;
                      for (std::int64_t n : {1, 7, 50, 400}) {
                        const BlockProfile a = oracle::random_profile(rng, 500, 2.0);
                        const auto m = SummationMethod::fejer(n);
                        double direct = 0.0;
                        for (std::int64_t nu = 0; nu <= a.cutoff(); ++nu) {
                          direct += std::pow(m.gap(nu) * a[static_cast<std::size_t>(nu)], 2.0);
                        }
                        worst = std::max(worst, rel_diff(approximation_error(m, a).upper, std::sqrt(direct)));
                      }
                      return result("fejer_two_sum_decomposition", worst <= 1e-12,
                                    "max relative difference " + fmt(worst));
                    }});

  checks.push_back({"geometric_norm_p1", false, [] {
                      const Family f = Family::geometric(0.5, 1);
                      const Interval n = sp_norm(f.profile(1.0, f.default_cutoff(1.0)));
                      const auto ref = oracle::series_reference("geometric_d1_p1", {{"q", 0.5}});
                      const bool ok = n.contains(3.0) && n.width() <= 1e-10 &&
                                      std::abs(n.upper - 1.0 - ref.value) <= ref.error_bound + 1e-10;
                      return result("geometric_norm_p1", ok,
                                    "interval [" + fmt(n.lower) + ", " + fmt(n.upper) + "]");
                    }});

  checks.push_back({"profiles_phase_invariant", false, [] {
                      const Family f = Family::geometric(0.6, 2);
                      const BlockProfile a = profile_of(f.spectrum(2.0, 30), 2.0);
                      const BlockProfile b = profile_of(f.spectrum(2.0, 30, 12345), 2.0);
                      double worst = 0.0;
                      for (std::size_t nu = 0; nu < a.values().size(); ++nu) {
                        worst = std::max(worst, rel_diff(a[nu], b[nu]));
                      }
                      return result("profiles_phase_invariant", worst <= 1e-14,
                                    "max relative difference " + fmt(worst));
                    }});

  checks.push_back({"membership_scale_equivariance", false, [] {
                      const Family f = Family::power(1.0, 2);
                      const Spectrum g = f.spectrum(2.0, 40);
                      const std::complex<double> c(3.0, -4.0);
                      const Modulus omega = Modulus::power(0.5);
                      const auto grid = dyadic_h_grid(1, 12);
                      const auto a = estimate_class_membership(g, omega, 2.0, grid);
                      const auto b = estimate_class_membership(scaled(g, c), omega, 2.0, grid);
                      double worst = 0.0;
                      for (std::size_t i = 0; i < a.ratios.size(); ++i) {
                        worst = std::max(worst, rel_diff(5.0 * a.ratios[i], b.ratios[i]));
                      }
                      const bool ok = worst <= 1e-12 && a.verdict == b.verdict;
                      return result("membership_scale_equivariance", ok,
                                    "max relative deviation from |c| Q " + fmt(worst));
                    }});

  checks.push_back({"sine_form_matches_general_form", false, [] {
                      const Family f = Family::y_power(1.0, 2);
                      const Spectrum g = f.spectrum(2.0, 60);
                      const BlockProfile a = profile_of(g, 2.0);
                      double worst = 0.0;
                      for (double h : dyadic_h_grid(1, 16)) {
                        worst = std::max(worst, rel_diff(shift_difference_norm(g, h, 2.0).lower,
                                                         shift_difference_norm(a, h).lower));
                      }
                      return result("sine_form_matches_general_form", worst <= 1e-12,
                                    "max relative difference " + fmt(worst));
                    }});

  checks.push_back({"condition_B_power_moduli", true, [] {
                      bool ok = true;
                      double worst_cauchy = 0.0;
                      for (int i = 1; i <= 10; ++i) {
                        const Modulus omega = Modulus::power(i / 10.0);
                        const auto a = check_condition_B(omega, dyadic_n_grid(2, 16), 10'000);
                        const auto b = check_condition_B(omega, dyadic_n_grid(2, 16), 100'000);
                        ok = ok && a.verdict == Verdict::kPass && b.verdict == Verdict::kPass;
                        for (std::size_t k = 0; k < a.ratios.size(); ++k) {
                          worst_cauchy = std::max(worst_cauchy, rel_diff(a.ratios[k], b.ratios[k]));
                        }
                      }
                      ok = ok && worst_cauchy <= 1e-3;
                      return result("condition_B_power_moduli", ok,
                                    "alpha 0.1..1.0; tail-size relative change " + fmt(worst_cauchy));
                    }});

  checks.push_back({"condition_B_log_modulus_fails", false, [] {
                      const auto rep =
                          check_condition_B(Modulus::power_log(0.0, -1.0), dyadic_n_grid(2, 16), 10'000);
                      bool increasing = true;
                      for (std::size_t k = 1; k < rep.ratios.size(); ++k) {
                        increasing = increasing && rep.ratios[k] > rep.ratios[k - 1];
                      }
                      return result("condition_B_log_modulus_fails",
                                    rep.verdict == Verdict::kFail && increasing, rep.detail);
                    }});

  checks.push_back({"basic_conditions", false, [] {
                      const auto good = check_basic_conditions(Modulus::power(0.5));
                      const auto bad =
                          check_basic_conditions(Modulus::custom([](double t) { return 1.0 - t; }, "1-t"));
                      return result("basic_conditions",
                                    good.verdict == Verdict::kPass && bad.verdict == Verdict::kFail,
                                    "power(0.5) " + to_string(good.verdict) + ", 1-t " +
                                        to_string(bad.verdict));
                    }});

  checks.push_back({"tail_certificates_nest", true, [] {
                      const Family f = Family::power(1.0, 1);
                      const BlockProfile small = f.profile(2.0, 1000);
                      const BlockProfile big = f.profile(2.0, 100'000);
                      auto nested = [](Interval outer, Interval inner) {
                        return outer.lower <= inner.lower * (1 + 1e-14) &&
                               inner.upper <= outer.upper * (1 + 1e-14);
                      };
                      bool ok = nested(sp_norm(small), sp_norm(big));
                      for (double rho : {0.9, 0.99}) {
                        ok = ok && nested(poisson_radial_derivative_norm(small, {rho, 1}),
                                          poisson_radial_derivative_norm(big, {rho, 1}));
                      }
                      for (double h : {0.5, 1e-3}) {
                        ok = ok && nested(shift_difference_norm(small, h), shift_difference_norm(big, h));
                      }
                      return result("tail_certificates_nest", ok,
                                    "cutoff 1e3 intervals contain cutoff 1e5 intervals");
                    }});

  checks.push_back({"fejer_summation_by_parts_bound", true, [] {
                      const BlockProfile a = Family::power(1.0, 1).profile(2.0, 100'000);
                      bool ok = true;
                      double worst = 0.0;
                      for (std::int64_t n : dyadic_n_grid(2, 14)) {
                        const double lhs = std::pow(approximation_error(SummationMethod::fejer(n), a).upper, 2.0);
                        const double rhs = fejer_summation_by_parts_bound(a, n);
                        ok = ok && lhs <= rhs;
                        worst = std::max(worst, lhs / rhs);
                      }
                      return result("fejer_summation_by_parts_bound", ok, "max LHS/RHS " + fmt(worst));
                    }});

  checks.push_back({"abel_error_vs_series_oracle", true, [] {
                      const BlockProfile a = Family::power(1.0, 1).profile(2.0, 100'000);
                      double worst = 0.0;
                      bool ok = true;
                      for (double rho : {0.5, 0.9, 0.99}) {
                        const Interval e = approximation_error(SummationMethod::abel_poisson(rho, 1.0), a);
                        const auto ref = oracle::series_reference(
                            "abel_error_power", {{"b", 1.0}, {"rho", rho}, {"p", 2.0}, {"cutoff", 1e6}});
                        ok = ok && e.lower <= ref.value + ref.error_bound + 1e-12 &&
                             ref.value - ref.error_bound <= e.upper + 1e-12;
                        worst = std::max(worst, rel_diff(e.upper, ref.value));
                      }
                      return result("abel_error_vs_series_oracle", ok,
                                    "intervals overlap; max relative gap " + fmt(worst));
                    }});

  checks.push_back({"psi_zero_set_and_identity", false, [] {
                      std::mt19937_64 rng(6000);
                      const BlockProfile a = oracle::random_profile(rng, 50, 2.0);
                      const BlockProfile d = psi_derivative(a, PsiWeight::falling_factorial(3));
                      const BlockProfile id = psi_derivative(a, PsiWeight::radial_power(0.0));
                      bool ok = d[0] == 0.0 && d[1] == 0.0 && d[2] == 0.0 && d[3] == a[3] * 6.0;
                      for (std::size_t nu = 0; nu < 50; ++nu) ok = ok && id[nu] == a[nu];
                      return result("psi_zero_set_and_identity", ok, "falling_factorial(3), radial_power(0)");
                    }});

  return checks;
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const VerifyOptions& options) {
  if (!options.inject_fault.empty() && options.inject_fault != "lambda_truncated") {
    throw ConfigError("unknown fault '" + options.inject_fault + "'");
  }
  std::vector<CheckResult> out;
  for (const auto& check : build_checks(options)) {
    if (options.quick && check.heavy) continue;
    try {
      out.push_back(check.run());
    } catch (const std::exception& e) {
      out.push_back({check.name, false, std::string("exception: ") + e.what()});
    }
  }
  return out;
}

}  // namespace splab::app
