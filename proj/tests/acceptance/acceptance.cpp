// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "splab/calculus.hpp"
#include "splab/experiments.hpp"
#include "splab/families.hpp"
#include "splab/moduli.hpp"
#include "splab/oracle.hpp"
#include "splab/summation.hpp"

namespace fs = std::filesystem;
using namespace splab;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

std::vector<double> rho_99() {
  std::vector<double> g;
  for (int i = 1; i <= 99; ++i) g.push_back(i / 100.0);
  return g;
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "splab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return app::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("splab_acceptance_" + name);
  fs::remove_all(dir);
  return dir;
}

// Criterion 5 family: a_nu = nu^-(alpha + 1/p), d = 1, p = 2, alpha = 0.5.
BlockProfile rate_profile(double extra_order) {
  return Family::power(0.5 + 0.5 + extra_order, 1).profile(2.0, 100000);
}

Outcome identities() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst8 = 0.0;
  double worst12 = -kInf;
  const auto grid = rho_99();
  for (std::int64_t nu = 0; nu <= 200; ++nu) {
    worst8 = std::max(worst8, verify_identity_8(nu, grid).max_deviation);
    for (int r = 1; r <= 5 && r <= nu; ++r) {
      worst12 = std::max(worst12, verify_inequality_12(nu, r, grid).max_deviation);
    }
  }
  const double elapsed = seconds_since(t0);
  o.detail << "max |sum - 1| = " << worst8 << ", max violation = " << worst12 << ", " << elapsed << " s";
  o.require(worst8 <= 1e-11, "binomial identity");
  o.require(worst12 <= 1e-12, "tail bound");
  o.require(elapsed < 10.0, "runtime");
  return o;
}

Outcome operator_identity() {
  Outcome o;
  double worst = 0.0;
  for (double rho : rho_99()) {
    const auto t = SummationMethod::taylor(rho, 1);
    const auto a = SummationMethod::abel_poisson(rho, 1.0);
    for (std::int64_t nu = 0; nu <= 10000; ++nu) {
      worst = std::max(worst, std::abs(t.multiplier(nu) - a.multiplier(nu)));
    }
  }
  const fs::path d1 = scratch("thm1_r1");
  const fs::path d2 = scratch("thm2_s1");
  const int c1 = cli({"experiment", "thm1", "--r", "1", "--out", d1.string()});
  const int c2 = cli({"experiment", "thm2", "--s", "1", "--out", d2.string()});
  const bool same =
      slurp(d1 / "thm1_E_taylor_error.csv") == slurp(d2 / "thm2_E_abel_poisson_error.csv") &&
      slurp(d1 / "thm1_D_poisson_of_bracket_derivative.csv") ==
          slurp(d2 / "thm2_D_poisson_of_radial_derivative.csv") &&
      slurp(d1 / "thm1_membership.csv") == slurp(d2 / "thm2_membership.csv") &&
      !slurp(d1 / "thm1_E_taylor_error.csv").empty();
  o.detail << "max row difference " << worst << ", CSV bodies " << (same ? "identical" : "differ");
  o.require(worst <= 1e-15, "multiplier rows");
  o.require(c1 == 0 && c2 == 0, "experiment runs");
  o.require(same, "byte-identical CSV");
  return o;
}

Outcome two_routes() {
  Outcome o;
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const double p = 1.0 + 0.5 * trial;
    const BlockProfile a = oracle::random_profile(rng, 1000, p);
    for (int r = 0; r <= 3; ++r) {
      for (double rho : {0.05, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999}) {
        const double direct = poisson_of_bracket_derivative_norm(a, {rho, r}).upper;
        const double composed =
            sp_norm(poisson_transform(psi_derivative(a, PsiWeight::falling_factorial(r)), rho)).upper;
        worst = std::max(worst, rel_diff(direct, composed));
      }
    }
  }
  // Finite differences: agreement at the default step, and second-order decay.
  const BlockProfile b = oracle::random_profile(rng, 1000, 2.0);
  double fd_worst = 0.0;
  double min_ratio = kInf;
  double max_ratio = 0.0;
  for (int r = 1; r <= 3; ++r) {
    for (double rho : {0.3, 0.6, 0.9}) {
      const double exact = poisson_radial_derivative_norm(b, {rho, r}).upper;
      fd_worst = std::max(fd_worst, rel_diff(oracle::fd_radial_derivative(b, r, rho, 1e-4), exact));
      const double e1 = std::abs(oracle::fd_radial_derivative(b, r, rho, 4e-3) - exact);
      const double e2 = std::abs(oracle::fd_radial_derivative(b, r, rho, 2e-3) - exact);
      min_ratio = std::min(min_ratio, e2 / e1);
      max_ratio = std::max(max_ratio, e2 / e1);
    }
  }
  o.detail << "route difference " << worst << ", fd relative error " << fd_worst << ", halving ratio in ["
           << min_ratio << ", " << max_ratio << "]";
  o.require(worst <= 1e-12, "two routes");
  o.require(fd_worst <= 1e-4, "finite difference agreement");
  o.require(min_ratio >= 0.2 && max_ratio <= 0.3, "second-order convergence");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int spectra = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int d = 1 + trial % 3;
    const std::int64_t max_order = d == 1 ? 40 : (d == 2 ? 15 : 7);
    const Spectrum f = oracle::random_exact_spectrum(rng, d, max_order);
    const double p = 1.0 + 2.0 * u(rng);
    const double rho = 0.99 * u(rng);
    const auto n = static_cast<std::int64_t>(max_order * u(rng)) + 1;
    for (const auto& m : {SummationMethod::triangular_partial(n), SummationMethod::fejer(n),
                          SummationMethod::abel_poisson(rho, 1.0 + u(rng)),
                          SummationMethod::taylor(rho, 1 + trial % 5)}) {
      worst = std::max(worst, rel_diff(approximation_error(m, f, p).upper, oracle::naive_error(m, f, p)));
    }
    ++spectra;
  }
  const double elapsed = seconds_since(t0);
  o.detail << spectra << " spectra x 4 methods, max relative difference " << worst << ", " << elapsed << " s";
  o.require(worst <= 1e-12, "agreement");
  o.require(elapsed < 30.0, "runtime");
  return o;
}

Outcome theorem1_order1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const BlockProfile a = rate_profile(0.0);
  const TheoremOutcome t = theorem1_experiment(a, 1, Modulus::power(0.5));
  const RateReport& e = t.report("E_taylor_error");
  const RateReport& d = t.report("D_poisson_of_bracket_derivative");
  const RateReport& m = t.report("membership");
  std::vector<double> ratios;
  for (const auto& pt : m.points) ratios.push_back(pt.ratio);
  std::sort(ratios.begin(), ratios.end());
  const double median = ratios[ratios.size() / 2];
  const double max = ratios.back();
  // Independent series value at rho = 1 - 2^-10.
  const auto ref = oracle::series_reference("abel_error_power", {{"b", 1.0}, {"rho", 1.0 - 1.0 / 1024}, {"p", 2.0}});
  const Interval lib = e.points[9].value;
  const double elapsed = seconds_since(t0);
  o.detail << "E slope " << *e.fitted_slope << ", D slope " << *d.fitted_slope << ", membership max/median "
           << max / median << ", E(1-2^-10) in [" << lib.lower << ", " << lib.upper << "] vs series "
           << ref.value << ", " << elapsed << " s";
  o.require(std::abs(*e.fitted_slope - 0.5) <= 0.05, "E slope");
  o.require(std::abs(*d.fitted_slope + 0.5) <= 0.05, "D slope");
  o.require(max < 2.0 * median, "membership ratios");
  o.require(lib.lower <= ref.value + ref.error_bound && lib.upper >= ref.value - ref.error_bound,
            "series oracle");
  o.require(elapsed < 60.0, "runtime");
  return o;
}

Outcome theorem1_order2() {
  Outcome o;
  const TheoremOutcome t = theorem1_experiment(rate_profile(1.0), 2, Modulus::power(0.5));
  const RateReport& e = t.report("E_taylor_error");
  o.detail << "E slope " << *e.fitted_slope << ", verdict " << to_string(e.verdict);
  o.require(std::abs(*e.fitted_slope - 1.5) <= 0.05, "E slope");
  o.require(e.verdict == Verdict::kPass, "E ratios bounded");
  return o;
}

Outcome equivalence7() {
  Outcome o;
  const Family g = Family::geometric(0.5, 2);
  const Spectrum f = g.spectrum(2.0, g.spectrum_cutoff(g.default_cutoff(2.0)));
  const RateReport r = equivalence7_experiment(f, 2.0, 2.0, dyadic_rho_grid(1, 14));
  const auto at = [&](int j) { return r.points[static_cast<std::size_t>(j - 1)].ratio; };
  o.detail << "ratio " << at(8) << " / " << at(10) << " / " << at(12) << " at j = 8 / 10 / 12";
  o.require(at(10) >= 0.9 && at(10) <= 1.1, "band at j = 10");
  o.require(std::abs(at(12) - 1.0) < std::abs(at(8) - 1.0), "approach to 1");
  return o;
}

Outcome proposition1() {
  Outcome o;
  const BlockProfile a = rate_profile(0.0);
  const TheoremOutcome ok = proposition1_experiment(a, Modulus::power(0.5));
  const TheoremOutcome bad = proposition1_experiment(a, Modulus::power(0.9));
  const RateReport& pa = ok.report("A_partial_sums_of_derivative");
  const RateReport& pb = ok.report("B_fejer_error");
  o.detail << "A slope " << *pa.fitted_slope << ", B slope " << *pb.fitted_slope << ", control verdicts "
           << to_string(bad.report("A_partial_sums_of_derivative").verdict) << "/"
           << to_string(bad.report("B_fejer_error").verdict);
  o.require(std::abs(*pa.fitted_slope - 0.5) <= 0.05, "A slope");
  o.require(std::abs(*pb.fitted_slope + 0.5) <= 0.05, "B slope");
  o.require(pa.verdict == Verdict::kPass && pb.verdict == Verdict::kPass, "bounded ratios");
  o.require(bad.report("A_partial_sums_of_derivative").verdict == Verdict::kFail &&
                bad.report("B_fejer_error").verdict == Verdict::kFail,
            "negative control");
  return o;
}

Outcome condition_b() {
  Outcome o;
  const auto grid = dyadic_n_grid(2, 16);
  int passed = 0;
  for (int i = 1; i <= 10; ++i) {
    passed += check_condition_B(Modulus::power(i / 10.0), grid).verdict == Verdict::kPass ? 1 : 0;
  }
  const ConditionReport lg = check_condition_B(Modulus::power_log(0.0, -1.0), grid);
  bool increasing = true;
  for (std::size_t i = 1; i < lg.ratios.size(); ++i) increasing = increasing && lg.ratios[i] > lg.ratios[i - 1];
  o.detail << passed << "/10 power moduli pass; 1/log(e/t): " << to_string(lg.verdict) << ", ratios "
           << lg.ratios.front() << " -> " << lg.ratios.back();
  o.require(passed == 10, "power moduli");
  o.require(lg.verdict == Verdict::kFail, "log modulus verdict");
  o.require(increasing, "strictly increasing ratios");
  return o;
}

Outcome determinism() {
  Outcome o;
  int files = 0;
  for (const std::string kind : {"prop1", "thm1", "thm2", "equiv7"}) {
    std::vector<std::string> extra;
    if (kind == "equiv7") extra = {"--family", "geometric", "--q", "0.5", "--d", "2", "--s", "2"};
    std::vector<fs::path> dirs{scratch(kind + "_a"), scratch(kind + "_b")};
    for (const auto& dir : dirs) {
      std::vector<std::string> args{"experiment", kind, "--out", dir.string(), "--seed", "17"};
      args.insert(args.end(), extra.begin(), extra.end());
      o.require(cli(args) == 0, kind + " run");
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      const fs::path other = dirs[1] / entry.path().filename();
      o.require(fs::exists(other) && slurp(entry.path()) == slurp(other), entry.path().filename().string());
      ++files;
    }
  }
  o.detail << files << " files compared";
  o.require(files >= 12, "artifacts present");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"identity suite", identities},
      {"Taylor r=1 equals Abel-Poisson s=1", operator_identity},
      {"Poisson bracket two routes and finite differences", two_routes},
      {"approximation error vs naive oracle", oracle_equivalence},
      {"Taylor r=1 rates", theorem1_order1},
      {"Taylor r=2 rates", theorem1_order2},
      {"generalized Abel-Poisson equivalence", equivalence7},
      {"partial sums and Fejer coupling", proposition1},
      {"condition B checker", condition_b},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << " exception: " << e.what();
    }
    failures += o.passed ? 0 : 1;
    std::cout << "criterion " << (i + 1) << " (" << criteria[i].first << "): " << (o.passed ? "PASS" : "FAIL")
              << " - " << o.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
