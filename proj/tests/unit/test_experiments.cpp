#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "splab/errors.hpp"
#include "splab/experiments.hpp"
#include "splab/families.hpp"
#include "splab/summation.hpp"

namespace splab {
namespace {

std::vector<std::pair<double, Interval>> synthetic(const std::function<double(double)>& f) {
  std::vector<std::pair<double, Interval>> v;
  for (int j = 1; j <= 14; ++j) {
    const double x = std::ldexp(1.0, -j);
    v.push_back({x, {f(x), f(x)}});
  }
  return v;
}

TEST(BigORatioTest, SyntheticCases) {
  const auto bound = [](double x) { return std::sqrt(x); };
  const RateReport same = big_O_ratio_test("same", synthetic(bound), bound, Asymptote::kZero);
  EXPECT_EQ(same.verdict, Verdict::kPass);
  for (const auto& pt : same.points) EXPECT_DOUBLE_EQ(pt.ratio, 1.0);
  ASSERT_TRUE(same.fitted_slope.has_value());
  EXPECT_NEAR(*same.fitted_slope, 0.5, 1e-12);

  const RateReport log_growth = big_O_ratio_test(
      "log", synthetic([&](double x) { return bound(x) * std::log(1.0 / x); }), bound, Asymptote::kZero);
  EXPECT_EQ(log_growth.verdict, Verdict::kFail);

  const RateReport zero = big_O_ratio_test("zero", synthetic([](double) { return 0.0; }), bound, Asymptote::kZero);
  EXPECT_EQ(zero.verdict, Verdict::kPass);
  for (const auto& pt : zero.points) EXPECT_EQ(pt.ratio, 0.0);
  EXPECT_FALSE(zero.fitted_slope.has_value());

  auto few = synthetic(bound);
  few.resize(3);
  EXPECT_THROW(big_O_ratio_test("few", few, bound, Asymptote::kZero), PreconditionError);
  EXPECT_THROW(big_O_ratio_test("neg", synthetic(bound), [](double) { return 0.0; }, Asymptote::kZero),
               PreconditionError);
}

TEST(Admissibility, RejectsModuliFailingConditionB) {
  EXPECT_NO_THROW(require_admissible(Modulus::power(0.5)));
  EXPECT_THROW(require_admissible(Modulus::power_log(0.0, -1.0)), PreconditionError);
  const BlockProfile a = Family::power(1.0, 1).profile(2.0, 1000);
  EXPECT_THROW(theorem1_experiment(a, 1, Modulus::power_log(0.0, -1.0)), PreconditionError);
}

TEST(Proposition1, SingleBlock) {
  const std::int64_t nu0 = 5;
  const BlockProfile a = test::single_block(nu0, 2.0, 2.0);
  const TheoremOutcome o = proposition1_experiment(a, Modulus::power(1.0));
  for (const auto& pt : o.report("A_partial_sums_of_derivative").points) {
    if (pt.parameter >= nu0) {
      EXPECT_DOUBLE_EQ(pt.value.upper, nu0 * 2.0);
    }
  }
  for (const auto& pt : o.report("B_fejer_error").points) {
    EXPECT_NEAR(pt.value.upper, nu0 / (pt.parameter + 1.0) * 2.0, 1e-14);
  }
  EXPECT_EQ(o.overall(), Verdict::kPass);
}

TEST(Proposition1, PowerFamilyRatesAndControl) {
  const BlockProfile a = Family::power(1.0, 1).profile(2.0, 100000);
  const TheoremOutcome ok = proposition1_experiment(a, Modulus::power(0.5));
  EXPECT_EQ(ok.overall(), Verdict::kPass);
  EXPECT_NEAR(*ok.report("A_partial_sums_of_derivative").fitted_slope, 0.5, 0.05);
  EXPECT_NEAR(*ok.report("B_fejer_error").fitted_slope, -0.5, 0.05);

  const TheoremOutcome bad = proposition1_experiment(a, Modulus::power(0.9));
  EXPECT_EQ(bad.report("A_partial_sums_of_derivative").verdict, Verdict::kFail);
  EXPECT_EQ(bad.report("B_fejer_error").verdict, Verdict::kFail);
}

TEST(Theorem1, OrderOneSingleBlock) {
  const std::int64_t nu0 = 4;
  const TheoremOutcome o = theorem1_experiment(test::single_block(nu0, 1.5, 2.0), 1, Modulus::power(1.0));
  const RateReport& e = o.report("E_taylor_error");
  for (const auto& pt : e.points) {
    const double rho = 1.0 - pt.parameter;
    EXPECT_NEAR(pt.value.upper, (1.0 - std::pow(rho, nu0)) * 1.5, 1e-14);
  }
  EXPECT_NEAR(e.points.back().ratio, nu0 * 1.5, 1e-3);
  EXPECT_EQ(e.verdict, Verdict::kPass);
}

TEST(Theorem1, ImplicationsFollowSupport) {
  const BlockProfile y = Family::power(1.0, 1).profile(2.0, 10000);
  const TheoremOutcome a = theorem1_experiment(y, 1, Modulus::power(0.5));
  EXPECT_TRUE(a.y_supported);
  EXPECT_EQ(a.implications.size(), 3u);

  const Spectrum g = Family::geometric(0.5, 2).spectrum(2.0, 40);
  const TheoremOutcome b = theorem1_experiment(g, 2.0, 1, Modulus::power(0.5));
  EXPECT_FALSE(b.y_supported);
  for (const auto& i : b.implications) EXPECT_NE(i.name, "3=>1");
  EXPECT_EQ(b.implications.size(), 2u);
}

TEST(Theorem1, NonYProfileLeavesMembershipOpen) {
  const BlockProfile a = Family::geometric(0.5, 2).profile(2.0, 60);
  const TheoremOutcome o = theorem1_experiment(a, 1, Modulus::power(0.5));
  EXPECT_EQ(o.report("membership").verdict, Verdict::kInconclusive);
}

TEST(Theorem2, OrderOneReproducesTheorem1) {
  const BlockProfile a = Family::power(1.0, 1).profile(2.0, 100000);
  const TheoremOutcome t1 = theorem1_experiment(a, 1, Modulus::power(0.5));
  const TheoremOutcome t2 = theorem2_experiment(a, 1.0, Modulus::power(0.5));
  ASSERT_EQ(t1.reports.size(), t2.reports.size());
  for (std::size_t i = 0; i < t1.reports.size(); ++i) {
    const auto& x = t1.reports[i].report.points;
    const auto& y = t2.reports[i].report.points;
    ASSERT_EQ(x.size(), y.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      EXPECT_EQ(x[j].value, y[j].value);
      EXPECT_EQ(x[j].ratio, y[j].ratio);
    }
  }
}

TEST(Theorem2, SingleBlockOrderTwo) {
  const std::int64_t nu0 = 3;
  const TheoremOutcome o = theorem2_experiment(test::single_block(nu0, 1.0, 2.0), 2.0, Modulus::power(1.0));
  const RateReport& e = o.report("E_abel_poisson_error");
  for (const auto& pt : e.points) {
    EXPECT_NEAR(pt.value.upper, 1.0 - std::pow(1.0 - pt.parameter, double(nu0 * nu0)), 1e-14);
  }
  // 1 - rho^9 ~ 9 (1 - rho) once 9 (1 - rho) is small.
  std::vector<double> x, y;
  for (const auto& pt : e.points) {
    if (pt.parameter <= std::ldexp(1.0, -8)) {
      x.push_back(pt.parameter);
      y.push_back(pt.value.upper);
    }
  }
  EXPECT_NEAR(log_log_slope(x, y), 1.0, 0.05);
  EXPECT_EQ(e.verdict, Verdict::kPass);
}

TEST(Theorem2, PowerFamilyOrderTwoPasses) {
  const BlockProfile a = Family::power(2.0, 1).profile(2.0, 100000);
  const TheoremOutcome o = theorem2_experiment(a, 2.0, Modulus::power(0.5));
  EXPECT_EQ(o.overall(), Verdict::kPass);
  EXPECT_THROW(theorem2_experiment(a, 0.5, Modulus::power(0.5)), PreconditionError);
}

TEST(Equivalence7, OrderOneIsIdentity) {
  const BlockProfile a = Family::power(2.0, 1).profile(2.0, 1000);
  const RateReport r = equivalence7_experiment(a, 1.0, dyadic_rho_grid(1, 10));
  for (const auto& pt : r.points) EXPECT_DOUBLE_EQ(pt.ratio, 1.0);
  EXPECT_EQ(r.verdict, Verdict::kPass);
}

TEST(Equivalence7, SingleBlockLimit) {
  const std::int64_t nu0 = 3;
  const double p = 2.0;
  const RateReport r = equivalence7_experiment(test::single_block(nu0, 1.0, p), 2.0, dyadic_rho_grid(1, 16));
  for (const auto& pt : r.points) {
    const double rho = 1.0 - pt.parameter;
    const double expected =
        std::pow((1.0 - std::pow(rho, double(nu0 * nu0))) / (nu0 * (1.0 - std::pow(rho, double(nu0)))), p);
    EXPECT_NEAR(pt.ratio, expected, 1e-9);
  }
  EXPECT_NEAR(r.points.back().ratio, 1.0, 1e-3);
}

TEST(Equivalence7, GeometricTwoDimensions) {
  const Family g = Family::geometric(0.5, 2);
  const RateReport r = equivalence7_experiment(g.profile(2.0, g.default_cutoff(2.0)), 2.0, dyadic_rho_grid(1, 14));
  EXPECT_EQ(r.verdict, Verdict::kPass);
  const auto at = [&](int j) { return r.points[static_cast<std::size_t>(j - 1)].ratio; };
  EXPECT_GE(at(10), 0.9);
  EXPECT_LE(at(10), 1.1);
  EXPECT_LT(std::abs(at(12) - 1.0), std::abs(at(8) - 1.0));
  EXPECT_THROW(equivalence7_experiment(g.profile(2.0, 30), 2.0, {0.5, 0.6}), PreconditionError);
  // ||f'|| diverges for a_nu = 1/nu.
  EXPECT_THROW(equivalence7_experiment(Family::power(1.0, 1).profile(2.0, 100), 1.0, dyadic_rho_grid(1, 8)),
               PreconditionError);
}

TEST(FejerBound, DominatesError) {
  const BlockProfile a = Family::power(1.0, 1).profile(2.0, 20000);
  for (std::int64_t n : {4, 64, 1024}) {
    const double err = approximation_error(SummationMethod::fejer(n), a).upper;
    EXPECT_GE(fejer_summation_by_parts_bound(a, n), err * err * (1.0 - 1e-12)) << n;
  }
}

}  // namespace
}  // namespace splab
