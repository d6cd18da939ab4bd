#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "splab/errors.hpp"
#include "splab/verdict.hpp"

namespace splab {
namespace {

TEST(LogLogSlope, RecoversPowers) {
  std::vector<double> x, y;
  for (int j = 1; j <= 10; ++j) {
    x.push_back(std::ldexp(1.0, j));
    y.push_back(3.0 * std::pow(x.back(), -0.75));
  }
  EXPECT_NEAR(log_log_slope(x, y), -0.75, 1e-12);
  EXPECT_THROW(log_log_slope(std::vector<double>{1.0}, std::vector<double>{1.0}), PreconditionError);
  EXPECT_THROW(log_log_slope(std::vector<double>{2.0, 2.0}, std::vector<double>{1.0, 3.0}), PreconditionError);
}

TEST(RatioTrend, FlatPassesGrowingFails) {
  std::vector<double> x, flat, growing, saturating;
  for (int j = 1; j <= 14; ++j) {
    const double t = std::ldexp(1.0, -j);
    x.push_back(t);
    flat.push_back(2.0);
    growing.push_back(std::log(1.0 / t));
    saturating.push_back(1.0 - 0.9 * std::pow(t, 0.5));
  }
  EXPECT_EQ(ratio_trend(x, flat, Asymptote::kZero, {}).verdict, Verdict::kPass);
  EXPECT_EQ(ratio_trend(x, growing, Asymptote::kZero, {}).verdict, Verdict::kFail);
  EXPECT_EQ(ratio_trend(x, saturating, Asymptote::kZero, {}).verdict, Verdict::kPass);
  std::vector<double> bad = flat;
  bad[3] = INFINITY;
  EXPECT_EQ(ratio_trend(x, bad, Asymptote::kZero, {}).verdict, Verdict::kInconclusive);
}

TEST(RatioTrend, DirectionMatters) {
  std::vector<double> n, r;
  for (int j = 2; j <= 16; ++j) {
    n.push_back(std::ldexp(1.0, j));
    r.push_back(std::sqrt(n.back()));
  }
  EXPECT_EQ(ratio_trend(n, r, Asymptote::kInfinity, {}).verdict, Verdict::kFail);
  EXPECT_EQ(ratio_trend(n, r, Asymptote::kZero, {}).verdict, Verdict::kPass);
}

TEST(RatioTrend, FewPositiveRatiosAreFlat) {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> r{0.0, 0.0, 5.0, 0.0, 7.0};
  EXPECT_EQ(ratio_trend(x, r, Asymptote::kInfinity, {}).verdict, Verdict::kPass);
  EXPECT_EQ(to_string(Verdict::kInconclusive), "inconclusive");
}

}  // namespace
}  // namespace splab
