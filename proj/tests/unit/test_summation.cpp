#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "splab/errors.hpp"
#include "splab/families.hpp"
#include "splab/oracle.hpp"
#include "splab/summation.hpp"

namespace splab {
namespace {

// sum_{k<r} C(nu,k) (1-rho)^k rho^(nu-k) by direct products.
double lambda_direct(int nu, int r, double rho) {
  double s = 0.0;
  for (int k = 0; k < r; ++k) {
    double c = 1.0;
    for (int i = 0; i < k; ++i) c = c * (nu - i) / (i + 1);
    s += c * std::pow(1.0 - rho, k) * std::pow(rho, nu - k);
  }
  return s;
}

std::vector<double> rho_grid_99() {
  std::vector<double> g;
  for (int i = 1; i <= 99; ++i) g.push_back(i / 100.0);
  return g;
}

TEST(Multipliers, Definitions) {
  const MultiplierRow fejer = multipliers(SummationMethod::fejer(3), 5);
  const std::vector<double> expected{1.0, 0.75, 0.5, 0.25, 0.0, 0.0};
  EXPECT_EQ(fejer.values, expected);
  const MultiplierRow tp = multipliers(SummationMethod::triangular_partial(0), 3);
  EXPECT_EQ(tp.values, (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
  const MultiplierRow ap = multipliers(SummationMethod::abel_poisson(0.9, 2.0), 3);
  EXPECT_EQ(ap.values[0], 1.0);
  EXPECT_DOUBLE_EQ(ap.values[2], std::pow(0.9, 4.0));
  const MultiplierRow t = multipliers(SummationMethod::taylor(0.3, 3), 6);
  EXPECT_EQ(t.values[0], 1.0);
  EXPECT_EQ(t.values[2], 1.0);
  EXPECT_NEAR(t.values[5], lambda_direct(5, 3, 0.3), 1e-15);
}

TEST(Multipliers, StayInUnitIntervalWithGaps) {
  for (const auto& m : {SummationMethod::fejer(10), SummationMethod::abel_poisson(0.7, 1.5),
                        SummationMethod::taylor(0.8, 4), SummationMethod::triangular_partial(7)}) {
    const MultiplierRow row = multipliers(m, 100);
    for (std::size_t nu = 0; nu <= 100; ++nu) {
      EXPECT_GE(row.values[nu], 0.0);
      EXPECT_LE(row.values[nu], 1.0);
      EXPECT_NEAR(row.values[nu] + row.gaps[nu], 1.0, 1e-14) << m.describe() << " nu=" << nu;
    }
  }
}

TEST(Multipliers, TaylorOrderOneIsAbelPoisson) {
  for (double rho : {0.0, 0.1, 0.5, 0.9, 0.999}) {
    const MultiplierRow t = multipliers(SummationMethod::taylor(rho, 1), 10000);
    const MultiplierRow a = multipliers(SummationMethod::abel_poisson(rho, 1.0), 10000);
    EXPECT_EQ(t.values, a.values);
    EXPECT_EQ(t.gaps, a.gaps);
  }
}

TEST(Multipliers, RejectBadParameters) {
  EXPECT_THROW(SummationMethod::fejer(0), DomainError);
  EXPECT_THROW(SummationMethod::triangular_partial(-1), DomainError);
  EXPECT_THROW(SummationMethod::abel_poisson(1.0, 1.0), DomainError);
  EXPECT_THROW(SummationMethod::abel_poisson(0.5, 0.0), DomainError);
  EXPECT_THROW(SummationMethod::taylor(0.5, 0), DomainError);
}

TEST(LambdaCoeff, Examples) {
  EXPECT_DOUBLE_EQ(lambda_coeff(3, 1, 0.5), 0.125);
  EXPECT_NEAR(lambda_coeff(4, 2, 0.5), 0.3125, 1e-16);
  for (int r = 1; r <= 5; ++r) {
    for (double rho : {0.2, 0.6}) EXPECT_NEAR(lambda_coeff(r, r, rho), 1.0 - std::pow(1.0 - rho, r), 1e-15);
  }
  EXPECT_THROW(lambda_coeff(2, 3, 0.5), DomainError);
}

TEST(LambdaCoeff, MatchesDirectSumAndComplement) {
  for (int r = 1; r <= 5; ++r) {
    for (int nu = r; nu <= 60; ++nu) {
      for (double rho : {0.05, 0.3, 0.7, 0.95}) {
        const double direct = lambda_direct(nu, r, rho);
        EXPECT_NEAR(lambda_coeff(nu, r, rho), direct, 1e-13);
        EXPECT_NEAR(lambda_complement(nu, r, rho), 1.0 - direct, 1e-13);
      }
    }
  }
  // Complement without cancellation when it is tiny.
  EXPECT_GT(lambda_complement(3, 2, 1.0 - 1e-9), 0.0);
  EXPECT_NEAR(lambda_complement(3, 2, 1.0 - 1e-9) / 3e-18, 1.0, 1e-6);
}

TEST(Apply, Examples) {
  const BlockProfile fejer = apply(SummationMethod::fejer(3), test::single_block(2, 1.0, 1.0));
  EXPECT_DOUBLE_EQ(fejer[2], 0.5);
  const BlockProfile ap = apply(SummationMethod::abel_poisson(0.9, 2.0), test::single_block(2, 3.0, 2.0));
  EXPECT_DOUBLE_EQ(ap[2], 3.0 * std::pow(0.9, 4.0));
  const BlockProfile trunc =
      apply(SummationMethod::triangular_partial(2), Family::geometric(0.5, 1).profile(1.0, 10));
  EXPECT_GT(trunc[2], 0.0);
  EXPECT_EQ(trunc[3], 0.0);
  EXPECT_TRUE(trunc.exact());
}

TEST(ApproximationError, Examples) {
  const BlockProfile truncated(2.0, {1.0, 0.5, 0.25}, TailCertificate::exact_tail());
  EXPECT_EQ(approximation_error(SummationMethod::triangular_partial(2), truncated), (Interval{0.0, 0.0}));
  EXPECT_DOUBLE_EQ(approximation_error(SummationMethod::fejer(3), test::single_block(2, 1.0, 1.0)).upper, 0.5);
  for (int r = 1; r <= 4; ++r) {
    const int nu = 7;
    const double rho = 0.6;
    double direct = 0.0;
    for (int k = r; k <= nu; ++k) {
      double c = 1.0;
      for (int i = 0; i < k; ++i) c = c * (nu - i) / (i + 1);
      direct += c * std::pow(1.0 - rho, k) * std::pow(rho, nu - k);
    }
    const Interval e = approximation_error(SummationMethod::taylor(rho, r), test::single_block(nu, 2.0, 2.0));
    EXPECT_NEAR(e.upper, 2.0 * direct, 1e-14);
  }
}

TEST(ApproximationError, AgreesWithNaiveOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 1 + trial % 3;
    const Spectrum f = oracle::random_exact_spectrum(rng, d, 6);
    for (const auto& m : {SummationMethod::fejer(4), SummationMethod::triangular_partial(3),
                          SummationMethod::abel_poisson(0.8, 1.3), SummationMethod::taylor(0.7, 3)}) {
      const double p = 1.0 + 0.5 * trial;
      const Interval e = approximation_error(m, f, p);
      EXPECT_EQ(e.lower, e.upper);
      EXPECT_LT(test::rel_diff(e.upper, oracle::naive_error(m, f, p)), 1e-12) << m.describe();
    }
  }
}

TEST(ApproximationError, TailEnclosesLargerCutoff) {
  const Family fam = Family::power(1.0, 1);
  const auto m = SummationMethod::abel_poisson(0.99, 1.0);
  const Interval coarse = approximation_error(m, fam.profile(2.0, 1000));
  const Interval fine = approximation_error(m, fam.profile(2.0, 100000));
  EXPECT_LE(coarse.lower, fine.lower);
  EXPECT_GE(coarse.upper, fine.upper);
}

TEST(Identities, BinomialSumIsOne) {
  EXPECT_EQ(verify_identity_8(0, {0.5}).max_deviation, 0.0);
  const IdentityReport small = verify_identity_8(4, {0.3});
  EXPECT_LE(small.max_deviation, 1e-13);
  for (int nu : {60, 200, 1000}) EXPECT_TRUE(verify_identity_8(nu, rho_grid_99()).passed) << nu;
}

TEST(Identities, UpperTailBound) {
  const IdentityReport eq = verify_inequality_12(3, 3, {0.4});
  EXPECT_TRUE(eq.passed);
  EXPECT_NEAR(eq.max_deviation, 0.0, 1e-15);
  // At rho = 0.7: sum_{k>=2} C(5,k) 0.3^k 0.7^(5-k) = 1 - 0.7^5 - 1.5 * 0.7^4 = 0.47178,
  // RHS C(5,2) 0.3^2 = 0.9. The k >= 3 part alone is 0.16308.
  const IdentityReport r = verify_inequality_12(5, 2, {0.7});
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(1.0 - lambda_direct(5, 2, 0.7), 0.47178, 1e-12);
  EXPECT_NEAR(1.0 - lambda_direct(5, 3, 0.7), 0.16308, 1e-12);
  EXPECT_LE(r.max_deviation, 0.0);
  for (int r2 = 1; r2 <= 5; ++r2) EXPECT_TRUE(verify_inequality_12(200, r2, rho_grid_99()).passed);
}

}  // namespace
}  // namespace splab
