#include <gtest/gtest.h>

#include "splab/errors.hpp"
#include "splab/families.hpp"

namespace splab {
namespace {

TEST(Families, PowerProfileIsBlockNormalized) {
  for (int d : {1, 2, 3}) {
    const BlockProfile a = Family::power(1.3, d).profile(2.0, 50);
    EXPECT_EQ(a[0], 0.0);
    for (std::size_t nu = 1; nu <= 50; ++nu) EXPECT_NEAR(a[nu], std::pow(nu, -1.3), 1e-14);
  }
  // Spectrum coefficients spread the block mass evenly.
  const Spectrum f = Family::power(1.3, 2).spectrum(2.0, 6);
  const BlockProfile b = profile_of(f, 2.0);
  for (std::size_t nu = 1; nu <= 6; ++nu) EXPECT_NEAR(b[nu], std::pow(nu, -1.3), 1e-14);
}

TEST(Families, YPowerLivesOnPositiveOrthant) {
  const Spectrum f = Family::y_power(1.0, 2).spectrum(2.0, 5);
  EXPECT_TRUE(f.y_supported());
  for (const auto& [k, c] : f.coefficients()) EXPECT_TRUE(k.in_y());
  EXPECT_EQ(f.size(), 20u);
}

TEST(Families, GeometricAndLacunary) {
  const BlockProfile g = Family::geometric(0.5, 1).profile(1.0, 5);
  EXPECT_EQ(g[0], 1.0);
  EXPECT_DOUBLE_EQ(g[3], 0.25);
  const BlockProfile l = Family::lacunary(2, 1).profile(2.0, 20);
  EXPECT_EQ(l[1], 1.0);
  EXPECT_EQ(l[8], 0.125);
  EXPECT_EQ(l[9], 0.0);
  EXPECT_TRUE(Family::lacunary(2, 3).y_supported());
  EXPECT_FALSE(Family::geometric(0.5, 2).y_supported());
}

TEST(Families, SingleBlockIsExact) {
  const Family s = Family::single_block(4, 2);
  const BlockProfile a = s.profile(1.0, s.default_cutoff(1.0));
  EXPECT_TRUE(a.exact());
  EXPECT_DOUBLE_EQ(a[4], 16.0);
}

TEST(Families, ExponentValidation) {
  EXPECT_THROW(Family::power(0.4, 1).check_exponent(2.0), DomainError);
  EXPECT_THROW(Family::power(0.4, 1).profile(2.0, 10), DomainError);
  EXPECT_NO_THROW(Family::power(0.6, 1).check_exponent(2.0));
  EXPECT_THROW(Family::geometric(1.0, 1), DomainError);
  EXPECT_THROW(Family::lacunary(1, 1), DomainError);
}

TEST(Families, DefaultCutoffs) {
  const Family g = Family::geometric(0.5, 2);
  const std::int64_t n = g.default_cutoff(2.0);
  EXPECT_LE(g.profile(2.0, n).tail_mass(), 1e-12);
  EXPECT_EQ(Family::power(1.0, 1).default_cutoff(2.0), 100000);
}

TEST(Families, SpectrumBudget) {
  const Family f = Family::power(1.0, 3);
  Limits small;
  small.element_budget = 10'000;
  const std::int64_t n = f.spectrum_cutoff(1000, small);
  std::uint64_t total = 0;
  for (std::int64_t nu = 0; nu <= n; ++nu) total += block_count(3, nu);
  EXPECT_LE(total, small.element_budget);
  EXPECT_GT(total + block_count(3, n + 1), small.element_budget);
  EXPECT_THROW(f.spectrum(2.0, 1000, {}, small), ResourceError);
}

TEST(Families, SeedChangesPhasesNotNorms) {
  const Family f = Family::geometric(0.6, 2);
  const Spectrum a = f.spectrum(2.0, 8, 1);
  const Spectrum b = f.spectrum(2.0, 8, 2);
  EXPECT_NE(a.coefficients()[3].second, b.coefficients()[3].second);
  EXPECT_DOUBLE_EQ(sp_norm(a, 2.0).upper, sp_norm(b, 2.0).upper);
  const Spectrum c = f.spectrum(2.0, 8, 1);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.coefficients()[i], c.coefficients()[i]);
}

TEST(Families, CatalogListsFive) {
  const auto entries = catalog();
  ASSERT_EQ(entries.size(), 5u);
  for (const auto& e : entries) {
    EXPECT_FALSE(e.name.empty());
    EXPECT_FALSE(e.tail_rule.empty());
  }
}

}  // namespace
}  // namespace splab
