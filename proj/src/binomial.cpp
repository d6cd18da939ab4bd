#include "binomial.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "splab/numeric.hpp"

namespace splab::detail {

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -kInf;
  k = std::min(k, n - k);
  if (k <= 64) {
    double s = 0.0;
    for (std::int64_t i = 0; i < k; ++i) {
      s += std::log(static_cast<double>(n - i) / static_cast<double>(i + 1));
    }
    return s;
  }
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double binomial_term(std::int64_t nu, std::int64_t k, double rho) {
  if (k < 0 || k > nu) return 0.0;
  const std::int64_t j = nu - k;
  if (rho == 0.0) return j == 0 ? 1.0 : 0.0;
  if (rho == 1.0) return k == 0 ? 1.0 : 0.0;
  if (k == 0) return std::pow(rho, static_cast<double>(nu));
  double lg = log_binomial(nu, k) + static_cast<double>(k) * std::log1p(-rho);
  if (j > 0) lg += static_cast<double>(j) * std::log(rho);
  return std::exp(lg);
}

double binomial_lower_tail(std::int64_t nu, std::int64_t r, double rho) {
  if (r <= 0) return 0.0;
  if (r > nu) return 1.0;
  if (r == 1) return binomial_term(nu, 0, rho);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(r));
  for (std::int64_t k = 0; k < r; ++k) terms.push_back(binomial_term(nu, k, rho));
  std::sort(terms.begin(), terms.end());
  CompensatedSum s;
  for (double t : terms) s.add(t);
  return s.value();
}

double binomial_upper_tail(std::int64_t nu, std::int64_t r, double rho) {
  if (r <= 0) return 1.0;
  if (r > nu) return 0.0;
  if (rho == 0.0) return 1.0;
  if (rho == 1.0) return 0.0;
  if (r == 1) return -std::expm1(static_cast<double>(nu) * std::log(rho));

  // With mean >= r the upper tail is at least about one half, so the
  // complement of the short lower sum loses nothing.
  const double mean = static_cast<double>(nu) * (1.0 - rho);
  if (mean >= static_cast<double>(r)) return 1.0 - binomial_lower_tail(nu, r, rho);

  // Otherwise the mode sits below r and the terms from k = r on decay at
  // least geometrically; sum them directly until they no longer matter.
  const double log_odds = std::log1p(-rho) - std::log(rho);
  double lg = log_binomial(nu, r) + static_cast<double>(r) * std::log1p(-rho) +
              static_cast<double>(nu - r) * std::log(rho);
  CompensatedSum s;
  for (std::int64_t k = r; k <= nu; ++k) {
    const double t = std::exp(lg);
    s.add(t);
    if (t <= 1e-18 * s.value() || t == 0.0) break;
    lg += std::log(static_cast<double>(nu - k) / static_cast<double>(k + 1)) + log_odds;
  }
  return s.value();
}

double log_falling_factorial(std::int64_t nu, std::int64_t r) {
  if (r > nu) return -kInf;
  double s = 0.0;
  for (std::int64_t i = 0; i < r; ++i) s += std::log(static_cast<double>(nu - i));
  return s;
}

double falling_factorial(std::int64_t nu, std::int64_t r) {
  if (r > nu) return 0.0;
  double prod = 1.0;
  for (std::int64_t i = 0; i < r; ++i) {
    prod *= static_cast<double>(nu - i);
    if (prod > 1e300) return kInf;
  }
  return prod;
}

}  // namespace splab::detail
