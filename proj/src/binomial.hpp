#pragma once

#include <cstdint>

// Log-domain binomial helpers shared by the summation and calculus modules.
// Terms are b(nu, k; rho) = C(nu, k) (1 - rho)^k rho^(nu - k), the binomial
// law of K ~ Bin(nu, 1 - rho).
namespace splab::detail {

double log_binomial(std::int64_t n, std::int64_t k);

// b(nu, k; rho) with exact handling of rho in {0, 1}.
double binomial_term(std::int64_t nu, std::int64_t k, double rho);

// P(K <= r - 1) = sum_{k < r} b(nu, k; rho), terms sorted before summation.
double binomial_lower_tail(std::int64_t nu, std::int64_t r, double rho);

// P(K >= r) computed without cancellation.
double binomial_upper_tail(std::int64_t nu, std::int64_t r, double rho);

// nu! / (nu - r)! as a double, +inf on overflow; and its logarithm.
double falling_factorial(std::int64_t nu, std::int64_t r);
double log_falling_factorial(std::int64_t nu, std::int64_t r);

}  // namespace splab::detail
