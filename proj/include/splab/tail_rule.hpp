#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace splab {

inline constexpr std::int64_t kUnbounded = -1;

// Diagonal block weight w(nu) = factor * nu^exponent * base^nu. Every
// diagonal operator in the library is dominated by one of these on the tail
// (psi-derivatives by nu^r, Poisson by rho^nu, summation multipliers by 1).
struct BlockWeight {
  double exponent = 0.0;
  double base = 1.0;
  double factor = 1.0;

  double at(std::int64_t nu) const;
  double log_at(std::int64_t nu) const;
  BlockWeight times(const BlockWeight& other) const {
    return {exponent + other.exponent, base * other.base, factor * other.factor};
  }
};

// sup of w(nu) over from < nu <= to (to == kUnbounded for no upper limit).
double sup_weight(const BlockWeight& w, std::int64_t from, std::int64_t to);

// Source of certified upper bounds on weighted block mass
//   sum_{from < nu <= to} (w(nu) a_nu)^p
// for a profile a_nu known only in part. Families supply closed-form rules;
// any certified tail gets at least the generic sup-times-mass rule.
class TailRule {
 public:
  virtual ~TailRule() = default;
  virtual double mass_bound(const BlockWeight& w, std::int64_t from, std::int64_t to,
                            double p) const = 0;
  virtual std::string describe() const = 0;
};

using TailRulePtr = std::shared_ptr<const TailRule>;

// Rule for a profile whose mass beyond `cutoff` is at most `mass` in the
// exponent `p`: bound = sup w^q * mass^(q/p), valid for q >= p.
TailRulePtr generic_tail_rule(double mass, double p, std::int64_t cutoff);

// Rule for the profile w'(nu) a_nu given a rule for a_nu.
TailRulePtr reweighted(TailRulePtr base, const BlockWeight& extra);

}  // namespace splab

namespace splab {

// Upper bound on sum_{from < nu <= to} exp(log_factor) nu^exponent base^nu,
// nu >= 1. Explicit summation where it is cheap, then a ratio or integral
// comparison. +inf when the series diverges.
double poly_geometric_mass(double log_factor, double exponent, double base, std::int64_t from,
                           std::int64_t to);

}  // namespace splab
