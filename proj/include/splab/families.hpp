#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splab/spectrum.hpp"
#include "splab/tail_rule.hpp"

namespace splab {

// Test functions with known coefficient rules and closed-form tail rules.
//
//   geometric(q, d):    |f^(k)| = q^|k|_1                              q in (0, 1)
//   power(beta, d):     |f^(k)| = nu^-beta c(d,nu)^(-1/p), a_0 = 0     so a_nu = nu^-beta
//   y_power(beta, d):   as power, supported in Z^d_+                   beta > 1/p
//   single_block(v, d): |f^(k)| = 1 on |k|_1 = v
//   lacunary(b, d):     f^(b^j e_1) = b^-j, j >= 0                      b >= 2
//
// c(d, nu) is the number of k with |k|_1 = nu (or of nonnegative k for
// y_power). Phases are +1 unless a seed is supplied.
class Family {
 public:
  enum class Kind { kGeometric, kPower, kYPower, kSingleBlock, kLacunary };

  static Family geometric(double q, int d);
  static Family power(double beta, int d);
  static Family y_power(double beta, int d);
  static Family single_block(std::int64_t nu0, int d);
  static Family lacunary(std::int64_t base, int d);

  Kind kind() const { return kind_; }
  int dimension() const { return d_; }
  double q() const { return q_; }
  double beta() const { return beta_; }
  std::int64_t nu0() const { return nu0_; }
  std::int64_t base() const { return base_; }
  bool y_supported() const;
  std::string name() const;

  // Throws DomainError when the S^p norm would be infinite.
  void check_exponent(double p) const;

  // Cutoff used when none is requested: 10^5 for power-type profiles, the
  // first N with tail mass <= 1e-12 for geometric, nu0 for a single block.
  std::int64_t default_cutoff(double p) const;
  // Largest cutoff not above `wanted` whose enumeration fits the budget.
  std::int64_t spectrum_cutoff(std::int64_t wanted, const Limits& limits = {}) const;

  // Bound on sum_{from < nu <= to} (w(nu) ||H_nu f||_q)^q for from >= 0.
  TailRulePtr tail_rule(double p) const;

  BlockProfile profile(double p, std::int64_t cutoff) const;
  Spectrum spectrum(double p, std::int64_t cutoff, std::optional<std::uint64_t> phase_seed = {},
                    const Limits& limits = {}) const;

 private:
  Family(Kind kind, int d) : kind_(kind), d_(d) {}

  double coefficient(std::int64_t nu, double p) const;

  Kind kind_;
  int d_;
  double q_ = 0.0;
  double beta_ = 0.0;
  std::int64_t nu0_ = 0;
  std::int64_t base_ = 0;
};

struct CatalogEntry {
  std::string name;
  std::string parameters;
  std::string coefficients;
  std::string tail_rule;
};

std::vector<CatalogEntry> catalog();

}  // namespace splab
