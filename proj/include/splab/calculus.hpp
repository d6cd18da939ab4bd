#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "splab/numeric.hpp"
#include "splab/spectrum.hpp"

namespace splab {

// Radial multiplier psi(k) = psi(|k|_1) defining a generalized derivative.
//
//   radial_power(r):      psi = nu^-r          (f^(r)),  zero set {0} for r > 0
//   falling_factorial(r): psi = (nu-r)!/nu!    (f_[r]),  zero set {0..r-1}
//   custom(table):        psi = table[nu]
//
// Order 0 in either family is the identity.
class PsiWeight {
 public:
  enum class Kind { kRadialPower, kFallingFactorial, kCustom };

  static PsiWeight radial_power(double r);
  static PsiWeight falling_factorial(int r);
  static PsiWeight custom(std::map<std::int64_t, double> table,
                          std::set<std::int64_t> zero_set_orders);

  Kind kind() const { return kind_; }
  double order() const { return order_; }
  bool is_identity() const;
  bool in_zero_set(std::int64_t nu) const;
  std::string describe() const;

  // psi(nu); 0 on the zero set.
  double value(std::int64_t nu) const;

  // |x| / |psi(nu)|, evaluated in the log domain when 1/psi overflows.
  double divide(double x, std::int64_t nu) const;

  // 1/|psi(nu)| <= nu^order for the radial families; none for custom tables.
  std::optional<BlockWeight> reciprocal_bound() const;

 private:
  PsiWeight(Kind kind, double order) : kind_(kind), order_(order) {}

  Kind kind_;
  double order_ = 0.0;
  std::map<std::int64_t, double> table_;
  std::set<std::int64_t> zero_set_;
};

struct PoissonParams {
  double rho = 0.0;
  int r = 0;

  void validate() const;
};

// Coefficients of order nu divided by psi(nu), zero-set blocks set to zero.
// The tail is re-certified through the family rule (or the generic rule)
// when psi is radial; custom weights leave it uncertified.
Spectrum psi_derivative(const Spectrum& f, const PsiWeight& psi);
BlockProfile psi_derivative(const BlockProfile& a, const PsiWeight& psi);

// a_nu -> rho^nu a_nu.
BlockProfile poisson_transform(const BlockProfile& a, double rho);

// || d^r/d rho^r P(f)(rho, .) ||_{S^p}
//   = ( sum_{nu>=r} (nu!/(nu-r)!)^p a_nu^p rho^((nu-r)p) )^(1/p).
Interval poisson_radial_derivative_norm(const BlockProfile& a, const PoissonParams& params);

// rho^r times the radial derivative norm; equals ||P(f_[r])(rho, .)||.
Interval poisson_of_bracket_derivative_norm(const BlockProfile& a, const PoissonParams& params);

}  // namespace splab
