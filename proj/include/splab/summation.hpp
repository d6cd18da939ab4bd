#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "splab/numeric.hpp"
#include "splab/spectrum.hpp"

namespace splab {

struct TriangularPartial {
  std::int64_t n;
};
struct Fejer {
  std::int64_t n;
};
// Generalized Abel-Poisson: block multiplier rho^(nu^s).
struct AbelPoisson {
  double rho;
  double s;
};
// Abel-Poisson-Taylor: multiplier 1 below r, lambda_{nu,r}(rho) from r on.
struct Taylor {
  double rho;
  int r;
};

// One of the four triangular summation methods with validated parameters.
class SummationMethod {
 public:
  using Variant = std::variant<TriangularPartial, Fejer, AbelPoisson, Taylor>;

  static SummationMethod triangular_partial(std::int64_t n);
  static SummationMethod fejer(std::int64_t n);
  static SummationMethod abel_poisson(double rho, double s);
  static SummationMethod taylor(double rho, int r);

  const Variant& variant() const { return method_; }
  // TriangularPartial and Fejer have finitely many nonzero multipliers.
  bool finite_support() const;
  std::string describe() const;

  // Multiplier of block nu and its complement 1 - m_nu, the latter computed
  // without cancellation.
  double multiplier(std::int64_t nu) const;
  double gap(std::int64_t nu) const;

  // sup_{nu > cutoff} m_nu.
  double sup_multiplier_beyond(std::int64_t cutoff) const;

 private:
  explicit SummationMethod(Variant v) : method_(v) {}
  Variant method_;
};

struct MultiplierRow {
  SummationMethod method;
  std::vector<double> values;  // m_0 .. m_{up_to}
  std::vector<double> gaps;    // 1 - m_nu
};

// lambda_{nu,r}(rho) = sum_{k<r} C(nu,k) (1-rho)^k rho^(nu-k); nu >= r >= 1.
double lambda_coeff(std::int64_t nu, int r, double rho);
// 1 - lambda_{nu,r}(rho) = sum_{k=r}^{nu} C(nu,k) (1-rho)^k rho^(nu-k).
double lambda_complement(std::int64_t nu, int r, double rho);

MultiplierRow multipliers(const SummationMethod& method, std::int64_t up_to);

Spectrum apply(const SummationMethod& method, const Spectrum& f);
BlockProfile apply(const SummationMethod& method, const BlockProfile& a);

// ||f - method(f)||_{S^p} from the block profile.
Interval approximation_error(const SummationMethod& method, const BlockProfile& a);
Interval approximation_error(const SummationMethod& method, const Spectrum& f, double p);

struct IdentityReport {
  std::string name;
  double max_deviation = 0.0;  // signed for inequalities: max(LHS - RHS)
  double threshold = 0.0;
  double worst_rho = 0.0;
  bool passed = false;
};

// max_rho |sum_{k=0}^{nu} C(nu,k)(1-rho)^k rho^(nu-k) - 1|, passes at <= 1e-11.
IdentityReport verify_identity_8(std::int64_t nu, const std::vector<double>& rho_grid);

// max_rho [sum_{k=r}^{nu} C(nu,k)(1-rho)^k rho^(nu-k) - C(nu,r)(1-rho)^r]
// over the grid plus the endpoints 0 and 1; passes at <= 1e-12.
IdentityReport verify_inequality_12(std::int64_t nu, int r, const std::vector<double>& rho_grid);

}  // namespace splab
