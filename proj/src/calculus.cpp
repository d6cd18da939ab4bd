#include "splab/calculus.hpp"

#include <cmath>
#include <sstream>

#include "binomial.hpp"
#include "splab/errors.hpp"

namespace splab {

PsiWeight PsiWeight::radial_power(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("radial_power: r must be >= 0");
  PsiWeight w(Kind::kRadialPower, r);
  if (r > 0.0) w.zero_set_.insert(0);
  return w;
}

PsiWeight PsiWeight::falling_factorial(int r) {
  if (r < 0) throw DomainError("falling_factorial: r must be >= 0");
  PsiWeight w(Kind::kFallingFactorial, r);
  for (int nu = 0; nu < r; ++nu) w.zero_set_.insert(nu);
  return w;
}

PsiWeight PsiWeight::custom(std::map<std::int64_t, double> table,
                            std::set<std::int64_t> zero_set_orders) {
  for (const auto& [nu, v] : table) {
    if (nu < 0 || !std::isfinite(v)) throw DomainError("custom psi: invalid table entry");
  }
  PsiWeight w(Kind::kCustom, 0.0);
  w.table_ = std::move(table);
  w.zero_set_ = std::move(zero_set_orders);
  return w;
}

bool PsiWeight::is_identity() const { return kind_ != Kind::kCustom && order_ == 0.0; }

bool PsiWeight::in_zero_set(std::int64_t nu) const { return zero_set_.count(nu) > 0; }

std::string PsiWeight::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kRadialPower:
      os << "radial_power(" << order_ << ")";
      break;
    case Kind::kFallingFactorial:
      os << "falling_factorial(" << order_ << ")";
      break;
    case Kind::kCustom:
      os << "custom(" << table_.size() << " orders)";
      break;
  }
  return os.str();
}

double PsiWeight::value(std::int64_t nu) const {
  if (in_zero_set(nu)) return 0.0;
  switch (kind_) {
    case Kind::kRadialPower:
      if (nu == 0) return 1.0;  // only reached for r = 0
      return std::pow(static_cast<double>(nu), -order_);
    case Kind::kFallingFactorial:
      return std::exp(-detail::log_falling_factorial(nu, static_cast<std::int64_t>(order_)));
    case Kind::kCustom: {
      auto it = table_.find(nu);
      if (it == table_.end()) {
        throw DomainError("custom psi is undefined on order " + std::to_string(nu));
      }
      return it->second;
    }
  }
  return 0.0;
}

double PsiWeight::divide(double x, std::int64_t nu) const {
  x = std::abs(x);
  if (x == 0.0) return 0.0;
  switch (kind_) {
    case Kind::kRadialPower: {
      if (order_ == 0.0) return x;
      const double m = std::pow(static_cast<double>(nu), order_);
      if (std::isfinite(m) && std::isfinite(x * m)) return x * m;
      return std::exp(std::log(x) + order_ * std::log(static_cast<double>(nu)));
    }
    case Kind::kFallingFactorial: {
      const auto r = static_cast<std::int64_t>(order_);
      const double m = detail::falling_factorial(nu, r);
      if (std::isfinite(m) && std::isfinite(x * m)) return x * m;
      return std::exp(std::log(x) + detail::log_falling_factorial(nu, r));
    }
    case Kind::kCustom: {
      const double v = value(nu);
      if (v == 0.0) {
        throw DivisionByZeroError("psi vanishes on order " + std::to_string(nu) +
                                  " which is not in the zero set");
      }
      return x / std::abs(v);
    }
  }
  return 0.0;
}

std::optional<BlockWeight> PsiWeight::reciprocal_bound() const {
  if (kind_ == Kind::kCustom) return std::nullopt;
  return BlockWeight{order_, 1.0, 1.0};
}

void PoissonParams::validate() const {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("Poisson: rho must lie in [0, 1)");
  if (r < 0) throw DomainError("Poisson: r must be >= 0");
}

namespace {

TailCertificate tail_after_psi(const TailCertificate& tail, std::int64_t cutoff,
                               const PsiWeight& psi) {
  if (tail.exact) return tail;
  const auto w = psi.reciprocal_bound();
  if (!w) return TailCertificate::uncertified(tail.p);
  TailRulePtr rule = reweighted(tail.effective_rule(cutoff), *w);
  const double bound = rule ? rule->mass_bound(BlockWeight{}, cutoff, kUnbounded, tail.p) : kInf;
  return TailCertificate{false, tail.p, bound, std::move(rule)};
}

}  // namespace

Spectrum psi_derivative(const Spectrum& f, const PsiWeight& psi) {
  if (psi.is_identity()) return f;
  std::vector<Spectrum::Entry> out;
  out.reserve(f.size());
  for (const auto& [k, c] : f.coefficients()) {
    const std::int64_t nu = k.order();
    if (psi.in_zero_set(nu)) continue;
    const double mag = std::abs(c);
    if (mag == 0.0) {
      out.emplace_back(k, c);
      continue;
    }
    out.emplace_back(k, (c / mag) * psi.divide(mag, nu));
  }
  return Spectrum(f.dimension(), std::move(out), f.cutoff(),
                  tail_after_psi(f.tail(), f.cutoff(), psi), f.y_supported());
}

BlockProfile psi_derivative(const BlockProfile& a, const PsiWeight& psi) {
  if (psi.is_identity()) return a;
  std::vector<double> values(a.values().size(), 0.0);
  for (std::size_t nu = 0; nu < values.size(); ++nu) {
    const auto order = static_cast<std::int64_t>(nu);
    if (psi.in_zero_set(order) || a[nu] == 0.0) continue;
    values[nu] = psi.divide(a[nu], order);
  }
  return BlockProfile(a.p(), std::move(values), tail_after_psi(a.tail(), a.cutoff(), psi),
                      a.dimension(), a.y_supported());
}

BlockProfile poisson_transform(const BlockProfile& a, double rho) {
  PoissonParams{rho, 0}.validate();
  std::vector<double> values(a.values().size());
  for (std::size_t nu = 0; nu < values.size(); ++nu) {
    values[nu] = a[nu] == 0.0 ? 0.0 : a[nu] * std::pow(rho, static_cast<double>(nu));
  }
  TailCertificate tail = a.tail();
  if (!tail.exact) {
    const BlockWeight w{0.0, rho, 1.0};
    const std::int64_t n = a.cutoff();
    tail.bound = a.tail().weighted_bound(w, n, kUnbounded, a.p(), n);
    tail.rule = reweighted(a.tail().effective_rule(n), w);
  }
  return BlockProfile(a.p(), std::move(values), std::move(tail), a.dimension(), a.y_supported());
}

Interval poisson_radial_derivative_norm(const BlockProfile& a, const PoissonParams& params) {
  params.validate();
  const double p = a.p();
  const double rho = params.rho;
  const std::int64_t r = params.r;
  CompensatedSum s;
  for (std::int64_t nu = r; nu <= a.cutoff(); ++nu) {
    const double a_nu = a[static_cast<std::size_t>(nu)];
    if (a_nu == 0.0) continue;
    const double ff = detail::falling_factorial(nu, r);
    double term = a_nu * ff * std::pow(rho, static_cast<double>(nu - r));
    if (!std::isfinite(term)) {
      term = std::exp(std::log(a_nu) + detail::log_falling_factorial(nu, r) +
                      static_cast<double>(nu - r) * std::log(rho));
    }
    s.add(pow_abs(term, p));
  }

  // Tail weight nu!/(nu-r)! rho^(nu-r) <= nu^r rho^nu rho^-r.
  double tail = 0.0;
  const std::int64_t n = a.cutoff();
  if (!a.exact()) {
    if (rho > 0.0) {
      const BlockWeight w{static_cast<double>(r), rho, std::pow(rho, -static_cast<double>(r))};
      tail = a.tail().weighted_bound(w, n, kUnbounded, p, n);
    } else if (n < r) {
      // Only nu = r survives at rho = 0, with weight r!.
      const double weight = detail::falling_factorial(r, r);
      tail = a.tail().weighted_bound(BlockWeight{0.0, 1.0, weight}, n, r, p, n);
    }
  }
  return interval_from_power_sums(s.value(), tail, p);
}

Interval poisson_of_bracket_derivative_norm(const BlockProfile& a, const PoissonParams& params) {
  const Interval d = poisson_radial_derivative_norm(a, params);
  const double scale = std::pow(params.rho, static_cast<double>(params.r));
  if (scale == 0.0) return {0.0, 0.0};
  return {scale * d.lower, scale * d.upper};
}

}  // namespace splab
