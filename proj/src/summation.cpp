#include "splab/summation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "binomial.hpp"
#include "splab/errors.hpp"

namespace splab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_rho(double rho, const char* who) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw DomainError(std::string(who) + ": rho must lie in [0, 1)");
  }
}

// Shared by AbelPoisson and Taylor(r = 1) so the two rows agree bit for bit.
double abel_exponent(std::int64_t nu, double s) {
  const double x = static_cast<double>(nu);
  return s == 1.0 ? x : std::pow(x, s);
}
double abel_multiplier(double rho, double exponent) { return std::pow(rho, exponent); }
double abel_gap(double rho, double exponent) {
  if (rho == 0.0) return 1.0;
  return -std::expm1(exponent * std::log(rho));
}

// Vector of (m_nu a_nu) restricted to nu <= cutoff.
std::vector<double> scale_values(const SummationMethod& method, std::span<const double> a) {
  std::vector<double> out(a.size());
  for (std::size_t nu = 0; nu < a.size(); ++nu) {
    out[nu] = a[nu] == 0.0 ? 0.0 : method.multiplier(static_cast<std::int64_t>(nu)) * a[nu];
  }
  return out;
}

TailCertificate tail_after(const SummationMethod& method, const TailCertificate& tail,
                           std::int64_t cutoff) {
  if (tail.exact) return tail;
  const double sup = method.sup_multiplier_beyond(cutoff);
  if (sup == 0.0) return TailCertificate::exact_tail();
  TailCertificate out = tail;
  if (std::isfinite(out.bound)) out.bound *= pow_abs(sup, out.p);
  if (const auto* ap = std::get_if<AbelPoisson>(&method.variant()); ap && ap->s >= 1.0) {
    // rho^(nu^s) <= rho^nu for nu >= 1.
    out.rule = reweighted(out.rule, BlockWeight{0.0, ap->rho, 1.0});
  }
  return out;
}

}  // namespace

SummationMethod SummationMethod::triangular_partial(std::int64_t n) {
  if (n < 0) throw DomainError("TriangularPartial: n must be >= 0");
  return SummationMethod(TriangularPartial{n});
}

SummationMethod SummationMethod::fejer(std::int64_t n) {
  if (n < 1) throw DomainError("Fejer: n must be >= 1");
  return SummationMethod(Fejer{n});
}

SummationMethod SummationMethod::abel_poisson(double rho, double s) {
  check_rho(rho, "AbelPoisson");
  if (!(s > 0.0)) throw DomainError("AbelPoisson: s must be > 0");
  return SummationMethod(AbelPoisson{rho, s});
}

SummationMethod SummationMethod::taylor(double rho, int r) {
  check_rho(rho, "Taylor");
  if (r < 1) throw DomainError("Taylor: r must be >= 1");
  return SummationMethod(Taylor{rho, r});
}

bool SummationMethod::finite_support() const {
  return std::holds_alternative<TriangularPartial>(method_) ||
         std::holds_alternative<Fejer>(method_);
}

std::string SummationMethod::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const TriangularPartial& m) { os << "TriangularPartial(n=" << m.n << ")"; },
                 [&](const Fejer& m) { os << "Fejer(n=" << m.n << ")"; },
                 [&](const AbelPoisson& m) {
                   os << "AbelPoisson(rho=" << m.rho << ", s=" << m.s << ")";
                 },
                 [&](const Taylor& m) { os << "Taylor(rho=" << m.rho << ", r=" << m.r << ")"; },
             },
             method_);
  return os.str();
}

double SummationMethod::multiplier(std::int64_t nu) const {
  return std::visit(
      Overloaded{
          [&](const TriangularPartial& m) { return nu <= m.n ? 1.0 : 0.0; },
          [&](const Fejer& m) {
            return nu <= m.n ? 1.0 - static_cast<double>(nu) / static_cast<double>(m.n + 1) : 0.0;
          },
          [&](const AbelPoisson& m) {
            return nu == 0 ? 1.0 : abel_multiplier(m.rho, abel_exponent(nu, m.s));
          },
          [&](const Taylor& m) {
            if (nu < m.r) return 1.0;
            return lambda_coeff(nu, m.r, m.rho);
          },
      },
      method_);
}

double SummationMethod::gap(std::int64_t nu) const {
  return std::visit(
      Overloaded{
          [&](const TriangularPartial& m) { return nu <= m.n ? 0.0 : 1.0; },
          [&](const Fejer& m) {
            return nu <= m.n ? static_cast<double>(nu) / static_cast<double>(m.n + 1) : 1.0;
          },
          [&](const AbelPoisson& m) {
            return nu == 0 ? 0.0 : abel_gap(m.rho, abel_exponent(nu, m.s));
          },
          [&](const Taylor& m) {
            if (nu < m.r) return 0.0;
            return lambda_complement(nu, m.r, m.rho);
          },
      },
      method_);
}

double SummationMethod::sup_multiplier_beyond(std::int64_t cutoff) const {
  // Every row is nonincreasing in nu.
  return multiplier(cutoff + 1);
}

double lambda_coeff(std::int64_t nu, int r, double rho) {
  if (r < 1 || nu < r) throw DomainError("lambda_coeff: requires nu >= r >= 1");
  check_rho(rho, "lambda_coeff");
  if (r == 1) return abel_multiplier(rho, abel_exponent(nu, 1.0));
  return detail::binomial_lower_tail(nu, r, rho);
}

double lambda_complement(std::int64_t nu, int r, double rho) {
  if (r < 1 || nu < r) throw DomainError("lambda_complement: requires nu >= r >= 1");
  check_rho(rho, "lambda_complement");
  if (r == 1) return abel_gap(rho, abel_exponent(nu, 1.0));
  return detail::binomial_upper_tail(nu, r, rho);
}

MultiplierRow multipliers(const SummationMethod& method, std::int64_t up_to) {
  if (up_to < 0) throw DomainError("multipliers: up_to must be >= 0");
  MultiplierRow row{method, {}, {}};
  row.values.resize(static_cast<std::size_t>(up_to) + 1);
  row.gaps.resize(row.values.size());
  for (std::int64_t nu = 0; nu <= up_to; ++nu) {
    row.values[static_cast<std::size_t>(nu)] = method.multiplier(nu);
    row.gaps[static_cast<std::size_t>(nu)] = method.gap(nu);
  }
  return row;
}

Spectrum apply(const SummationMethod& method, const Spectrum& f) {
  std::vector<Spectrum::Entry> out;
  out.reserve(f.size());
  for (const auto& [k, c] : f.coefficients()) {
    const double m = method.multiplier(k.order());
    if (m != 0.0) out.emplace_back(k, c * m);
  }
  return Spectrum(f.dimension(), std::move(out), f.cutoff(),
                  tail_after(method, f.tail(), f.cutoff()), f.y_supported());
}

BlockProfile apply(const SummationMethod& method, const BlockProfile& a) {
  return BlockProfile(a.p(), scale_values(method, a.values()),
                      tail_after(method, a.tail(), a.cutoff()), a.dimension(), a.y_supported());
}

Interval approximation_error(const SummationMethod& method, const BlockProfile& a) {
  const double p = a.p();
  const auto values = a.values();
  const auto size = static_cast<std::int64_t>(values.size());
  double known = 0.0;
  if (const auto* fejer = std::get_if<Fejer>(&method.variant())) {
    // (n+1)^-p sum_{nu<=n} (nu a_nu)^p + sum_{nu>n} nu^-p (nu a_nu)^p
    const std::int64_t n = fejer->n;
    CompensatedSum head;
    CompensatedSum rest;
    for (std::int64_t nu = 1; nu < size; ++nu) {
      const double a_nu = values[static_cast<std::size_t>(nu)];
      if (a_nu == 0.0) continue;
      if (nu <= n) {
        head.add(pow_abs(static_cast<double>(nu) * a_nu, p));
      } else {
        rest.add(pow_abs(a_nu, p));
      }
    }
    known = head.value() / pow_abs(static_cast<double>(n + 1), p) + rest.value();
  } else {
    CompensatedSum s;
    for (std::int64_t nu = 0; nu < size; ++nu) {
      const double a_nu = values[static_cast<std::size_t>(nu)];
      if (a_nu == 0.0) continue;
      s.add(pow_abs(method.gap(nu) * a_nu, p));
    }
    known = s.value();
  }
  // 0 <= 1 - m_nu <= 1, so the profile's own tail certifies the remainder.
  return interval_from_power_sums(known, a.tail_mass(), p);
}

Interval approximation_error(const SummationMethod& method, const Spectrum& f, double p) {
  return approximation_error(method, profile_of(f, p));
}

namespace {

// All terms b(nu, k; rho), k = 0..nu, by a log-domain recurrence.
std::vector<double> binomial_row(std::int64_t nu, double rho) {
  std::vector<double> terms(static_cast<std::size_t>(nu) + 1);
  if (rho == 0.0 || rho == 1.0) {
    for (std::int64_t k = 0; k <= nu; ++k) {
      terms[static_cast<std::size_t>(k)] = detail::binomial_term(nu, k, rho);
    }
    return terms;
  }
  const double log_odds = std::log1p(-rho) - std::log(rho);
  double lg = static_cast<double>(nu) * std::log(rho);
  for (std::int64_t k = 0; k <= nu; ++k) {
    terms[static_cast<std::size_t>(k)] = std::exp(lg);
    if (k < nu) lg += std::log(static_cast<double>(nu - k) / static_cast<double>(k + 1)) + log_odds;
  }
  return terms;
}

}  // namespace

IdentityReport verify_identity_8(std::int64_t nu, const std::vector<double>& rho_grid) {
  if (nu < 0) throw DomainError("verify_identity_8: nu must be >= 0");
  IdentityReport report{"binomial identity, nu=" + std::to_string(nu), 0.0, 1e-11, 0.0, true};
  for (double rho : rho_grid) {
    CompensatedSum s;
    for (double t : binomial_row(nu, rho)) s.add(t);
    const double dev = std::abs(s.value() - 1.0);
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_rho = rho;
    }
  }
  report.passed = report.max_deviation <= report.threshold;
  return report;
}

IdentityReport verify_inequality_12(std::int64_t nu, int r, const std::vector<double>& rho_grid) {
  if (r < 1 || nu < r) throw DomainError("verify_inequality_12: requires nu >= r >= 1");
  std::vector<double> grid = rho_grid;
  grid.push_back(0.0);
  grid.push_back(1.0);
  IdentityReport report{
      "tail bound, nu=" + std::to_string(nu) + " r=" + std::to_string(r), -kInf, 1e-12, 0.0, true};
  const double log_c = detail::log_binomial(nu, r);
  for (double rho : grid) {
    const std::vector<double> terms = binomial_row(nu, rho);
    CompensatedSum lhs;
    for (std::int64_t k = r; k <= nu; ++k) lhs.add(terms[static_cast<std::size_t>(k)]);
    const double rhs = rho == 1.0 ? 0.0 : std::exp(log_c + r * std::log1p(-rho));
    const double violation = lhs.value() - rhs;
    if (violation > report.max_deviation) {
      report.max_deviation = violation;
      report.worst_rho = rho;
    }
  }
  report.passed = report.max_deviation <= report.threshold;
  return report;
}

}  // namespace splab
