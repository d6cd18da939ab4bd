#include "splab/families.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "splab/errors.hpp"

namespace splab {

namespace {

// c(d, nu) <= kappa * nu^(d-1) for nu >= 1, with kappa = 2^d d for all of
// Z^d and kappa = d for the nonnegative orthant.
double log_count_constant(int d, bool orthant) {
  const double kappa = orthant ? d : std::ldexp(static_cast<double>(d), d);
  return std::log(kappa);
}

using MassFn = std::function<double(const BlockWeight&, std::int64_t, std::int64_t, double)>;

class FamilyRule final : public TailRule {
 public:
  FamilyRule(std::string text, MassFn fn) : text_(std::move(text)), fn_(std::move(fn)) {}
  double mass_bound(const BlockWeight& w, std::int64_t from, std::int64_t to,
                    double p) const override {
    if (to != kUnbounded && to <= from) return 0.0;
    if (w.factor == 0.0) return 0.0;
    return fn_(w, std::max<std::int64_t>(from, 0), to, p);
  }
  std::string describe() const override { return text_; }

 private:
  std::string text_;
  MassFn fn_;
};

double log_or_neg_inf(double x) { return x > 0.0 ? std::log(x) : -kInf; }

// sum over nu = base^j in (from, to] of (w(nu) base^-j)^t.
double lacunary_mass(const BlockWeight& w, std::int64_t base, std::int64_t from, std::int64_t to,
                     double t) {
  const double lb = std::log(static_cast<double>(base));
  const double lf = std::log(w.factor);
  const double lbase = log_or_neg_inf(w.base);
  CompensatedSum s;
  double nu = 1.0;
  int j = 0;
  for (; nu <= 1e300; ++j, nu *= static_cast<double>(base)) {
    if (nu <= static_cast<double>(from)) continue;
    if (to != kUnbounded && nu > static_cast<double>(to)) return s.value() * (1.0 + 1e-12);
    double lg = lf + w.exponent * std::log(nu) - j * lb;
    if (w.base != 1.0) lg += nu * lbase;
    s.add(std::exp(t * lg));
  }
  if (to != kUnbounded && nu > static_cast<double>(to)) return s.value() * (1.0 + 1e-12);
  double rest = 0.0;
  if (w.base > 1.0) return kInf;
  if (w.base == 1.0) {
    // Terms factor^t base^(j t (e - 1)) from here on.
    if (w.exponent >= 1.0) return kInf;
    const double r = std::exp(t * (w.exponent - 1.0) * lb);
    rest = std::exp(t * (lf + (w.exponent - 1.0) * j * lb)) / (1.0 - r);
  }
  // For base < 1 the remaining terms are below exp(-1e300).
  return (s.value() + rest) * (1.0 + 1e-12);
}

}  // namespace

Family Family::geometric(double q, int d) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("geometric: q must lie in (0, 1)");
  if (d < 1) throw DomainError("geometric: d must be >= 1");
  Family f(Kind::kGeometric, d);
  f.q_ = q;
  return f;
}

Family Family::power(double beta, int d) {
  if (!std::isfinite(beta)) throw DomainError("power: beta must be finite");
  if (d < 1) throw DomainError("power: d must be >= 1");
  Family f(Kind::kPower, d);
  f.beta_ = beta;
  return f;
}

Family Family::y_power(double beta, int d) {
  Family f = power(beta, d);
  f.kind_ = Kind::kYPower;
  return f;
}

Family Family::single_block(std::int64_t nu0, int d) {
  if (nu0 < 0) throw DomainError("single_block: nu0 must be >= 0");
  if (d < 1) throw DomainError("single_block: d must be >= 1");
  Family f(Kind::kSingleBlock, d);
  f.nu0_ = nu0;
  return f;
}

Family Family::lacunary(std::int64_t base, int d) {
  if (base < 2) throw DomainError("lacunary: base must be >= 2");
  if (d < 1) throw DomainError("lacunary: d must be >= 1");
  Family f(Kind::kLacunary, d);
  f.base_ = base;
  return f;
}

bool Family::y_supported() const {
  switch (kind_) {
    case Kind::kYPower:
    case Kind::kLacunary:
      return true;
    default:
      return d_ == 1;
  }
}

std::string Family::name() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kGeometric:
      os << "geometric(q=" << q_;
      break;
    case Kind::kPower:
      os << "power(beta=" << beta_;
      break;
    case Kind::kYPower:
      os << "y_power(beta=" << beta_;
      break;
    case Kind::kSingleBlock:
      os << "single_block(nu0=" << nu0_;
      break;
    case Kind::kLacunary:
      os << "lacunary(base=" << base_;
      break;
  }
  os << ", d=" << d_ << ")";
  return os.str();
}

void Family::check_exponent(double p) const {
  if (!(p >= 1.0)) throw DomainError("family: p must be >= 1");
  if ((kind_ == Kind::kPower || kind_ == Kind::kYPower) && !(beta_ * p > 1.0)) {
    std::ostringstream os;
    os << name() << ": beta must exceed 1/p = " << 1.0 / p << " for a finite S^p norm";
    throw DomainError(os.str());
  }
}

TailRulePtr Family::tail_rule(double p) const {
  check_exponent(p);
  const int d = d_;
  switch (kind_) {
    case Kind::kGeometric: {
      const double q = q_;
      const double lk = log_count_constant(d, false);
      return std::make_shared<FamilyRule>(
          "geometric: sum (w q^nu)^t c(d,nu), c <= 2^d d nu^(d-1)",
          [=](const BlockWeight& w, std::int64_t from, std::int64_t to, double t) {
            return poly_geometric_mass(t * std::log(w.factor) + lk, t * w.exponent + (d - 1),
                                       std::pow(w.base * q, t), from, to);
          });
    }
    case Kind::kPower:
    case Kind::kYPower: {
      const double beta = beta_;
      const double lk = log_count_constant(d, kind_ == Kind::kYPower);
      return std::make_shared<FamilyRule>(
          "power: sum (w nu^-beta)^t c(d,nu)^(1-t/p), compared with an integral or ratio bound",
          [=](const BlockWeight& w, std::int64_t from, std::int64_t to, double t) {
            const double gamma = std::max(0.0, 1.0 - t / p);
            return poly_geometric_mass(t * std::log(w.factor) + gamma * lk,
                                       t * (w.exponent - beta) + gamma * (d - 1),
                                       std::pow(w.base, t), from, to);
          });
    }
    case Kind::kSingleBlock: {
      const std::int64_t nu0 = nu0_;
      const double count = static_cast<double>(block_count(d, nu0));
      return std::make_shared<FamilyRule>(
          "single block: w(nu0)^t c(d,nu0) when nu0 is in range",
          [=](const BlockWeight& w, std::int64_t from, std::int64_t to, double t) {
            if (nu0 <= from || (to != kUnbounded && nu0 > to)) return 0.0;
            return pow_abs(w.at(nu0), t) * count;
          });
    }
    case Kind::kLacunary: {
      const std::int64_t base = base_;
      return std::make_shared<FamilyRule>(
          "lacunary: explicit sum over nu = base^j, geometric remainder",
          [=](const BlockWeight& w, std::int64_t from, std::int64_t to, double t) {
            return lacunary_mass(w, base, from, to, t);
          });
    }
  }
  return nullptr;
}

std::int64_t Family::default_cutoff(double p) const {
  switch (kind_) {
    case Kind::kGeometric: {
      const TailRulePtr rule = tail_rule(p);
      std::int64_t n = 0;
      while (rule->mass_bound(BlockWeight{}, n, kUnbounded, p) > 1e-12) ++n;
      return n;
    }
    case Kind::kSingleBlock:
      return nu0_;
    default:
      return 100'000;
  }
}

std::int64_t Family::spectrum_cutoff(std::int64_t wanted, const Limits& limits) const {
  std::uint64_t total = 0;
  for (std::int64_t nu = 0; nu <= wanted; ++nu) {
    std::uint64_t c = 0;
    switch (kind_) {
      case Kind::kGeometric:
      case Kind::kPower:
        c = block_count(d_, nu);
        break;
      case Kind::kYPower:
        c = block_count(d_, nu);  // enumerated before filtering
        break;
      case Kind::kSingleBlock:
        c = nu == nu0_ ? block_count(d_, nu) : 0;
        break;
      case Kind::kLacunary:
        c = 0;
        break;
    }
    if (c > limits.element_budget || total > limits.element_budget - c) return nu - 1;
    total += c;
  }
  return wanted;
}

double Family::coefficient(std::int64_t nu, double p) const {
  const double x = static_cast<double>(nu);
  switch (kind_) {
    case Kind::kGeometric:
      return std::pow(q_, x);
    case Kind::kPower:
      return nu == 0 ? 0.0
                     : std::pow(x, -beta_) * std::pow(static_cast<double>(block_count(d_, nu)),
                                                      -1.0 / p);
    case Kind::kYPower:
      return nu == 0 ? 0.0
                     : std::pow(x, -beta_) *
                           std::pow(static_cast<double>(nonnegative_block_count(d_, nu)), -1.0 / p);
    case Kind::kSingleBlock:
      return nu == nu0_ ? 1.0 : 0.0;
    case Kind::kLacunary:
      return 1.0 / x;  // f^(nu e_1) = nu^-1 at nu = base^j
  }
  return 0.0;
}

namespace {

bool is_power_of(std::int64_t nu, std::int64_t base) {
  if (nu < 1) return false;
  while (nu % base == 0) nu /= base;
  return nu == 1;
}

}  // namespace

BlockProfile Family::profile(double p, std::int64_t cutoff) const {
  check_exponent(p);
  if (cutoff < 0) throw DomainError("profile: cutoff must be >= 0");
  std::vector<double> values(static_cast<std::size_t>(cutoff) + 1, 0.0);
  for (std::int64_t nu = 0; nu <= cutoff; ++nu) {
    const double x = static_cast<double>(nu);
    double a = 0.0;
    switch (kind_) {
      case Kind::kGeometric:
        a = std::exp(x * std::log(q_) + std::log(static_cast<double>(block_count(d_, nu))) / p);
        break;
      case Kind::kPower:
      case Kind::kYPower:
        a = nu == 0 ? 0.0 : std::pow(x, -beta_);
        break;
      case Kind::kSingleBlock:
        a = nu == nu0_ ? std::pow(static_cast<double>(block_count(d_, nu)), 1.0 / p) : 0.0;
        break;
      case Kind::kLacunary:
        a = is_power_of(nu, base_) ? 1.0 / x : 0.0;
        break;
    }
    values[static_cast<std::size_t>(nu)] = a;
  }
  TailCertificate tail = TailCertificate::exact_tail();
  if (kind_ != Kind::kSingleBlock || cutoff < nu0_) {
    TailRulePtr rule = tail_rule(p);
    const double mass = rule->mass_bound(BlockWeight{}, cutoff, kUnbounded, p);
    tail = TailCertificate::bounded(p, mass, std::move(rule));
  }
  return BlockProfile(p, std::move(values), std::move(tail), d_, y_supported());
}

Spectrum Family::spectrum(double p, std::int64_t cutoff, std::optional<std::uint64_t> phase_seed,
                          const Limits& limits) const {
  check_exponent(p);
  if (cutoff < 0) throw DomainError("spectrum: cutoff must be >= 0");
  if (d_ > limits.max_dimension) throw ResourceError("spectrum: dimension above the limit");
  std::vector<Spectrum::Entry> entries;
  std::uint64_t budget = limits.element_budget;
  auto take = [&](std::uint64_t count) {
    if (count > budget) throw ResourceError("spectrum: element budget exceeded");
    budget -= count;
  };

  if (kind_ == Kind::kLacunary) {
    for (std::int64_t nu = 1; nu <= cutoff; nu *= base_) {
      std::vector<int> k(static_cast<std::size_t>(d_), 0);
      k[0] = static_cast<int>(nu);
      take(1);
      entries.emplace_back(MultiIndex(std::move(k)), coefficient(nu, p));
      if (nu > cutoff / base_) break;
    }
  } else {
    const std::int64_t first = kind_ == Kind::kSingleBlock ? nu0_ : 0;
    const std::int64_t last = kind_ == Kind::kSingleBlock ? std::min(nu0_, cutoff) : cutoff;
    for (std::int64_t nu = first; nu <= last; ++nu) {
      const double c = coefficient(nu, p);
      if (c == 0.0) continue;
      take(block_count(d_, nu));
      for (auto& k : enumerate_block(d_, nu, limits)) {
        if (kind_ == Kind::kYPower && !(k.in_y() && k.order() == k.signed_sum())) continue;
        entries.emplace_back(std::move(k), c);
      }
    }
  }

  if (phase_seed) {
    std::mt19937_64 rng(*phase_seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (auto& e : entries) e.second *= std::polar(1.0, angle(rng));
  }

  TailCertificate tail = TailCertificate::exact_tail();
  if (kind_ != Kind::kSingleBlock || cutoff < nu0_) {
    TailRulePtr rule = tail_rule(p);
    const double mass = rule->mass_bound(BlockWeight{}, cutoff, kUnbounded, p);
    tail = TailCertificate::bounded(p, mass, std::move(rule));
  }
  return Spectrum(d_, std::move(entries), cutoff, std::move(tail), y_supported());
}

std::vector<CatalogEntry> catalog() {
  return {
      {"geometric", "q in (0,1), d >= 1", "|f^(k)| = q^|k|_1",
       "sum (w q^nu)^t c(d,nu) with c(d,nu) <= 2^d d nu^(d-1); ratio test beyond the cutoff"},
      {"power", "beta > 1/p, d >= 1", "|f^(k)| = nu^-beta c(d,nu)^(-1/p), so a_nu = nu^-beta",
       "integral comparison for sum nu^(-beta p); ratio test under geometric weights"},
      {"y_power", "beta > 1/p, d >= 1", "as power on Z^d_+ only",
       "as power with the orthant count C(nu+d-1, d-1) <= d nu^(d-1)"},
      {"single_block", "nu0 >= 0, d >= 1", "|f^(k)| = 1 on |k|_1 = nu0",
       "exact once the cutoff reaches nu0"},
      {"lacunary", "base >= 2, d >= 1", "f^(base^j e_1) = base^-j, j >= 0",
       "explicit sum over j, geometric remainder"},
  };
}

}  // namespace splab
