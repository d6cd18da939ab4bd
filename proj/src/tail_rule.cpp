#include "splab/tail_rule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "splab/errors.hpp"
#include "splab/numeric.hpp"

namespace splab {

double BlockWeight::log_at(std::int64_t nu) const {
  if (factor == 0.0) return -kInf;
  double out = std::log(factor);
  if (exponent != 0.0) {
    out += exponent * std::log(static_cast<double>(nu));
  }
  if (base != 1.0 && nu != 0) {
    out += static_cast<double>(nu) * std::log(base);
  }
  return out;
}

double BlockWeight::at(std::int64_t nu) const {
  if (nu == 0) {
    // 0^0 = 1 and base^0 = 1.
    if (exponent > 0.0) return 0.0;
    if (exponent < 0.0) return kInf;
    return factor;
  }
  return std::exp(log_at(nu));
}

double sup_weight(const BlockWeight& w, std::int64_t from, std::int64_t to) {
  const std::int64_t first = from + 1;
  if (to != kUnbounded && to < first) return 0.0;
  if (w.factor == 0.0 || w.base == 0.0) return first == 0 ? w.at(0) : 0.0;

  const bool bounded = to != kUnbounded;
  if (w.base == 1.0) {
    if (w.exponent > 0.0) return bounded ? w.at(to) : kInf;
    return w.at(first);
  }
  if (w.base > 1.0) {
    if (!bounded) return kInf;
    return std::max(w.at(first), w.at(to));
  }
  // base in (0, 1): log-concave in nu, single interior peak when exponent > 0.
  if (w.exponent <= 0.0) return w.at(first);
  const double peak = w.exponent / -std::log(w.base);
  double best = w.at(first);
  if (bounded) best = std::max(best, w.at(to));
  for (double c : {std::floor(peak), std::ceil(peak)}) {
    if (c < static_cast<double>(first)) continue;
    if (bounded && c > static_cast<double>(to)) continue;
    best = std::max(best, w.at(static_cast<std::int64_t>(c)));
  }
  return best;
}

namespace {

class GenericTailRule final : public TailRule {
 public:
  GenericTailRule(double mass, double p, std::int64_t cutoff)
      : mass_(mass), p_(p), cutoff_(cutoff) {}

  double mass_bound(const BlockWeight& w, std::int64_t from, std::int64_t to,
                    double q) const override {
    if (from < cutoff_) {
      // Blocks at or below the cutoff are not described by this rule.
      return kInf;
    }
    if (to != kUnbounded && to <= from) return 0.0;
    if (mass_ == 0.0) return 0.0;
    double mass = mass_;
    if (q != p_) {
      if (q < p_) return kInf;
      mass = std::pow(mass_, q / p_);
    }
    const double s = sup_weight(w, from, to);
    if (s == 0.0) return 0.0;
    return pow_abs(s, q) * mass;
  }

  std::string describe() const override {
    std::ostringstream os;
    os << "generic: sup w^p * " << mass_ << " beyond " << cutoff_ << " (p=" << p_ << ")";
    return os.str();
  }

 private:
  double mass_;
  double p_;
  std::int64_t cutoff_;
};

class ReweightedRule final : public TailRule {
 public:
  ReweightedRule(TailRulePtr base, BlockWeight extra) : base_(std::move(base)), extra_(extra) {}

  double mass_bound(const BlockWeight& w, std::int64_t from, std::int64_t to,
                    double p) const override {
    return base_->mass_bound(w.times(extra_), from, to, p);
  }

  std::string describe() const override {
    std::ostringstream os;
    os << "reweighted(nu^" << extra_.exponent << " * " << extra_.base << "^nu * "
       << extra_.factor << ") of " << base_->describe();
    return os.str();
  }

 private:
  TailRulePtr base_;
  BlockWeight extra_;
};

}  // namespace

TailRulePtr generic_tail_rule(double mass, double p, std::int64_t cutoff) {
  if (!(mass >= 0.0)) throw std::invalid_argument("generic_tail_rule: mass must be >= 0");
  return std::make_shared<GenericTailRule>(mass, p, cutoff);
}

TailRulePtr reweighted(TailRulePtr base, const BlockWeight& extra) {
  if (!base) return nullptr;
  return std::make_shared<ReweightedRule>(std::move(base), extra);
}


namespace {

constexpr std::int64_t kExplicitTerms = 2'000'000;
// Relative slack absorbing rounding in the explicit sums.
constexpr double kSlack = 1.0 + 1e-12;

double poly_geometric_term(double log_factor, double exponent, double log_base, std::int64_t nu) {
  const double x = static_cast<double>(nu);
  double lg = log_factor;
  if (exponent != 0.0) lg += exponent * std::log(x);
  if (log_base != 0.0) lg += x * log_base;
  return std::exp(lg);
}

double explicit_sum(double log_factor, double exponent, double log_base, std::int64_t first,
                    std::int64_t last) {
  CompensatedSum s;
  for (std::int64_t nu = first; nu <= last; ++nu) {
    s.add(poly_geometric_term(log_factor, exponent, log_base, nu));
  }
  return s.value();
}

// int_a^b x^e dx for 0 < a <= b (b = +inf allowed when e < -1).
double power_integral(double a, double b, double e) {
  if (e == -1.0) return std::log(b / a);
  const double k = e + 1.0;
  if (std::isinf(b)) return -std::pow(a, k) / k;
  return (std::pow(b, k) - std::pow(a, k)) / k;
}

}  // namespace

double poly_geometric_mass(double log_factor, double exponent, double base, std::int64_t from,
                           std::int64_t to) {
  if (std::isinf(log_factor) && log_factor < 0.0) return 0.0;
  if (base == 0.0) return 0.0;
  const std::int64_t first = std::max<std::int64_t>(from + 1, 1);
  const bool bounded = to != kUnbounded;
  if (bounded && to < first) return 0.0;
  const double log_base = std::log(base);

  if (bounded && to - first < kExplicitTerms) {
    return kSlack * explicit_sum(log_factor, exponent, log_base, first, to);
  }

  if (base < 1.0) {
    // Term ratio (1 + 1/nu)^e * base; below theta = (1 + base)/2 from nu1 on.
    const double theta = 0.5 * (1.0 + base);
    std::int64_t nu1 = first;
    if (exponent > 0.0) {
      const double need = 1.0 / (std::pow(theta / base, 1.0 / exponent) - 1.0);
      nu1 = std::max<std::int64_t>(first, static_cast<std::int64_t>(std::ceil(need)));
    }
    if (nu1 - first > 50 * kExplicitTerms) return kInf;  // base too close to 1
    if (bounded && nu1 >= to) {
      return kSlack * explicit_sum(log_factor, exponent, log_base, first, to);
    }
    const double head = explicit_sum(log_factor, exponent, log_base, first, nu1);
    const double ratio =
        exponent > 0.0 ? std::pow(1.0 + 1.0 / static_cast<double>(nu1), exponent) * base : base;
    const double last = poly_geometric_term(log_factor, exponent, log_base, nu1);
    return kSlack * (head + last * ratio / (1.0 - ratio));
  }

  if (base > 1.0) {
    if (!bounded) return kInf;
    const double peak = std::max(poly_geometric_term(log_factor, exponent, log_base, first),
                                 poly_geometric_term(log_factor, exponent, log_base, to));
    return kSlack * static_cast<double>(to - first + 1) * peak;
  }

  // base == 1: sum of nu^e.
  if (!bounded && exponent >= -1.0) return kInf;
  const double scale = std::exp(log_factor);
  if (exponent >= 0.0) {
    return kSlack * static_cast<double>(to - first + 1) *
           poly_geometric_term(log_factor, exponent, 0.0, to);
  }
  // Decreasing terms: first term plus the integral from `first`.
  const double head = poly_geometric_term(log_factor, exponent, 0.0, first);
  const double upper = bounded ? static_cast<double>(to) : kInf;
  return kSlack * (head + scale * power_integral(static_cast<double>(first), upper, exponent));
}

}  // namespace splab
