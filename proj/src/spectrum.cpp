#include "splab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "splab/errors.hpp"

namespace splab {

namespace {

__extension__ using U128 = unsigned __int128;

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t binomial_saturating(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  U128 r = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    r = r * static_cast<U128>(n - i) / static_cast<U128>(i + 1);
    if (r > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mul_saturating(std::uint64_t a, std::uint64_t b) {
  const U128 r = static_cast<U128>(a) * b;
  return r > kSaturated ? kSaturated : static_cast<std::uint64_t>(r);
}

std::uint64_t add_saturating(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

void enumerate_into(int remaining_dims, std::int64_t remaining_order, std::vector<int>& prefix,
                    std::vector<MultiIndex>& out) {
  if (remaining_dims == 1) {
    const int last = static_cast<int>(remaining_order);
    if (last == 0) {
      prefix.push_back(0);
      out.emplace_back(prefix);
      prefix.pop_back();
    } else {
      for (int v : {-last, last}) {
        prefix.push_back(v);
        out.emplace_back(prefix);
        prefix.pop_back();
      }
    }
    return;
  }
  const int m = static_cast<int>(remaining_order);
  for (int v = -m; v <= m; ++v) {
    prefix.push_back(v);
    enumerate_into(remaining_dims - 1, remaining_order - std::abs(v), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
}

std::int64_t MultiIndex::order() const {
  std::int64_t s = 0;
  for (int k : entries_) s += std::abs(static_cast<std::int64_t>(k));
  return s;
}

std::int64_t MultiIndex::signed_sum() const {
  std::int64_t s = 0;
  for (int k : entries_) s += k;
  return s;
}

bool MultiIndex::in_y() const {
  const bool all_nonneg = std::all_of(entries_.begin(), entries_.end(), [](int k) { return k >= 0; });
  const bool all_neg = std::all_of(entries_.begin(), entries_.end(), [](int k) { return k < 0; });
  return all_nonneg || all_neg;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (j) os << ',';
    os << entries_[j];
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// TailCertificate

TailCertificate TailCertificate::bounded(double p, double bound, TailRulePtr rule) {
  if (!(bound >= 0.0)) throw std::invalid_argument("tail bound must be nonnegative");
  return {false, p, bound, std::move(rule)};
}

TailCertificate TailCertificate::uncertified(double p, TailRulePtr rule) {
  return {false, p, kInf, std::move(rule)};
}

double TailCertificate::bound_for(double q, std::int64_t cutoff) const {
  if (exact) return 0.0;
  if (q == p) return bound;
  if (rule) {
    const double b = rule->mass_bound(BlockWeight{}, cutoff, kUnbounded, q);
    if (std::isfinite(b) || !std::isfinite(bound)) return b;
  }
  if (q > p) return std::isfinite(bound) ? std::pow(bound, q / p) : kInf;
  std::ostringstream os;
  os << "tail certificate issued for p=" << p << " cannot be converted to p=" << q;
  throw MismatchError(os.str());
}

TailRulePtr TailCertificate::effective_rule(std::int64_t cutoff) const {
  if (exact) return nullptr;
  if (rule) return rule;
  if (std::isfinite(bound)) return generic_tail_rule(bound, p, cutoff);
  return nullptr;
}

double TailCertificate::weighted_bound(const BlockWeight& w, std::int64_t from, std::int64_t to,
                                       double q, std::int64_t cutoff) const {
  if (exact) return 0.0;
  double best = kInf;
  if (rule) best = rule->mass_bound(w, from, to, q);
  if (std::isfinite(bound) && q >= p) {
    best = std::min(best, generic_tail_rule(bound, p, cutoff)->mass_bound(w, from, to, q));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Spectrum

Spectrum::Spectrum(int dimension, std::vector<Entry> coefficients, std::int64_t cutoff,
                   TailCertificate tail, bool y_supported)
    : dimension_(dimension),
      coefficients_(std::move(coefficients)),
      cutoff_(cutoff),
      tail_(std::move(tail)),
      y_supported_(y_supported) {
  if (dimension_ < 1) throw std::invalid_argument("Spectrum: dimension must be >= 1");
  if (cutoff_ < 0) throw std::invalid_argument("Spectrum: cutoff must be >= 0");
  if (tail_.exact) {
    tail_.bound = 0.0;
  } else if (!(tail_.bound >= 0.0)) {
    throw std::invalid_argument("Spectrum: tail bound must be nonnegative");
  }
  std::sort(coefficients_.begin(), coefficients_.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    const MultiIndex& k = coefficients_[i].first;
    if (k.dimension() != dimension_) {
      throw std::invalid_argument("Spectrum: index " + k.to_string() + " has wrong dimension");
    }
    if (k.order() > cutoff_) {
      throw std::invalid_argument("Spectrum: index " + k.to_string() + " exceeds the cutoff");
    }
    if (y_supported_ && !k.in_y()) {
      throw std::invalid_argument("Spectrum: index " + k.to_string() + " lies outside Y");
    }
    if (i > 0 && coefficients_[i - 1].first == k) {
      throw std::invalid_argument("Spectrum: duplicate index " + k.to_string());
    }
  }
}

Spectrum Spectrum::empty(int dimension, std::int64_t cutoff) {
  return Spectrum(dimension, {}, cutoff, TailCertificate::exact_tail(), true);
}

std::complex<double> Spectrum::at(const MultiIndex& k) const {
  auto it = std::lower_bound(coefficients_.begin(), coefficients_.end(), k,
                             [](const Entry& e, const MultiIndex& key) { return e.first < key; });
  if (it != coefficients_.end() && it->first == k) return it->second;
  return {0.0, 0.0};
}

// ---------------------------------------------------------------------------
// BlockProfile

BlockProfile::BlockProfile(double p, std::vector<double> values, TailCertificate tail,
                           int dimension, bool y_supported)
    : p_(p),
      values_(std::move(values)),
      tail_(std::move(tail)),
      dimension_(dimension),
      y_supported_(y_supported) {
  if (!(p_ >= 1.0)) throw DomainError("BlockProfile: p must be >= 1");
  if (values_.empty()) values_.push_back(0.0);
  for (double a : values_) {
    if (!(a >= 0.0)) throw std::invalid_argument("BlockProfile: values must be nonnegative");
  }
  if (tail_.exact) {
    tail_.bound = 0.0;
  } else {
    if (!(tail_.bound >= 0.0)) throw std::invalid_argument("BlockProfile: tail must be >= 0");
    if (tail_.p != p_) {
      tail_.bound = tail_.bound_for(p_, cutoff());
      tail_.p = p_;
    }
  }
}

// ---------------------------------------------------------------------------
// Operations

std::uint64_t block_count(int d, std::int64_t nu) {
  if (d < 1 || nu < 0) throw DomainError("block_count: requires d >= 1 and nu >= 0");
  if (nu == 0) return 1;
  std::uint64_t total = 0;
  const std::int64_t jmax = std::min<std::int64_t>(d, nu);
  for (std::int64_t j = 1; j <= jmax; ++j) {
    const std::uint64_t signs = j >= 64 ? kSaturated : (std::uint64_t{1} << j);
    std::uint64_t term = mul_saturating(signs, binomial_saturating(d, j));
    term = mul_saturating(term, binomial_saturating(nu - 1, j - 1));
    total = add_saturating(total, term);
  }
  return total;
}

std::uint64_t nonnegative_block_count(int d, std::int64_t nu) {
  if (d < 1 || nu < 0) throw DomainError("nonnegative_block_count: requires d >= 1, nu >= 0");
  return binomial_saturating(nu + d - 1, d - 1);
}

std::vector<MultiIndex> enumerate_block(int d, std::int64_t nu, const Limits& limits) {
  if (d < 1 || nu < 0) throw DomainError("enumerate_block: requires d >= 1 and nu >= 0");
  if (d > limits.max_dimension) {
    throw ResourceError("enumerate_block: dimension " + std::to_string(d) +
                        " exceeds the configured maximum " +
                        std::to_string(limits.max_dimension));
  }
  if (nu > std::numeric_limits<int>::max()) throw ResourceError("enumerate_block: order too large");
  const std::uint64_t count = block_count(d, nu);
  if (count > limits.element_budget) {
    throw ResourceError("enumerate_block: block of " + std::to_string(count) +
                        " indices exceeds the element budget");
  }
  std::vector<MultiIndex> out;
  out.reserve(count);
  std::vector<int> prefix;
  prefix.reserve(d);
  enumerate_into(d, nu, prefix, out);
  return out;
}

BlockProfile profile_of(const Spectrum& f, double p) {
  if (!(p >= 1.0)) throw DomainError("profile_of: p must be >= 1");
  std::vector<CompensatedSum> sums(static_cast<std::size_t>(f.cutoff()) + 1);
  for (const auto& [k, c] : f.coefficients()) {
    sums[static_cast<std::size_t>(k.order())].add(pow_abs(c, p));
  }
  std::vector<double> values(sums.size());
  for (std::size_t nu = 0; nu < sums.size(); ++nu) values[nu] = root(sums[nu].value(), p);

  TailCertificate tail = f.tail();
  if (!tail.exact) {
    tail.bound = tail.bound_for(p, f.cutoff());
    tail.p = p;
  }
  return BlockProfile(p, std::move(values), std::move(tail), f.dimension(), f.y_supported());
}

Interval sp_norm(const BlockProfile& a) {
  CompensatedSum s;
  for (double v : a.values()) s.add(pow_abs(v, a.p()));
  return interval_from_power_sums(s.value(), a.tail_mass(), a.p());
}

Interval sp_norm(const Spectrum& f, double p) { return sp_norm(profile_of(f, p)); }

namespace {

// Bound on sum_{nu > N} a_nu^p |2 sin(s h / 2)|^p with |s| <= nu, using
// |2 sin(x/2)| <= min(|x|, 2).
double shift_tail_bound(const TailCertificate& tail, std::int64_t cutoff, double h, double p) {
  if (tail.exact) return 0.0;
  const double crude = std::isfinite(tail.bound) ? pow_abs(2.0, p) * tail.bound : kInf;
  const double ah = std::abs(h);
  const double knee = std::floor(2.0 / ah);
  const std::int64_t k = knee >= 9.0e18 ? std::numeric_limits<std::int64_t>::max() / 2
                                        : std::max<std::int64_t>(cutoff, static_cast<std::int64_t>(knee));
  const double low = tail.weighted_bound(BlockWeight{1.0, 1.0, ah}, cutoff, k, p, cutoff);
  const double high = tail.weighted_bound(BlockWeight{0.0, 1.0, 2.0}, k, kUnbounded, p, cutoff);
  return std::min(crude, low + high);
}

}  // namespace

Interval shift_difference_norm(const Spectrum& f, double h, double p) {
  if (!(p >= 1.0)) throw DomainError("shift_difference_norm: p must be >= 1");
  if (h == 0.0) return {0.0, 0.0};
  CompensatedSum s;
  for (const auto& [k, c] : f.coefficients()) {
    const double m = 2.0 * std::sin(0.5 * h * static_cast<double>(k.signed_sum()));
    s.add(pow_abs(c, p) * pow_abs(m, p));
  }
  return interval_from_power_sums(s.value(), shift_tail_bound(f.tail(), f.cutoff(), h, p), p);
}

Interval shift_difference_norm(const BlockProfile& a, double h) {
  if (!a.y_supported() && a.dimension() > 1) {
    throw PreconditionError("shift_difference_norm: sine form needs a Y-supported profile");
  }
  if (h == 0.0) return {0.0, 0.0};
  const double p = a.p();
  CompensatedSum s;
  for (std::size_t nu = 1; nu < a.values().size(); ++nu) {
    const double m = 2.0 * std::sin(0.5 * h * static_cast<double>(nu));
    s.add(pow_abs(a[nu], p) * pow_abs(m, p));
  }
  return interval_from_power_sums(s.value(), shift_tail_bound(a.tail(), a.cutoff(), h, p), p);
}

Spectrum project_y(const Spectrum& f) {
  std::vector<Spectrum::Entry> kept;
  for (const auto& e : f.coefficients()) {
    if (e.first.in_y()) kept.push_back(e);
  }
  return Spectrum(f.dimension(), std::move(kept), f.cutoff(), f.tail(), true);
}

Spectrum scaled(const Spectrum& f, std::complex<double> c) {
  std::vector<Spectrum::Entry> out(f.coefficients().begin(), f.coefficients().end());
  for (auto& e : out) e.second *= c;
  TailCertificate tail = f.tail();
  if (!tail.exact) {
    const double m = std::abs(c);
    tail.bound = std::isfinite(tail.bound) ? tail.bound * pow_abs(m, tail.p) : kInf;
    tail.rule = reweighted(tail.rule, BlockWeight{0.0, 1.0, m});
  }
  return Spectrum(f.dimension(), std::move(out), f.cutoff(), std::move(tail), f.y_supported());
}

}  // namespace splab
