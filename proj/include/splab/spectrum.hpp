#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "splab/numeric.hpp"
#include "splab/tail_rule.hpp"

namespace splab {

// Bounds on full enumeration. Beyond these only profile-level APIs apply.
struct Limits {
  int max_dimension = 4;
  std::uint64_t element_budget = 10'000'000;
};

// Multi-index k = (k_1, ..., k_d) in Z^d.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

  int dimension() const { return static_cast<int>(entries_.size()); }
  std::span<const int> entries() const { return entries_; }
  int operator[](std::size_t j) const { return entries_[j]; }

  // |k|_1
  std::int64_t order() const;
  // k_1 + ... + k_d, the frequency seen by the diagonal shift x -> x + h(1,...,1).
  std::int64_t signed_sum() const;
  // k in Z^d_+ (all >= 0) or Z^d_- (all < 0).
  bool in_y() const;

  std::string to_string() const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> entries_;
};

// Certificate for the l^p mass a spectrum or profile carries beyond its
// cutoff N: bound >= sum_{nu > N} a_nu^p.
struct TailCertificate {
  bool exact = true;
  double p = 1.0;
  double bound = 0.0;
  // Optional closed-form rule; used for weighted tails and other exponents.
  TailRulePtr rule;

  static TailCertificate exact_tail() { return {}; }
  static TailCertificate bounded(double p, double bound, TailRulePtr rule = nullptr);
  static TailCertificate uncertified(double p, TailRulePtr rule = nullptr);

  bool certified() const { return exact || std::isfinite(bound); }

  // Bound for another exponent q. Converts through the rule when present,
  // otherwise through monotonicity of l^p norms (q >= p).
  double bound_for(double q, std::int64_t cutoff) const;

  // The rule to use for weighted tails: the attached one, else the generic
  // sup-times-mass rule. Null when uncertified without a rule or exact.
  TailRulePtr effective_rule(std::int64_t cutoff) const;

  // Bound on sum_{from < nu <= to} (w(nu) a_nu)^q for from >= cutoff.
  double weighted_bound(const BlockWeight& w, std::int64_t from, std::int64_t to, double q,
                        std::int64_t cutoff) const;
};

// Finite piece of the Fourier coefficient map of f, together with a
// certificate for everything of order above the cutoff.
class Spectrum {
 public:
  using Entry = std::pair<MultiIndex, std::complex<double>>;

  Spectrum(int dimension, std::vector<Entry> coefficients, std::int64_t cutoff,
           TailCertificate tail, bool y_supported = false);

  static Spectrum empty(int dimension, std::int64_t cutoff = 0);

  int dimension() const { return dimension_; }
  std::int64_t cutoff() const { return cutoff_; }
  const TailCertificate& tail() const { return tail_; }
  bool exact() const { return tail_.exact; }
  bool y_supported() const { return y_supported_; }

  // Sorted lexicographically by multi-index.
  std::span<const Entry> coefficients() const { return coefficients_; }
  std::size_t size() const { return coefficients_.size(); }

  // Zero when k is not stored.
  std::complex<double> at(const MultiIndex& k) const;

 private:
  int dimension_;
  std::vector<Entry> coefficients_;
  std::int64_t cutoff_;
  TailCertificate tail_;
  bool y_supported_;
};

// a_nu = ||H_nu(f)||_{S^p} for nu = 0..N plus the tail certificate.
class BlockProfile {
 public:
  BlockProfile(double p, std::vector<double> values, TailCertificate tail, int dimension = 1,
               bool y_supported = false);

  double p() const { return p_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t nu) const { return values_[nu]; }
  std::int64_t cutoff() const { return static_cast<std::int64_t>(values_.size()) - 1; }
  const TailCertificate& tail() const { return tail_; }
  bool exact() const { return tail_.exact; }
  int dimension() const { return dimension_; }
  bool y_supported() const { return y_supported_; }

  // Bound on sum_{nu > N} a_nu^p; +inf when uncertified.
  double tail_mass() const { return tail_.exact ? 0.0 : tail_.bound; }

 private:
  double p_;
  std::vector<double> values_;
  TailCertificate tail_;
  int dimension_;
  bool y_supported_;
};

// {k in Z^d : |k|_1 = nu} in lexicographic order.
std::vector<MultiIndex> enumerate_block(int d, std::int64_t nu, const Limits& limits = {});

// |{k in Z^d : |k|_1 = nu}|, saturating at UINT64_MAX.
std::uint64_t block_count(int d, std::int64_t nu);

// Number of nonnegative k with |k|_1 = nu, C(nu + d - 1, d - 1).
std::uint64_t nonnegative_block_count(int d, std::int64_t nu);

BlockProfile profile_of(const Spectrum& f, double p);

Interval sp_norm(const BlockProfile& a);
Interval sp_norm(const Spectrum& f, double p);

// ||f - f_h||_{S^p} for the diagonal shift, general form over coefficients.
Interval shift_difference_norm(const Spectrum& f, double h, double p);
// Same quantity from a profile of a Y-supported function (sine form).
Interval shift_difference_norm(const BlockProfile& a, double h);

Spectrum project_y(const Spectrum& f);

// c * f, tail scaled by |c|^p.
Spectrum scaled(const Spectrum& f, std::complex<double> c);

}  // namespace splab
