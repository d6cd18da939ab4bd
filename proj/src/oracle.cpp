#include "splab/oracle.hpp"

#include <cmath>
#include <variant>

#include "splab/errors.hpp"

namespace splab::oracle {

void OracleConfig::validate() const {
  if (max_cutoff > 10'000) throw DomainError("oracle: max_cutoff must be <= 1e4");
  if (max_profile_cutoff > 1'000'000) throw DomainError("oracle: max_profile_cutoff must be <= 1e6");
  if (!(fd_step > 0.0 && fd_step <= 1e-2)) throw DomainError("oracle: fd_step must lie in (0, 1e-2]");
}

namespace {

double choose(std::int64_t n, std::int64_t k) {
  double c = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

// Multipliers in extended precision: c - m c cancels when m is close to 1.
long double multiplier_ld(const SummationMethod& method, std::int64_t nu) {
  using LD = long double;
  const auto& v = method.variant();
  const LD x = static_cast<LD>(nu);
  if (const auto* m = std::get_if<TriangularPartial>(&v)) return nu <= m->n ? 1.0L : 0.0L;
  if (const auto* m = std::get_if<Fejer>(&v)) {
    return nu <= m->n ? 1.0L - x / static_cast<LD>(m->n + 1) : 0.0L;
  }
  if (const auto* m = std::get_if<AbelPoisson>(&v)) {
    if (nu == 0) return 1.0L;
    return std::pow(static_cast<LD>(m->rho), std::pow(x, static_cast<LD>(m->s)));
  }
  const auto& t = std::get<Taylor>(v);
  if (nu < t.r) return 1.0L;
  const LD rho = t.rho;
  LD lambda = 0.0L;
  for (std::int64_t k = 0; k < t.r; ++k) {
    LD c = 1.0L;
    for (std::int64_t i = 1; i <= k; ++i) c = c * static_cast<LD>(nu - k + i) / static_cast<LD>(i);
    lambda += c * std::pow(1.0L - rho, static_cast<LD>(k)) * std::pow(rho, static_cast<LD>(nu - k));
  }
  return lambda;
}

}  // namespace

double naive_multiplier(const SummationMethod& method, std::int64_t nu) {
  return static_cast<double>(multiplier_ld(method, nu));
}

double naive_error(const SummationMethod& method, const Spectrum& f, double p,
                   const OracleConfig& config) {
  if (!f.exact()) throw PreconditionError("naive_error: spectrum must be exact");
  if (f.cutoff() > config.max_cutoff) throw ResourceError("naive_error: cutoff above max_cutoff");
  long double sum = 0.0L;
  for (const auto& [k, c] : f.coefficients()) {
    const std::complex<long double> coeff(c.real(), c.imag());
    const std::complex<long double> approx = multiplier_ld(method, k.order()) * coeff;
    sum += std::pow(std::abs(coeff - approx), static_cast<long double>(p));
  }
  return static_cast<double>(std::pow(sum, 1.0L / static_cast<long double>(p)));
}

double fd_radial_derivative(const BlockProfile& a, int r, double rho, double step,
                            const OracleConfig& config) {
  if (r < 0) throw DomainError("fd_radial_derivative: r must be >= 0");
  if (!(step > 0.0 && step <= 1e-2)) throw DomainError("fd_radial_derivative: step must lie in (0, 1e-2]");
  if (rho - r * step < 0.0 || rho + r * step >= 1.0) {
    throw DomainError("fd_radial_derivative: rho +- r*step leaves [0, 1)");
  }
  if (a.cutoff() > config.max_profile_cutoff) {
    throw ResourceError("fd_radial_derivative: cutoff above max_profile_cutoff");
  }
  double sum = 0.0;
  for (std::int64_t nu = 0; nu <= a.cutoff(); ++nu) {
    const double a_nu = a[static_cast<std::size_t>(nu)];
    double d = 0.0;
    for (int i = 0; i <= r; ++i) {
      const double point = rho + (0.5 * r - i) * step;
      const double sign = i % 2 == 0 ? 1.0 : -1.0;
      d += sign * choose(r, i) * a_nu * std::pow(point, static_cast<double>(nu));
    }
    d /= std::pow(step, r);
    sum += std::pow(std::abs(d), a.p());
  }
  return std::pow(sum, 1.0 / a.p());
}

namespace {

double param(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw DomainError("series_reference: missing parameter " + key);
  return it->second;
}

double param_or(const std::map<std::string, double>& params, const std::string& key, double def) {
  auto it = params.find(key);
  return it == params.end() ? def : it->second;
}

// int_a^inf x^-e dx, e > 1.
double power_tail_integral(double a, double e) { return std::pow(a, 1.0 - e) / (e - 1.0); }

// sum_{v > c} v^-e lies between the integrals from c+1 and from c.
SeriesValue power_tail(double e, std::int64_t c, double scale_low, double scale_high) {
  const double lo = scale_low * power_tail_integral(static_cast<double>(c + 1), e);
  const double hi = scale_high * power_tail_integral(static_cast<double>(c), e);
  return {0.5 * (lo + hi), 0.5 * (hi - lo), ""};
}

}  // namespace

std::vector<SeriesEntry> series_registry() {
  return {
      {"geometric_d1_p1", "sum_{nu>=1} 2 q^nu", {"q"}, "geometric remainder 2 q^(N+1)/(1-q)"},
      {"power_tail", "sum_{nu>n} nu^-e", {"e", "n", "cutoff"},
       "integral comparison beyond the cutoff"},
      {"fejer_error_power",
       "( (n+1)^-p sum_{nu<=n} (nu^(1-b))^p + sum_{nu>n} nu^(-b p) )^(1/p)",
       {"b", "n", "p", "cutoff"}, "integral comparison beyond the cutoff"},
      {"abel_error_power", "( sum_{nu>=1} (1-rho^nu)^p nu^(-b p) )^(1/p)", {"b", "rho", "p", "cutoff"},
       "integral comparison, weight between 1 - rho^(cutoff+1) and 1"},
      {"shift_norm_power", "( sum_{nu>=1} nu^(-b p) |2 sin(nu h/2)|^p )^(1/p)",
       {"b", "h", "p", "cutoff"}, "between 0 and 2^p times the integral tail"},
      {"poisson_derivative_power",
       "( sum_{nu>=r} (nu!/(nu-r)! rho^(nu-r) nu^-b)^p )^(1/p)", {"b", "rho", "r", "p", "cutoff"},
       "geometric remainder from the term ratio at the cutoff"},
  };
}

SeriesValue series_reference(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "geometric_d1_p1") {
    const double q = param(params, "q");
    if (!(q > 0.0 && q < 1.0)) throw DomainError("geometric_d1_p1: q in (0, 1)");
    double sum = 0.0;
    double term = 2.0 * q;
    int n = 1;
    for (; n <= 5000; ++n, term *= q) sum += term;
    const double rest = term / (1.0 - q);
    return {sum + 0.5 * rest, 0.5 * rest + 1e-15 * sum, "geometric remainder"};
  }
  if (name == "power_tail") {
    const double e = param(params, "e");
    const auto n = static_cast<std::int64_t>(param(params, "n"));
    const auto c = static_cast<std::int64_t>(param_or(params, "cutoff", 1e5));
    if (!(e > 1.0) || c < n) throw DomainError("power_tail: needs e > 1 and cutoff >= n");
    double sum = 0.0;
    for (std::int64_t v = c; v > n; --v) sum += std::pow(static_cast<double>(v), -e);
    SeriesValue out = power_tail(e, c, 1.0, 1.0);
    out.value += sum;
    out.tail_estimate = "integral comparison";
    return out;
  }
  if (name == "fejer_error_power") {
    const double b = param(params, "b");
    const auto n = static_cast<std::int64_t>(param(params, "n"));
    const double p = param(params, "p");
    const auto c = static_cast<std::int64_t>(param_or(params, "cutoff", 1e6));
    if (!(b * p > 1.0) || n < 1 || c <= n) throw DomainError("fejer_error_power: bad parameters");
    double head = 0.0;
    for (std::int64_t v = n; v >= 1; --v) head += std::pow(std::pow(static_cast<double>(v), 1.0 - b), p);
    double rest = 0.0;
    for (std::int64_t v = c; v > n; --v) rest += std::pow(static_cast<double>(v), -b * p);
    const SeriesValue t = power_tail(b * p, c, 1.0, 1.0);
    const double power_sum = head / std::pow(static_cast<double>(n + 1), p) + rest;
    const double lo = std::pow(power_sum + t.value - t.error_bound, 1.0 / p);
    const double hi = std::pow(power_sum + t.value + t.error_bound, 1.0 / p);
    return {0.5 * (lo + hi), 0.5 * (hi - lo), "integral comparison"};
  }
  if (name == "abel_error_power") {
    const double b = param(params, "b");
    const double rho = param(params, "rho");
    const double p = param(params, "p");
    const auto c = static_cast<std::int64_t>(param_or(params, "cutoff", 1e6));
    if (!(b * p > 1.0) || !(rho >= 0.0 && rho < 1.0)) throw DomainError("abel_error_power: bad parameters");
    double sum = 0.0;
    for (std::int64_t v = c; v >= 1; --v) {
      const double x = static_cast<double>(v);
      sum += std::pow(1.0 - std::pow(rho, x), p) * std::pow(x, -b * p);
    }
    const double w = std::pow(1.0 - std::pow(rho, static_cast<double>(c + 1)), p);
    const SeriesValue t = power_tail(b * p, c, w, 1.0);
    const double lo = std::pow(sum + t.value - t.error_bound, 1.0 / p);
    const double hi = std::pow(sum + t.value + t.error_bound, 1.0 / p);
    return {0.5 * (lo + hi), 0.5 * (hi - lo), "integral comparison"};
  }
  if (name == "shift_norm_power") {
    const double b = param(params, "b");
    const double h = param(params, "h");
    const double p = param(params, "p");
    const auto c = static_cast<std::int64_t>(param_or(params, "cutoff", 1e6));
    if (!(b * p > 1.0)) throw DomainError("shift_norm_power: needs b p > 1");
    double sum = 0.0;
    for (std::int64_t v = c; v >= 1; --v) {
      const double x = static_cast<double>(v);
      sum += std::pow(x, -b * p) * std::pow(std::abs(2.0 * std::sin(0.5 * x * h)), p);
    }
    const SeriesValue t = power_tail(b * p, c, 0.0, std::pow(2.0, p));
    const double lo = std::pow(sum, 1.0 / p);
    const double hi = std::pow(sum + t.value + t.error_bound, 1.0 / p);
    return {0.5 * (lo + hi), 0.5 * (hi - lo), "between 0 and 2^p times the integral tail"};
  }
  if (name == "poisson_derivative_power") {
    const double b = param(params, "b");
    const double rho = param(params, "rho");
    const auto r = static_cast<std::int64_t>(param(params, "r"));
    const double p = param(params, "p");
    const auto c = static_cast<std::int64_t>(param_or(params, "cutoff", 1e5));
    if (!(rho > 0.0 && rho < 1.0) || r < 0) throw DomainError("poisson_derivative_power: bad parameters");
    auto term = [&](std::int64_t v) {
      double ff = 1.0;
      for (std::int64_t i = 0; i < r; ++i) ff *= static_cast<double>(v - i);
      const double x = static_cast<double>(v);
      return std::pow(ff * std::pow(rho, x - static_cast<double>(r)) * std::pow(x, -b), p);
    };
    double sum = 0.0;
    for (std::int64_t v = c; v >= std::max<std::int64_t>(r, 1); --v) sum += term(v);
    // (v+1)/(v+1-r) rho bounds every later term ratio.
    const double ratio =
        std::pow(static_cast<double>(c + 1) / static_cast<double>(c + 1 - r) * rho, p);
    if (!(ratio < 1.0)) throw DomainError("poisson_derivative_power: cutoff before the peak");
    const double rest = term(c + 1) / (1.0 - ratio);
    const double lo = std::pow(sum, 1.0 / p);
    const double hi = std::pow(sum + rest, 1.0 / p);
    return {0.5 * (lo + hi), 0.5 * (hi - lo), "geometric remainder"};
  }
  throw UnknownSeriesError("series_reference: unknown series " + name);
}

Spectrum random_exact_spectrum(std::mt19937_64& rng, int d, std::int64_t max_order) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::bernoulli_distribution keep(0.5);
  std::vector<Spectrum::Entry> entries;
  for (std::int64_t nu = 0; nu <= max_order; ++nu) {
    for (auto& k : enumerate_block(d, nu)) {
      if (!keep(rng)) continue;
      entries.emplace_back(std::move(k), std::complex<double>(unit(rng), unit(rng)));
    }
  }
  return Spectrum(d, std::move(entries), max_order, TailCertificate::exact_tail());
}

BlockProfile random_profile(std::mt19937_64& rng, std::int64_t length, double p) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> values(static_cast<std::size_t>(length));
  for (std::int64_t nu = 0; nu < length; ++nu) {
    values[static_cast<std::size_t>(nu)] = unit(rng) / (1.0 + static_cast<double>(nu));
  }
  return BlockProfile(p, std::move(values), TailCertificate::exact_tail());
}

}  // namespace splab::oracle
