#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace splab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed interval [lower, upper] of nonnegative reals. An infinite upper end
// marks a one-sided (uncertified) result.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool certified() const { return std::isfinite(upper); }
  double width() const { return upper - lower; }
  bool contains(double x) const { return lower <= x && x <= upper; }
  bool operator==(const Interval&) const = default;
};

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// |x|^p with the common exponents special-cased.
inline double pow_abs(double x, double p) {
  const double a = std::abs(x);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

inline double pow_abs(std::complex<double> c, double p) {
  if (p == 2.0) return std::norm(c);
  if (p == 1.0) return std::abs(c);
  return std::pow(std::abs(c), p);
}

// x^(1/p) for a power sum x >= 0.
inline double root(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return std::sqrt(x);
  return std::pow(x, 1.0 / p);
}

// Norm interval from the exactly summed part and a bound on the remainder,
// both already raised to the power p.
inline Interval interval_from_power_sums(double known, double tail, double p) {
  const double lo = root(known, p);
  if (tail == 0.0) return {lo, lo};
  if (!std::isfinite(tail)) return {lo, kInf};
  return {lo, root(known + tail, p)};
}

}  // namespace splab
