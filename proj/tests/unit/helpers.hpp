#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "splab/spectrum.hpp"

namespace splab::test {

// Exact profile with a single nonzero block.
inline BlockProfile single_block(std::int64_t nu, double value, double p) {
  std::vector<double> v(static_cast<std::size_t>(nu) + 1, 0.0);
  v.back() = value;
  return BlockProfile(p, std::move(v), TailCertificate::exact_tail());
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace splab::test
