#pragma once

#include <cstdint>

#include "wnf/field.hpp"

namespace wnf {

// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, one add and three
// xor-shift-multiply rounds per output.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, 1) from the top 53 bits.
  double uniform();
  // Uniform in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }

 private:
  std::uint64_t state_;
};

// rho = exp(g) with g a real Fourier series over the modes 0 < |m|_inf <= M
// (M = N/8 unless max_mode > 0 overrides it per axis).
// Modes are visited with m_x = 0..M_x and m_y = -M_y..M_y, skipping m = 0 and the
// mirror half of the m_x = 0 column; each mode draws a cosine then a sine
// coefficient from SplitMix64 (uniform in [-1, 1)) and is weighted by
// exp(-64 |m| / N), N the largest axis size. g is then scaled to max|g| = 1.
ScalarField random_log_smooth_density(const Grid& g, std::uint64_t seed, int max_mode = 0);

}  // namespace wnf
