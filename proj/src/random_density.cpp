#include "wnf/random_density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace wnf {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

ScalarField random_log_smooth_density(const Grid& g, std::uint64_t seed, int max_mode) {
  SplitMix64 rng(seed);
  const int Mx = max_mode > 0 ? std::min(max_mode, g.points(0) / 2 - 1) : g.points(0) / 8;
  const int My = g.dim() == 2 ? (max_mode > 0 ? std::min(max_mode, g.points(1) / 2 - 1) : g.points(1) / 8) : 0;
  const double Nmax = std::max(g.points(0), g.dim() == 2 ? g.points(1) : 0);

  struct Mode {
    int mx, my;
    double a, b;
  };
  std::vector<Mode> modes;
  for (int mx = 0; mx <= Mx; ++mx)
    for (int my = -My; my <= My; ++my) {
      if (mx == 0 && my <= 0) continue;
      const double env = std::exp(-64.0 * std::hypot(mx, my) / Nmax);
      const double a = rng.symmetric() * env;
      const double b = rng.symmetric() * env;
      modes.push_back({mx, my, a, b});
    }

  ScalarField expo(g);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t q = 0; q < g.size(); ++q) {
    const double x = g.coord_of(0, q);
    const double y = g.dim() == 2 ? g.coord_of(1, q) : 0.0;
    double acc = 0.0;
    for (const auto& m : modes) {
      double phase = two_pi * m.mx * x / g.extent(0);
      if (g.dim() == 2) phase += two_pi * m.my * y / g.extent(1);
      acc += m.a * std::cos(phase) + m.b * std::sin(phase);
    }
    expo[q] = acc;
  }
  const double peak = expo.max_abs();
  for (std::size_t q = 0; q < g.size(); ++q) expo[q] = std::exp(expo[q] / peak);
  return expo;
}

}  // namespace wnf
