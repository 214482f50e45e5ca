#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wnf/field.hpp"

namespace wnf::test {

inline constexpr double pi = std::numbers::pi;

inline double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_diff(const VectorField& a, const VectorField& b) {
  double m = 0.0;
  for (int c = 0; c < a.dim(); ++c) m = std::max(m, max_diff(a[c], b[c]));
  return m;
}

inline double max_diff(const SymTensorField& a, const SymTensorField& b) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) m = std::max(m, max_diff(a(i, j), b(i, j)));
  return m;
}

// Least-squares slope of log(err) against log(h).
template <class Hs, class Es>
double observed_order(const Hs& h, const Es& e) {
  const std::size_t n = h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(h[i]), y = std::log(e[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace wnf::test
