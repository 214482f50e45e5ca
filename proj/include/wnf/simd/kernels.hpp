#pragma once

// Pointwise arithmetic kernels used by the field operators and integrators.
//
// Every kernel has a scalar reference implementation; vector variants (AVX2+FMA
// on x86-64, NEON on aarch64) are selected once at startup. Set WNF_SIMD=scalar
// in the environment to force the reference path.
//
// Complex arrays are interleaved (re, im) pairs, layout-compatible with
// std::complex<double> and fftw_complex.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace wnf::simd {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out[i] = x[i] + a * y[i]
  void (*add_scaled)(const double* x, double a, const double* y, double* out, std::size_t n);
  // out[i] = x[i] * y[i]
  void (*mul)(const double* x, const double* y, double* out, std::size_t n);
  // sum of x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);

  // z[i] = x[i] + 0i
  void (*to_complex)(const double* x, cplx* z, std::size_t n);
  // out[i] = scale * Re z[i]
  void (*real_part)(const cplx* z, double scale, double* out, std::size_t n);
  // z[i] *= m[i]
  void (*cmul_real)(cplx* z, const double* m, std::size_t n);
  // z[i] *= i * m[i]
  void (*cmul_imag)(cplx* z, const double* m, std::size_t n);
  // z[i] *= w[i]
  void (*cmul)(cplx* z, const cplx* w, std::size_t n);
  // z[i] *= s
  void (*cscale)(cplx* z, double s, std::size_t n);
  // sum |z[i]|^2
  double (*norm2)(const cplx* z, std::size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the variant is not compiled in or the CPU lacks the extension.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Active table: best supported variant unless WNF_SIMD overrides it.
const KernelTable& kernels();

// Convenience wrappers over the active table.
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  kernels().axpy(a, x.data(), y.data(), y.size());
}
inline void add_scaled(std::span<const double> x, double a, std::span<const double> y,
                       std::span<double> out) {
  kernels().add_scaled(x.data(), a, y.data(), out.data(), out.size());
}
inline void mul(std::span<const double> x, std::span<const double> y, std::span<double> out) {
  kernels().mul(x.data(), y.data(), out.data(), out.size());
}
inline double dot(std::span<const double> x, std::span<const double> y) {
  return kernels().dot(x.data(), y.data(), x.size());
}
inline void cmul(std::span<cplx> z, std::span<const cplx> w) {
  kernels().cmul(z.data(), w.data(), z.size());
}
inline double norm2(std::span<const cplx> z) { return kernels().norm2(z.data(), z.size()); }

}  // namespace wnf::simd
