#include "wnf/simd/kernels.hpp"

namespace wnf::simd {
namespace {

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void add_scaled(const double* x, double a, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + a * y[i];
}

void mul(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void to_complex(const double* x, cplx* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = cplx(x[i], 0.0);
}

void real_part(const cplx* z, double scale, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = scale * z[i].real();
}

void cmul_real(cplx* z, const double* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = cplx(z[i].real() * m[i], z[i].imag() * m[i]);
}

void cmul_imag(cplx* z, const double* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = cplx(-z[i].imag() * m[i], z[i].real() * m[i]);
}

// Written out to avoid the NaN-recovery path of std::complex operator*.
void cmul(cplx* z, const cplx* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double a = z[i].real(), b = z[i].imag();
    const double c = w[i].real(), d = w[i].imag();
    z[i] = cplx(a * c - b * d, a * d + b * c);
  }
}

void cscale(cplx* z, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = cplx(z[i].real() * s, z[i].imag() * s);
}

double norm2(const cplx* z, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
  return s;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", axpy,      add_scaled, mul,  dot,    to_complex,
                                 real_part, cmul_real, cmul_imag,  cmul, cscale, norm2};
  return table;
}

}  // namespace wnf::simd
