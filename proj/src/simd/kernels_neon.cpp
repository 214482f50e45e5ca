// NEON (aarch64) variants; double-precision lanes are two wide.

#include <arm_neon.h>

#include <cmath>

#include "wnf/simd/kernels.hpp"

namespace wnf::simd {
namespace {

void axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void add_scaled(const double* x, double a, const double* y, double* out, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(out + i, vfmaq_f64(vld1q_f64(x + i), va, vld1q_f64(y + i)));
  for (; i < n; ++i) out[i] = std::fma(a, y[i], x[i]);
}

void mul(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  for (; i < n; ++i) out[i] = x[i] * y[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void to_complex(const double* x, cplx* z, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  for (std::size_t i = 0; i < n; ++i) vst1q_f64(zd + 2 * i, vsetq_lane_f64(x[i], vdupq_n_f64(0.0), 0));
}

void real_part(const cplx* z, double scale, double* out, std::size_t n) {
  const double* zd = reinterpret_cast<const double*>(z);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2x2_t v = vld2q_f64(zd + 2 * i);  // val[0] = re, val[1] = im
    vst1q_f64(out + i, vmulq_n_f64(v.val[0], scale));
  }
  for (; i < n; ++i) out[i] = scale * z[i].real();
}

void cmul_real(cplx* z, const double* m, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  for (std::size_t i = 0; i < n; ++i) vst1q_f64(zd + 2 * i, vmulq_n_f64(vld1q_f64(zd + 2 * i), m[i]));
}

void cmul_imag(cplx* z, const double* m, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2x2_t v = vld2q_f64(zd + 2 * i);
    const float64x2_t mm = vld1q_f64(m + i);
    float64x2x2_t r;
    r.val[0] = vnegq_f64(vmulq_f64(v.val[1], mm));
    r.val[1] = vmulq_f64(v.val[0], mm);
    vst2q_f64(zd + 2 * i, r);
  }
  for (; i < n; ++i) z[i] = cplx(-z[i].imag() * m[i], z[i].real() * m[i]);
}

void cmul(cplx* z, const cplx* w, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  const double* wd = reinterpret_cast<const double*>(w);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2x2_t a = vld2q_f64(zd + 2 * i);
    const float64x2x2_t b = vld2q_f64(wd + 2 * i);
    float64x2x2_t r;
    r.val[0] = vfmsq_f64(vmulq_f64(a.val[0], b.val[0]), a.val[1], b.val[1]);
    r.val[1] = vfmaq_f64(vmulq_f64(a.val[0], b.val[1]), a.val[1], b.val[0]);
    vst2q_f64(zd + 2 * i, r);
  }
  for (; i < n; ++i) {
    const double a = z[i].real(), b = z[i].imag();
    const double c = w[i].real(), d = w[i].imag();
    z[i] = cplx(a * c - b * d, a * d + b * c);
  }
}

void cscale(cplx* z, double s, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  for (std::size_t i = 0; i < n; ++i) vst1q_f64(zd + 2 * i, vmulq_n_f64(vld1q_f64(zd + 2 * i), s));
}

double norm2(const cplx* z, std::size_t n) {
  const double* zd = reinterpret_cast<const double*>(z);
  return dot(zd, zd, 2 * n);
}

}  // namespace

const KernelTable* neon_kernels_unchecked() {
  static const KernelTable table{"neon",    axpy,      add_scaled, mul,  dot,    to_complex,
                                 real_part, cmul_real, cmul_imag,  cmul, cscale, norm2};
  return &table;
}

}  // namespace wnf::simd
