// AVX2 + FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here may run before dispatch has checked the CPU.

#include <immintrin.h>

#include <cmath>

#include "wnf/simd/kernels.hpp"

namespace wnf::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// [m0, m1] -> [m0, m0, m1, m1]
inline __m256d widen_pair(const double* m) {
  const __m128d p = _mm_loadu_pd(m);
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(p), 0b01010000);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void add_scaled(const double* x, double a, const double* y, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i,
                     _mm256_fmadd_pd(va, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = std::fma(a, y[i], x[i]);
}

void mul(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) out[i] = x[i] * y[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void to_complex(const double* x, cplx* z, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // [x0, x0, x1, x1] blended with zeros in the imaginary slots
    _mm256_storeu_pd(zd + 2 * i, _mm256_blend_pd(widen_pair(x + i), zero, 0b1010));
  }
  for (; i < n; ++i) z[i] = cplx(x[i], 0.0);
}

void real_part(const cplx* z, double scale, double* out, std::size_t n) {
  const double* zd = reinterpret_cast<const double*>(z);
  const __m256d vs = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(zd + 2 * i);      // r0 i0 r1 i1
    const __m256d b = _mm256_loadu_pd(zd + 2 * i + 4);  // r2 i2 r3 i3
    const __m256d re = _mm256_unpacklo_pd(a, b);        // r0 r2 r1 r3
    const __m256d ordered = _mm256_permute4x64_pd(re, 0b11011000);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(ordered, vs));
  }
  for (; i < n; ++i) out[i] = scale * z[i].real();
}

void cmul_real(cplx* z, const double* m, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(zd + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(zd + 2 * i), widen_pair(m + i)));
  for (; i < n; ++i) z[i] = cplx(z[i].real() * m[i], z[i].imag() * m[i]);
}

void cmul_imag(cplx* z, const double* m, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  const __m256d sign = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d swapped = _mm256_permute_pd(_mm256_loadu_pd(zd + 2 * i), 0b0101);  // i0 r0 i1 r1
    const __m256d prod = _mm256_mul_pd(swapped, widen_pair(m + i));
    _mm256_storeu_pd(zd + 2 * i, _mm256_xor_pd(prod, sign));
  }
  for (; i < n; ++i) z[i] = cplx(-z[i].imag() * m[i], z[i].real() * m[i]);
}

void cmul(cplx* z, const cplx* w, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  const double* wd = reinterpret_cast<const double*>(w);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(zd + 2 * i);
    const __m256d b = _mm256_loadu_pd(wd + 2 * i);
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0b1111);
    const __m256d a_sw = _mm256_permute_pd(a, 0b0101);
    _mm256_storeu_pd(zd + 2 * i, _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im)));
  }
  for (; i < n; ++i) {
    const double a = z[i].real(), b = z[i].imag();
    const double c = w[i].real(), d = w[i].imag();
    z[i] = cplx(a * c - b * d, a * d + b * c);
  }
}

void cscale(cplx* z, double s, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(zd + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(zd + 2 * i), vs));
  for (; i < n; ++i) z[i] = cplx(z[i].real() * s, z[i].imag() * s);
}

double norm2(const cplx* z, std::size_t n) {
  const double* zd = reinterpret_cast<const double*>(z);
  return dot(zd, zd, 2 * n);
}

}  // namespace

const KernelTable* avx2_kernels_unchecked() {
  static const KernelTable table{"avx2",    axpy,      add_scaled, mul,  dot,    to_complex,
                                 real_part, cmul_real, cmul_imag,  cmul, cscale, norm2};
  return &table;
}

}  // namespace wnf::simd
