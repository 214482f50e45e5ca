#pragma once

// FFT-backed spectral calculus on periodic grids.
//
// Transforms are unnormalized complex-to-complex (FFTW). Odd-order derivative
// multipliers zero the Nyquist mode; k^2 keeps it.

#include <complex>
#include <memory>
#include <vector>

#include "wnf/field.hpp"

namespace wnf::spectral {

using cplx = std::complex<double>;

// Signed wavenumber index for FFT slot i of an N-point axis: 0..N/2-1, -N/2..-1.
inline int mode_index(int i, int N) { return i < N / 2 ? i : i - N; }

// Per-grid multiplier tables, flattened to grid.size().
struct Multipliers {
  std::vector<double> k[2];   // k_a with the Nyquist mode zeroed
  std::vector<double> k2[2];  // k_a^2, Nyquist kept
  std::vector<double> neg_k2_total;  // -(k_x^2 + k_y^2)
  std::vector<double> neg_kxky;      // -k_x k_y, each Nyquist zeroed (2D only)
};

// Cached and shared; safe to call from several threads.
std::shared_ptr<const Multipliers> multipliers(const Grid& g);

void forward(const Grid& g, const cplx* in, cplx* out);
void inverse(const Grid& g, const cplx* in, cplx* out);  // no 1/N

// Forward transform of a real field, kept around so several derivatives share it.
class Spectrum {
 public:
  explicit Spectrum(const ScalarField& f);

  // Re ifft(i m * F) / N
  ScalarField apply_imag(const std::vector<double>& m) const;
  // Re ifft(m * F) / N
  ScalarField apply_real(const std::vector<double>& m) const;
  const Multipliers& tables() const { return *mult_; }

 private:
  Grid grid_;
  std::shared_ptr<const Multipliers> mult_;
  std::vector<cplx> hat_;
};

// First derivative of a complex field along `axis`.
std::vector<cplx> derivative(const Grid& g, const std::vector<cplx>& z, int axis);

// Spectral power fraction in the top eighth of |mode| along each axis.
double tail_fraction(const Grid& g, const std::vector<cplx>& z);

// Antiderivative of the zero-mean part of a 1D field; the mean must be handled by
// the caller. Result has zero mean.
ScalarField zero_mean_antiderivative(const ScalarField& f);

}  // namespace wnf::spectral
