#include "wnf/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "wnf/errors.hpp"
#include "wnf/simd/kernels.hpp"

namespace wnf::spectral {

namespace {

// The FFTW planner is not thread-safe; execution of an existing plan on new
// arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan plan_for(const Grid& g, int sign) {
  using Key = std::tuple<int, int, int>;
  static std::map<Key, fftw_plan> cache;
  const Key key{g.points(0), g.points(1), sign};
  std::lock_guard lock(planner_mutex());
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const std::size_t n = g.size();
  auto* a = fftw_alloc_complex(n);
  auto* b = fftw_alloc_complex(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan p = g.dim() == 1 ? fftw_plan_dft_1d(g.points(0), a, b, sign, flags)
                             : fftw_plan_dft_2d(g.points(0), g.points(1), a, b, sign, flags);
  fftw_free(a);
  fftw_free(b);
  if (!p) throw NumericalError("FFTW failed to create a plan");
  cache.emplace(key, p);
  return p;
}

std::shared_ptr<const Multipliers> build(const Grid& g) {
  auto m = std::make_shared<Multipliers>();
  const std::size_t n = g.size();
  const int Nx = g.points(0), Ny = g.points(1);
  for (int a = 0; a < g.dim(); ++a) {
    m->k[a].assign(n, 0.0);
    m->k2[a].assign(n, 0.0);
  }
  m->neg_k2_total.assign(n, 0.0);
  if (g.dim() == 2) m->neg_kxky.assign(n, 0.0);

  auto wave = [&](int a, int i, bool zero_nyquist) {
    const int N = g.points(a);
    if (zero_nyquist && i == N / 2) return 0.0;
    return 2.0 * std::numbers::pi / g.extent(a) * mode_index(i, N);
  };
  for (int i = 0; i < Nx; ++i)
    for (int j = 0; j < Ny; ++j) {
      const std::size_t q = g.index(i, j);
      const double kx = wave(0, i, true), kx_full = wave(0, i, false);
      m->k[0][q] = kx;
      m->k2[0][q] = kx_full * kx_full;
      double total = kx_full * kx_full;
      if (g.dim() == 2) {
        const double ky = wave(1, j, true), ky_full = wave(1, j, false);
        m->k[1][q] = ky;
        m->k2[1][q] = ky_full * ky_full;
        total += ky_full * ky_full;
        m->neg_kxky[q] = -kx * ky;
      }
      m->neg_k2_total[q] = -total;
    }
  return m;
}

}  // namespace

std::shared_ptr<const Multipliers> multipliers(const Grid& g) {
  using Key = std::tuple<int, int, int, double, double>;
  static std::map<Key, std::shared_ptr<const Multipliers>> cache;
  static std::mutex mtx;
  const Key key{g.dim(), g.points(0), g.points(1), g.extent(0), g.extent(1)};
  std::lock_guard lock(mtx);
  auto& slot = cache[key];
  if (!slot) slot = build(g);
  return slot;
}

void forward(const Grid& g, const cplx* in, cplx* out) {
  fftw_execute_dft(plan_for(g, FFTW_FORWARD), reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void inverse(const Grid& g, const cplx* in, cplx* out) {
  fftw_execute_dft(plan_for(g, FFTW_BACKWARD), reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

Spectrum::Spectrum(const ScalarField& f) : grid_(f.grid()), mult_(multipliers(f.grid())), hat_(f.size()) {
  std::vector<cplx> z(f.size());
  simd::kernels().to_complex(f.data(), z.data(), z.size());
  forward(grid_, z.data(), hat_.data());
}

ScalarField Spectrum::apply_imag(const std::vector<double>& m) const {
  std::vector<cplx> w = hat_, back(hat_.size());
  simd::kernels().cmul_imag(w.data(), m.data(), w.size());
  inverse(grid_, w.data(), back.data());
  ScalarField out(grid_);
  simd::kernels().real_part(back.data(), 1.0 / static_cast<double>(back.size()), out.data(), out.size());
  return out;
}

ScalarField Spectrum::apply_real(const std::vector<double>& m) const {
  std::vector<cplx> w = hat_, back(hat_.size());
  simd::kernels().cmul_real(w.data(), m.data(), w.size());
  inverse(grid_, w.data(), back.data());
  ScalarField out(grid_);
  simd::kernels().real_part(back.data(), 1.0 / static_cast<double>(back.size()), out.data(), out.size());
  return out;
}

std::vector<cplx> derivative(const Grid& g, const std::vector<cplx>& z, int axis) {
  const auto m = multipliers(g);
  std::vector<cplx> hat(z.size()), out(z.size());
  forward(g, z.data(), hat.data());
  simd::kernels().cmul_imag(hat.data(), m->k[axis].data(), hat.size());
  inverse(g, hat.data(), out.data());
  simd::kernels().cscale(out.data(), 1.0 / static_cast<double>(out.size()), out.size());
  return out;
}

double tail_fraction(const Grid& g, const std::vector<cplx>& z) {
  std::vector<cplx> hat(z.size());
  forward(g, z.data(), hat.data());
  double total = 0.0, tail = 0.0;
  for (int i = 0; i < g.points(0); ++i)
    for (int j = 0; j < g.points(1); ++j) {
      const double p = std::norm(hat[g.index(i, j)]);
      total += p;
      bool top = std::abs(mode_index(i, g.points(0))) * 8 > 7 * (g.points(0) / 2);
      if (g.dim() == 2) top = top || std::abs(mode_index(j, g.points(1))) * 8 > 7 * (g.points(1) / 2);
      if (top) tail += p;
    }
  return total > 0.0 ? tail / total : 0.0;
}

ScalarField zero_mean_antiderivative(const ScalarField& f) {
  const Grid& g = f.grid();
  if (g.dim() != 1) throw ValidationError("zero_mean_antiderivative: 1D only");
  const auto m = multipliers(g);
  std::vector<double> inv_k(g.size(), 0.0);
  for (std::size_t q = 0; q < inv_k.size(); ++q)
    if (m->k[0][q] != 0.0) inv_k[q] = -1.0 / m->k[0][q];  // 1/(ik) = -i/k
  return Spectrum(f).apply_imag(inv_k);
}

}  // namespace wnf::spectral
