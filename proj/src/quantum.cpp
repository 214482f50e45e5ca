#include "wnf/quantum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wnf/errors.hpp"
#include "wnf/simd/kernels.hpp"
#include "wnf/spectral.hpp"

namespace wnf {

namespace {

void require_1d(const Grid& g, const char* what) {
  if (g.dim() != 1) throw ValidationError(std::string(what) + ": the wavefunction bridge is 1D only");
}

}  // namespace

ScalarField WaveState::density() const {
  ScalarField rho(grid);
  for (std::size_t i = 0; i < psi.size(); ++i) rho[i] = std::norm(psi[i]);
  return rho;
}

double WaveState::norm() const { return simd::norm2(psi) * grid.cell_volume(); }

FluidState from_wavefunction(const WaveState& w) {
  require_1d(w.grid, "from_wavefunction");
  ScalarField rho = w.density();
  const double floor = density_floor(rho);
  for (std::size_t i = 0; i < rho.size(); ++i)
    if (!(rho[i] > floor))
      throw DomainError("from_wavefunction: node in psi at grid index " + std::to_string(i), i, rho[i]);
  const std::vector<cplx> dpsi = spectral::derivative(w.grid, w.psi, 0);
  VectorField v(w.grid);
  for (std::size_t i = 0; i < rho.size(); ++i)
    v[0][i] = w.hbar * std::imag(std::conj(w.psi[i]) * dpsi[i]) / rho[i];
  return {std::move(rho), std::move(v), w.t};
}

Winding measure_winding(const FluidState& f, double hbar) {
  const double circ = f.v[0].integral();
  const double quantum = 2.0 * std::numbers::pi * hbar;
  const long n = std::lround(circ / quantum);
  return {n, std::abs(circ - quantum * n)};
}

WaveState to_wavefunction(const FluidState& f, double hbar, double tol_circ) {
  require_1d(f.grid(), "to_wavefunction");
  if (!(hbar > 0.0)) throw ValidationError("quantum.hbar must be positive");
  require_above_floor(f.rho, "to_wavefunction");
  const Winding wnd = measure_winding(f, hbar);
  if (wnd.defect > tol_circ) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "to_wavefunction: circulation is not quantized (winding defect " << wnd.defect
        << " > tol_circ " << tol_circ << ")";
    throw ValidationError(msg.str());
  }
  const Grid& g = f.grid();
  const double mean_v = f.v[0].mean();
  ScalarField fluct = f.v[0];
  fluct += -mean_v;
  const ScalarField S_periodic = spectral::zero_mean_antiderivative(fluct);
  // Exact quantized mean so exp(iS) closes on itself.
  const double k_wind = 2.0 * std::numbers::pi * wnd.n / g.extent(0);
  WaveState w{g, std::vector<cplx>(g.size()), hbar, f.t};
  const double x0 = g.coord(0, 0);
  const double S0 = S_periodic[0] / hbar;
  for (int i = 0; i < g.points(0); ++i) {
    const double S = S_periodic[i] / hbar - S0 + k_wind * (g.coord(0, i) - x0);
    w.psi[i] = std::polar(std::sqrt(f.rho[i]), S);
  }
  return w;
}

SplitStepPropagator::SplitStepPropagator(const Grid& g, const ScalarField& V, double dt, double hbar)
    : grid_(g), dt_(dt), hbar_(hbar), half_potential_(g.size()), kinetic_(g.size()) {
  require_1d(g, "SplitStepPropagator");
  require_same_grid(g, V.grid(), "SplitStepPropagator");
  if (!(hbar > 0.0)) throw ValidationError("quantum.hbar must be positive");
  const auto m = spectral::multipliers(g);
  const double inv_n = 1.0 / static_cast<double>(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    half_potential_[i] = std::polar(1.0, -V[i] * dt / (2.0 * hbar));
    kinetic_[i] = std::polar(inv_n, -hbar * m->k2[0][i] * dt / 2.0);
  }
}

void SplitStepPropagator::step(WaveState& w) const {
  std::vector<cplx> hat(w.psi.size());
  simd::cmul(w.psi, half_potential_);
  spectral::forward(grid_, w.psi.data(), hat.data());
  simd::cmul(hat, kinetic_);
  spectral::inverse(grid_, hat.data(), w.psi.data());
  simd::cmul(w.psi, half_potential_);
  w.t += dt_;
}

WaveState schrodinger_step(const WaveState& w, const ScalarField& V, double dt) {
  WaveState out = w;
  SplitStepPropagator(w.grid, V, dt, w.hbar).step(out);
  return out;
}

double spectral_tail_fraction(const WaveState& w) { return spectral::tail_fraction(w.grid, w.psi); }

double wave_energy(const WaveState& w, const ScalarField& V) {
  const auto m = spectral::multipliers(w.grid);
  std::vector<cplx> hat(w.psi.size());
  spectral::forward(w.grid, w.psi.data(), hat.data());
  double kin = 0.0;
  for (std::size_t i = 0; i < hat.size(); ++i) kin += m->k2[0][i] * std::norm(hat[i]);
  const double h = w.grid.cell_volume();
  kin *= 0.5 * w.hbar * w.hbar * h / static_cast<double>(hat.size());
  double pot = 0.0;
  for (std::size_t i = 0; i < hat.size(); ++i) pot += V[i] * std::norm(w.psi[i]);
  return kin + pot * h;
}

double fluid_energy(const FluidState& f, const EntropyModel& m, const ScalarField& V, Backend b) {
  const ScalarField s = entropy_density(m, f.rho, b);
  return (f.rho * (0.5 * f.v.norm2() - s + V)).integral();
}

std::vector<cplx> free_gaussian(const Grid& g, double sigma0, double center, double mass, double pedestal,
                                double hbar, double t) {
  require_1d(g, "free_gaussian");
  const double peak = std::pow(2.0 * std::numbers::pi * sigma0 * sigma0, -0.25) * std::sqrt(mass);
  const cplx spread(1.0, hbar * t / (2.0 * sigma0 * sigma0));
  const cplx pref = peak / std::sqrt(spread);
  std::vector<cplx> psi(g.size());
  for (int i = 0; i < g.points(0); ++i) {
    const double dx = g.coord(0, i) - center;
    psi[i] = pedestal * peak + pref * std::exp(-dx * dx / (4.0 * sigma0 * sigma0 * spread));
  }
  return psi;
}

double relative_l2(const ScalarField& a, const ScalarField& ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - ref[i]) * (a[i] - ref[i]);
    den += ref[i] * ref[i];
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(num / den);
}

namespace {

double center_of_mass(const ScalarField& rho) {
  double m = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    m += rho[i];
    mx += rho[i] * rho.grid().coord_of(0, i);
  }
  return mx / m;
}

}  // namespace

Comparison compare_evolutions(const FluidState& initial, const DynamicsConfig& cfg, const ExternalPotential& V,
                              const SimulationSettings& run, double hbar, const DensityOracle& exact) {
  require_1d(initial.grid(), "compare_evolutions");
  if (cfg.model.kind != ModelKind::SchrodingerMadelung)
    throw ValidationError("compare: model must be schm");
  if (cfg.closure.eta != 0.0) throw ValidationError("compare: dynamics.eta must be 0");
  if (std::abs(cfg.model.nu - hbar * hbar) > 1e-12 * std::max(1.0, cfg.model.nu))
    throw ValidationError("compare: model.nu must equal quantum.hbar^2");

  WaveState wave = to_wavefunction(initial, hbar);
  std::vector<ComparisonRow> rows;
  std::vector<std::string> warnings;
  double max_tail = 0.0;
  const SplitStepPropagator prop(initial.grid(), V.V, run.dt, hbar);
  long wave_steps = 0;

  auto observe = [&](const FluidState& f, long k) {
    while (wave_steps < k) {
      prop.step(wave);
      ++wave_steps;
    }
    wave.t = f.t;
    ComparisonRow row;
    row.t = f.t;
    const ScalarField rho_w = wave.density();
    row.rho_error = relative_l2(f.rho, rho_w);
    const FluidState fw = from_wavefunction(wave);
    // rho-weighted RMS velocity difference
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < rho_w.size(); ++i) {
      const double dv = f.v[0][i] - fw.v[0][i];
      num += rho_w[i] * dv * dv;
      den += rho_w[i];
    }
    row.velocity_error = std::sqrt(num / den);
    if (exact) {
      const ScalarField ref = exact(f.t);
      row.fluid_exact_error = relative_l2(f.rho, ref);
      row.wave_exact_error = relative_l2(rho_w, ref);
    } else {
      row.fluid_exact_error = row.wave_exact_error = std::numeric_limits<double>::quiet_NaN();
    }
    row.fluid_mass = f.rho.integral();
    row.wave_norm = wave.norm();
    row.wave_energy = wave_energy(wave, V.V);
    row.fluid_energy = fluid_energy(f, cfg.model, V.V, cfg.backend);
    row.center_fluid = center_of_mass(f.rho);
    row.center_wave = center_of_mass(rho_w);
    const double tail = spectral_tail_fraction(wave);
    if (tail > max_tail) max_tail = tail;
    if (tail > kTailWarning && warnings.empty()) {
      std::ostringstream msg;
      msg << "split-step spectral tail fraction " << tail << " exceeds " << kTailWarning << " at t = " << f.t;
      warnings.push_back(msg.str());
    }
    rows.push_back(row);
  };

  SimulationResult fluid = simulate(initial, cfg, V, run, observe);
  return Comparison{std::move(rows), std::move(fluid), std::move(wave), max_tail, std::move(warnings)};
}

}  // namespace wnf
