#pragma once

// Madelung bridge psi = sqrt(rho) exp(iS), v = hbar grad S (m = 1, nu = hbar^2),
// and a split-step Fourier Schrodinger solver for cross-checks. 1D only.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wnf/dynamics.hpp"
#include "wnf/field.hpp"

namespace wnf {

using cplx = std::complex<double>;

struct WaveState {
  Grid grid;
  std::vector<cplx> psi;
  double hbar = 1.0;
  double t = 0.0;

  ScalarField density() const;
  double norm() const;  // int |psi|^2
};

// rho = |psi|^2, v = hbar Im(conj(psi) psi') / |psi|^2. Rejects nodes.
FluidState from_wavefunction(const WaveState& w);

struct Winding {
  long n;          // nearest integer winding number
  double defect;   // |circulation - 2 pi hbar n|
};
Winding measure_winding(const FluidState& f, double hbar);

// S = (1/hbar) int_0^x v, pinned to S = 0 at the leftmost grid point.
// Throws ValidationError when the circulation defect exceeds tol_circ.
WaveState to_wavefunction(const FluidState& f, double hbar, double tol_circ = 1e-8);

// Strang splitting: half potential phase, kinetic phase exp(-i hbar k^2 dt / 2)
// in Fourier space, half potential phase.
class SplitStepPropagator {
 public:
  SplitStepPropagator(const Grid& g, const ScalarField& V, double dt, double hbar);
  void step(WaveState& w) const;
  double dt() const { return dt_; }

 private:
  Grid grid_;
  double dt_, hbar_;
  std::vector<cplx> half_potential_;
  std::vector<cplx> kinetic_;  // includes the 1/N of the inverse transform
};

WaveState schrodinger_step(const WaveState& w, const ScalarField& V, double dt);

// Fraction of spectral power in the top eighth of the modes.
double spectral_tail_fraction(const WaveState& w);
constexpr double kTailWarning = 1e-8;

// <psi|H|psi> = int (hbar^2/2)|psi'|^2 + V |psi|^2
double wave_energy(const WaveState& w, const ScalarField& V);
// int rho (v^2/2 - s + V)
double fluid_energy(const FluidState& f, const EntropyModel& m, const ScalarField& V,
                    Backend b = Backend::spectral);

// Free Gaussian A + psi_G(x, t) with psi_G of width sigma0, centre c and mass M
// (for A = 0); A = pedestal * (2 pi sigma0^2)^(-1/4) sqrt(M).
std::vector<cplx> free_gaussian(const Grid& g, double sigma0, double center, double mass,
                                double pedestal, double hbar, double t);

double relative_l2(const ScalarField& a, const ScalarField& ref);

struct ComparisonRow {
  double t = 0.0;
  double rho_error = 0.0;        // rel L2 of fluid rho vs |psi|^2
  double velocity_error = 0.0;   // rho-weighted RMS of v_f - v_w
  double fluid_exact_error = 0.0;  // NaN when no closed form
  double wave_exact_error = 0.0;
  double fluid_mass = 0.0;
  double wave_norm = 0.0;
  double wave_energy = 0.0;
  double fluid_energy = 0.0;
  double center_fluid = 0.0;
  double center_wave = 0.0;
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  SimulationResult fluid;
  WaveState wave;
  double max_tail_fraction = 0.0;
  std::vector<std::string> warnings;
};

using DensityOracle = std::function<ScalarField(double t)>;

// Runs the fluid solver and the split-step solver from the same state with the
// same dt, comparing at every sampled step.
Comparison compare_evolutions(const FluidState& initial, const DynamicsConfig& cfg,
                              const ExternalPotential& V, const SimulationSettings& run, double hbar,
                              const DensityOracle& exact = {});

}  // namespace wnf
