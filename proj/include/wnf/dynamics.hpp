#pragma once

// Explicit integration of the mass and momentum balances
//   d_t rho = -div(rho v)
//   d_t v   = -(v.grad) v - (1/rho) div(P_rev + P_visc) + f,  f = -grad V
// with the reversible pressure from an entropy model and the shear closure
// P_visc = -eta (grad v + grad v^T).
//
// In 1D the advection is evaluated as -d_x(v^2/2); with the potential branch
// (div P_rev = rho grad U) the semi-discrete system conserves
// sum rho (v^2/2 - s + V) exactly when f = -grad V is taken with the same
// derivative operator.

#include <functional>
#include <string>
#include <vector>

#include "wnf/field.hpp"
#include "wnf/models.hpp"
#include "wnf/operators.hpp"

namespace wnf {

struct FluidState {
  ScalarField rho;
  VectorField v;
  double t = 0.0;

  const Grid& grid() const { return rho.grid(); }
};

struct ViscousClosure {
  double eta = 0.0;

  SymTensorField pressure(const VectorField& v, Backend b) const;
  // sigma_s = -grad v : P_visc
  ScalarField production(const VectorField& v, Backend b) const;
};

// The force is always f = -grad V taken with the run's backend, so the
// discrete work term cancels exactly in the invariant Q (an analytic -omega^2 x
// would not match the periodic derivative of the kinked V).
struct ExternalPotential {
  ScalarField V;

  static ExternalPotential none(const Grid& g);
  // V = omega^2 |x|^2 / 2
  static ExternalPotential harmonic(const Grid& g, double omega);
  bool is_zero() const;
};

enum class PressureBranch { divergence, potential };
enum class Scheme { rk4, rk2 };

PressureBranch parse_branch(std::string_view name);
Scheme parse_scheme(std::string_view name);
std::string_view to_string(PressureBranch b);
std::string_view to_string(Scheme s);

struct DynamicsConfig {
  EntropyModel model;
  ViscousClosure closure;
  Backend backend = Backend::spectral;
  PressureBranch branch = PressureBranch::potential;
  Scheme scheme = Scheme::rk4;
  double stability_c = 0.1;
  bool override_stability = false;
};

struct Rates {
  ScalarField drho;
  VectorField dv;
};

Rates rhs(const FluidState& s, const DynamicsConfig& cfg, const ExternalPotential& V);

// dt <= C h^2 / max(2 disp kappa, h (max|v| + c_s), 2 eta / rho_min),
// kappa = max(1, sqrt(rho_max / rho_min) / 4), times max(1, 1.6 (rho_max / rho_min)^(1/4))
// for the divergence branch.
double stability_bound(const FluidState& s, const DynamicsConfig& cfg);

// Throws ValidationError when dt exceeds the bound and no override is set,
// NumericalError on floor violation or non-finite results.
FluidState step(const FluidState& s, const DynamicsConfig& cfg, const ExternalPotential& V, double dt);

struct Production {
  ScalarField sigma;
  double total;
};
Production entropy_production(const FluidState& s, const DynamicsConfig& cfg);

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double momentum[2] = {0.0, 0.0};
  double entropy = 0.0;      // S_tot = int rho (s - v^2/2)
  double invariant = 0.0;    // Q = int rho (s - v^2/2 - V)
  double production = 0.0;   // int sigma_s
  double min_rho = 0.0;
  double max_speed = 0.0;
  double momentum_scale = 0.0;  // int rho |v|
};

DiagnosticsRecord diagnostics(const FluidState& s, const DynamicsConfig& cfg, const ExternalPotential& V);

struct SimulationSettings {
  double dt = 1e-3;
  double t_end = 0.0;
  int sample_stride = 1;
  int dump_stride = 0;  // 0: no field dumps
};

struct SimulationResult {
  std::vector<DiagnosticsRecord> records;
  std::vector<FluidState> dumps;
  FluidState final_state;
  long steps = 0;
  bool failed = false;
  std::string failure;
};

using SampleObserver = std::function<void(const FluidState&, long step)>;

// Observer is called on the initial state and at every sampled step.
SimulationResult simulate(const FluidState& initial, const DynamicsConfig& cfg,
                          const ExternalPotential& V, const SimulationSettings& run,
                          const SampleObserver& observer = {});

struct Drifts {
  double mass = 0.0;       // |M(t) - M(0)| / M(0), max over samples
  double momentum = 0.0;   // |P(t) - P(0)| / max(|P(0)|, max_t int rho |v|)
  double invariant = 0.0;  // |Q(t) - Q(0)| / |Q(0)|
  double entropy = 0.0;    // |S(t) - S(0)| / |S(0)|
  double min_production = 0.0;
  double max_entropy_decrease = 0.0;  // largest S(k) - S(k+1) between samples
  bool entropy_monotone = true;       // no decrease beyond 1e-10 max(1, |S|)
};
Drifts drifts(const std::vector<DiagnosticsRecord>& records);

// Number of steps for t_end / dt; throws when t_end is not a whole number of steps.
long step_count(double t_end, double dt);

}  // namespace wnf
