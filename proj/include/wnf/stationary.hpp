#pragma once

// Stationary states U(rho) + V = mu at fixed mass, by normalized gradient flow
// in the amplitude R = sqrt(rho):
//   R <- R - dtau (R U(R^2) + V R - mu R),  then rescale to int R^2 = M,
// with mu the rho-weighted mean of U + V. V is shifted so min V = 0.

#include <optional>
#include <string>
#include <vector>

#include "wnf/field.hpp"
#include "wnf/models.hpp"

namespace wnf {

struct StationaryProblem {
  EntropyModel model;
  ScalarField V;
  double mass = 1.0;
  double tol_r = 1e-10;
  double dtau = 0.0;  // 0: 0.1 h^2 / sqrt(nu)
  long max_iterations = 2'000'000;
  std::optional<ScalarField> initial;  // density guess; default exp(-V) normalized
  Backend backend = Backend::spectral;
};

struct StationaryResult {
  ScalarField rho;
  double mu = 0.0;
  double residual = 0.0;
  long iterations = 0;
  bool converged = false;
  std::vector<std::string> warnings;
};

StationaryResult ground_state(const StationaryProblem& p);

// max_x R |U + V - mu| / max R, mu the rho-weighted mean of U + V (V pinned to
// min V = 0 first). The amplitude weight keeps the underflowed tails of a
// trapped state from dominating.
double stationarity_residual(const EntropyModel& m, const ScalarField& rho, const ScalarField& V,
                             Backend b = Backend::spectral);

struct Level {
  ScalarField rho;
  double mu = 0.0;
  double residual = 0.0;
  long iterations = 0;
  bool converged = false;
};

// Lowest `count` levels of -(nu/2) psi'' + V psi = mu psi by imaginary-time flow
// with Gram-Schmidt deflation against the levels already found, followed by a
// Rayleigh-Ritz step in their span. Each flow stops once its residual projected
// off the lower levels is below tol_r; `converged` reports the full residual.
std::vector<Level> excited_states_schm(const StationaryProblem& p, int count,
                                       std::vector<std::string>* warnings = nullptr);

}  // namespace wnf
