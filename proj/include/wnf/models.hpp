#pragma once

// Entropy functionals s(rho, grad rho) and the constitutive pipeline
// entropy -> reversible pressure -> potential -> entropy current.
//
// Sign conventions. The three named fluids use the concave direction:
//   Schrodinger-Madelung  s = -(nu/8) |grad rho|^2 / rho^2
//   Landau                s = -(nu/2) |grad rho|^2
//   Alternative           s = -(nu/4) |grad rho|^2 / rho
// FisherShannon keeps the Fisher+Shannon sign as written:
//   s = nu |grad rho|^2 / rho^2 + k ln rho + s0 + s~(rho),
// so FisherShannon(nu) equals Schrodinger-Madelung(-8 nu) plus a local part.
// Every kind adds s0. Euler is s~(rho) + s0.
//
// All evaluations reject rho <= 1e-12 * mean(rho).

#include <string_view>

#include "wnf/field.hpp"
#include "wnf/operators.hpp"

namespace wnf {

enum class ModelKind { Euler, SchrodingerMadelung, Landau, Alternative, FisherShannon };

ModelKind parse_model_kind(std::string_view name);  // accepts "schm", "landau", ... too
std::string_view to_string(ModelKind k);

// Local part s~(rho).
struct LocalPart {
  enum class Form { none, inverse, log, power };
  Form form = Form::none;
  double a = 0.0;  // inverse: a/rho, log: a ln rho, power: a rho^p
  double p = 1.0;

  double value(double rho) const;
  double d1(double rho) const;
  double d2(double rho) const;
  bool is_constant() const { return form == Form::none || a == 0.0; }
};

LocalPart::Form parse_local_form(std::string_view name);
std::string_view to_string(LocalPart::Form f);

struct EntropyModel {
  ModelKind kind = ModelKind::SchrodingerMadelung;
  double nu = 0.0;
  double k = 0.0;  // FisherShannon only
  double s0 = 0.0;
  LocalPart local;

  static EntropyModel schm(double nu, double s0 = 0.0);
  static EntropyModel landau(double nu, double s0 = 0.0);
  static EntropyModel alternative(double nu, double s0 = 0.0);
  static EntropyModel fisher_shannon(double nu, double k, double s0 = 0.0, LocalPart local = {});
  static EntropyModel euler(LocalPart local, double s0 = 0.0);

  // Throws ValidationError naming the offending coefficient.
  void validate() const;

  // Pointwise constitutive functions of rho and g2 = |grad rho|^2.
  double s(double rho, double g2) const;
  double d1s(double rho, double g2) const;  // d s / d rho at fixed grad rho
  double c(double rho) const;               // d s / d grad rho = c(rho) grad rho

  // Local (gradient-free) part and its derivatives, including k ln rho.
  double local_s(double rho) const;
  double local_d1(double rho) const;
  double local_d2(double rho) const;

  // Linear dispersion coefficient w = disp * k^2 about a uniform state rho0.
  double dispersion(double rho0) const;
  // Squared sound speed from the local pressure p = -rho^2 local_d1.
  double sound_speed2(double rho) const;
};

double density_floor(const ScalarField& rho);
// Throws DomainError with the first grid index at or below the floor.
void require_above_floor(const ScalarField& rho, const char* what);

struct ConstitutiveBundle {
  ScalarField s;
  ScalarField d1s;
  VectorField d2s;
  SymTensorField P_rev;
  ScalarField U;
  EntropyModel model;
  Backend backend;
};

ConstitutiveBundle constitutive(const EntropyModel& m, const ScalarField& rho,
                                Backend b = Backend::spectral);

ScalarField entropy_density(const EntropyModel& m, const ScalarField& rho,
                            Backend b = Backend::spectral);

// P = (rho^2/2) [(div d2s - 2 d1s) I + grad d2s]
SymTensorField reversible_pressure(const EntropyModel& m, const ScalarField& rho,
                                   Backend b = Backend::spectral);
// Per-fluid closed forms, written independently of the generic route.
SymTensorField reversible_pressure_closed(const EntropyModel& m, const ScalarField& rho,
                                          Backend b = Backend::spectral);

// U = div(rho d2s) - d(rho s)/d rho
ScalarField quantum_potential(const EntropyModel& m, const ScalarField& rho,
                              Backend b = Backend::spectral);
ScalarField quantum_potential_closed(const EntropyModel& m, const ScalarField& rho,
                                     Backend b = Backend::spectral);

// rho U without dividing by rho, as a function of the amplitude R = sqrt(rho):
// returns R * U(R^2). Used by the stationary flow where R underflows in the tails.
ScalarField amplitude_potential(const EntropyModel& m, const ScalarField& R,
                                Backend b = Backend::spectral);

// j = -v.P + (rho^2/2)(d2s div v + d2s . grad v), with (a . grad v)_j = a_i d_i v_j.
VectorField entropy_current(const EntropyModel& m, const ScalarField& rho, const VectorField& v,
                            const SymTensorField& P_total, Backend b = Backend::spectral);
VectorField entropy_current_closed(const EntropyModel& m, const ScalarField& rho,
                                   const VectorField& v, const SymTensorField& P_total,
                                   Backend b = Backend::spectral);

struct PotentialResidual {
  VectorField r;        // div P_rev - rho grad U
  double max_norm;      // max |r|
  double scale;         // max |rho grad U|
  double relative;      // max_norm / scale, or 0 when both are below 1e-12
};
PotentialResidual potentializability_residual(const EntropyModel& m, const ScalarField& rho,
                                              Backend b = Backend::spectral);

// max |s(rho1 rho2) - s(rho1) - s(rho2)| on the tensor-product grid.
double separability_defect(const EntropyModel& m, const ScalarField& rho1, const ScalarField& rho2);

// max |s(lambda rho) - s(rho)|
double mass_scale_defect(const EntropyModel& m, const ScalarField& rho, double lambda,
                         Backend b = Backend::spectral);

}  // namespace wnf
