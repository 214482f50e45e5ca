#include "wnf/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "wnf/errors.hpp"

namespace wnf {

ModelKind parse_model_kind(std::string_view n) {
  if (n == "euler" || n == "Euler") return ModelKind::Euler;
  if (n == "schm" || n == "SchrodingerMadelung" || n == "schrodinger-madelung")
    return ModelKind::SchrodingerMadelung;
  if (n == "landau" || n == "Landau") return ModelKind::Landau;
  if (n == "alternative" || n == "Alternative") return ModelKind::Alternative;
  if (n == "fisher-shannon" || n == "FisherShannon") return ModelKind::FisherShannon;
  throw ValidationError("model.name: unknown model '" + std::string(n) + "'");
}

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Euler: return "euler";
    case ModelKind::SchrodingerMadelung: return "schm";
    case ModelKind::Landau: return "landau";
    case ModelKind::Alternative: return "alternative";
    case ModelKind::FisherShannon: return "fisher-shannon";
  }
  return "?";
}

LocalPart::Form parse_local_form(std::string_view n) {
  if (n == "none") return LocalPart::Form::none;
  if (n == "inverse") return LocalPart::Form::inverse;
  if (n == "log") return LocalPart::Form::log;
  if (n == "power") return LocalPart::Form::power;
  throw ValidationError("model.local: unknown local part '" + std::string(n) +
                        "' (expected none, inverse, log or power)");
}

std::string_view to_string(LocalPart::Form f) {
  switch (f) {
    case LocalPart::Form::none: return "none";
    case LocalPart::Form::inverse: return "inverse";
    case LocalPart::Form::log: return "log";
    case LocalPart::Form::power: return "power";
  }
  return "?";
}

double LocalPart::value(double r) const {
  switch (form) {
    case Form::none: return 0.0;
    case Form::inverse: return a / r;
    case Form::log: return a * std::log(r);
    case Form::power: return a * std::pow(r, p);
  }
  return 0.0;
}

double LocalPart::d1(double r) const {
  switch (form) {
    case Form::none: return 0.0;
    case Form::inverse: return -a / (r * r);
    case Form::log: return a / r;
    case Form::power: return a * p * std::pow(r, p - 1.0);
  }
  return 0.0;
}

double LocalPart::d2(double r) const {
  switch (form) {
    case Form::none: return 0.0;
    case Form::inverse: return 2.0 * a / (r * r * r);
    case Form::log: return -a / (r * r);
    case Form::power: return a * p * (p - 1.0) * std::pow(r, p - 2.0);
  }
  return 0.0;
}

EntropyModel EntropyModel::schm(double nu, double s0) {
  return {ModelKind::SchrodingerMadelung, nu, 0.0, s0, {}};
}
EntropyModel EntropyModel::landau(double nu, double s0) { return {ModelKind::Landau, nu, 0.0, s0, {}}; }
EntropyModel EntropyModel::alternative(double nu, double s0) {
  return {ModelKind::Alternative, nu, 0.0, s0, {}};
}
EntropyModel EntropyModel::fisher_shannon(double nu, double k, double s0, LocalPart local) {
  return {ModelKind::FisherShannon, nu, k, s0, local};
}
EntropyModel EntropyModel::euler(LocalPart local, double s0) {
  return {ModelKind::Euler, 0.0, 0.0, s0, local};
}

void EntropyModel::validate() const {
  auto finite = [](double x, const char* name) {
    if (!std::isfinite(x)) throw ValidationError(std::string("model.") + name + " must be finite");
  };
  finite(nu, "nu");
  finite(k, "k");
  finite(s0, "s0");
  finite(local.a, "local_a");
  finite(local.p, "local_p");
  const bool named = kind == ModelKind::SchrodingerMadelung || kind == ModelKind::Landau ||
                     kind == ModelKind::Alternative;
  if (named && nu < 0.0)
    throw ValidationError("model.nu must be >= 0 for " + std::string(to_string(kind)) + ", got " +
                          std::to_string(nu));
  if (kind != ModelKind::FisherShannon && k != 0.0)
    throw ValidationError("model.k is only meaningful for fisher-shannon");
  if (named && local.form != LocalPart::Form::none)
    throw ValidationError("model.local is only meaningful for euler and fisher-shannon");
  if (kind == ModelKind::Euler && nu != 0.0)
    throw ValidationError("model.nu is not a coefficient of the euler kind");
}

double EntropyModel::local_s(double r) const {
  double out = local.value(r);
  if (kind == ModelKind::FisherShannon) out += k * std::log(r);
  return out;
}

double EntropyModel::local_d1(double r) const {
  double out = local.d1(r);
  if (kind == ModelKind::FisherShannon) out += k / r;
  return out;
}

double EntropyModel::local_d2(double r) const {
  double out = local.d2(r);
  if (kind == ModelKind::FisherShannon) out -= k / (r * r);
  return out;
}

double EntropyModel::s(double r, double g2) const {
  switch (kind) {
    case ModelKind::SchrodingerMadelung: return -nu / 8.0 * g2 / (r * r) + s0;
    case ModelKind::Landau: return -nu / 2.0 * g2 + s0;
    case ModelKind::Alternative: return -nu / 4.0 * g2 / r + s0;
    case ModelKind::FisherShannon: return nu * g2 / (r * r) + local_s(r) + s0;
    case ModelKind::Euler: return local_s(r) + s0;
  }
  return 0.0;
}

double EntropyModel::d1s(double r, double g2) const {
  switch (kind) {
    case ModelKind::SchrodingerMadelung: return nu / 4.0 * g2 / (r * r * r);
    case ModelKind::Landau: return 0.0;
    case ModelKind::Alternative: return nu / 4.0 * g2 / (r * r);
    case ModelKind::FisherShannon: return -2.0 * nu * g2 / (r * r * r) + local_d1(r);
    case ModelKind::Euler: return local_d1(r);
  }
  return 0.0;
}

double EntropyModel::c(double r) const {
  switch (kind) {
    case ModelKind::SchrodingerMadelung: return -nu / 4.0 / (r * r);
    case ModelKind::Landau: return -nu;
    case ModelKind::Alternative: return -nu / 2.0 / r;
    case ModelKind::FisherShannon: return 2.0 * nu / (r * r);
    case ModelKind::Euler: return 0.0;
  }
  return 0.0;
}

double EntropyModel::dispersion(double rho0) const {
  switch (kind) {
    case ModelKind::SchrodingerMadelung: return std::sqrt(nu) / 2.0;
    case ModelKind::Landau: return std::sqrt(nu) * rho0;
    case ModelKind::Alternative: return std::sqrt(nu * rho0 / 2.0);
    case ModelKind::FisherShannon: return std::sqrt(8.0 * std::abs(nu)) / 2.0;
    case ModelKind::Euler: return 0.0;
  }
  return 0.0;
}

double EntropyModel::sound_speed2(double r) const {
  // p = -rho^2 s~', dp/drho = -2 rho s~' - rho^2 s~''
  return -2.0 * r * local_d1(r) - r * r * local_d2(r);
}

double density_floor(const ScalarField& rho) { return 1e-12 * rho.mean(); }

void require_above_floor(const ScalarField& rho, const char* what) {
  const double floor = density_floor(rho);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > floor) || !std::isfinite(rho[i])) {
      std::ostringstream msg;
      msg.precision(6);
      msg << what << ": density " << rho[i] << " at grid index " << i << " is at or below the floor " << floor;
      throw DomainError(msg.str(), i, rho[i]);
    }
  }
}

namespace {

ScalarField pointwise(const ScalarField& rho, const ScalarField& g2,
                      double (EntropyModel::*f)(double, double) const, const EntropyModel& m) {
  ScalarField out(rho.grid());
  for (std::size_t i = 0; i < rho.size(); ++i) out[i] = (m.*f)(rho[i], g2[i]);
  return out;
}

ScalarField c_field(const EntropyModel& m, const ScalarField& rho) {
  ScalarField out(rho.grid());
  for (std::size_t i = 0; i < rho.size(); ++i) out[i] = m.c(rho[i]);
  return out;
}

ScalarField local_field(const ScalarField& rho, auto&& f) {
  ScalarField out(rho.grid());
  for (std::size_t i = 0; i < rho.size(); ++i) out[i] = f(rho[i]);
  return out;
}

}  // namespace

ConstitutiveBundle constitutive(const EntropyModel& m, const ScalarField& rho, Backend b) {
  require_above_floor(rho, "constitutive");
  const VectorField g = grad(rho, b);
  const ScalarField g2 = g.norm2();
  ScalarField s = pointwise(rho, g2, &EntropyModel::s, m);
  ScalarField d1s = pointwise(rho, g2, &EntropyModel::d1s, m);
  VectorField d2s = c_field(m, rho) * g;

  SymTensorField grad_d2s = sym_grad(d2s, b);
  ScalarField div_d2s = grad_d2s.trace();
  SymTensorField P = SymTensorField::isotropic(add_scaled(div_d2s, -2.0, d1s)) + grad_d2s;
  ScalarField half_rho2 = 0.5 * (rho * rho);
  P *= half_rho2;

  ScalarField U = div(rho * d2s, b) - s - rho * d1s;

  return {std::move(s), std::move(d1s), std::move(d2s), std::move(P), std::move(U), m, b};
}

ScalarField entropy_density(const EntropyModel& m, const ScalarField& rho, Backend b) {
  require_above_floor(rho, "entropy_density");
  const ScalarField g2 = grad(rho, b).norm2();
  return pointwise(rho, g2, &EntropyModel::s, m);
}

SymTensorField reversible_pressure(const EntropyModel& m, const ScalarField& rho, Backend b) {
  return constitutive(m, rho, b).P_rev;
}

ScalarField quantum_potential(const EntropyModel& m, const ScalarField& rho, Backend b) {
  // Same route as constitutive() without the pressure tensor.
  require_above_floor(rho, "quantum_potential");
  const VectorField g = grad(rho, b);
  const ScalarField g2 = g.norm2();
  ScalarField U(rho.grid());
  ScalarField rho_c(rho.grid());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    U[i] = -(m.s(rho[i], g2[i]) + rho[i] * m.d1s(rho[i], g2[i]));
    rho_c[i] = rho[i] * m.c(rho[i]);
  }
  if (m.kind != ModelKind::Euler) U += div(rho_c * g, b);
  return U;
}

namespace {

// Closed-form Schrodinger-Madelung pressure for coefficient nu_s:
// -(nu_s/8)(lap rho I + hess rho - 2 grad rho grad rho / rho)
SymTensorField schm_pressure(double nu_s, const ScalarField& rho, Backend b) {
  const VectorField g = grad(rho, b);
  const ScalarField inv_rho = local_field(rho, [](double r) { return 1.0 / r; });
  SymTensorField P = SymTensorField::isotropic(laplacian(rho, b)) + hessian(rho, b) -
                     2.0 * (inv_rho * SymTensorField::dyad(g, g));
  return (-nu_s / 8.0) * P;
}

// -(nu_s/2) lap R / R
ScalarField schm_potential(double nu_s, const ScalarField& rho, Backend b) {
  const ScalarField R = local_field(rho, [](double r) { return std::sqrt(r); });
  const ScalarField lapR = laplacian(R, b);
  ScalarField U(rho.grid());
  for (std::size_t i = 0; i < U.size(); ++i) U[i] = -nu_s / 2.0 * lapR[i] / R[i];
  return U;
}

}  // namespace

SymTensorField reversible_pressure_closed(const EntropyModel& m, const ScalarField& rho, Backend b) {
  require_above_floor(rho, "reversible_pressure_closed");
  const double nu = m.nu;
  auto local_pressure = [&] {
    return SymTensorField::isotropic(
        local_field(rho, [&](double r) { return -r * r * m.local_d1(r); }));
  };
  switch (m.kind) {
    case ModelKind::SchrodingerMadelung: return schm_pressure(nu, rho, b);
    case ModelKind::Landau: {
      SymTensorField P = SymTensorField::isotropic(laplacian(rho, b)) + hessian(rho, b);
      return (-nu / 2.0) * ((rho * rho) * P);
    }
    case ModelKind::Alternative: {
      const VectorField g = grad(rho, b);
      SymTensorField P = rho * (SymTensorField::isotropic(laplacian(rho, b)) + hessian(rho, b)) -
                         SymTensorField::dyad(g, g);
      return (-nu / 4.0) * P;
    }
    case ModelKind::FisherShannon: return schm_pressure(-8.0 * nu, rho, b) + local_pressure();
    case ModelKind::Euler: return local_pressure();
  }
  throw ValidationError("unknown model kind");
}

ScalarField quantum_potential_closed(const EntropyModel& m, const ScalarField& rho, Backend b) {
  require_above_floor(rho, "quantum_potential_closed");
  const double nu = m.nu;
  // -d(rho s~)/d rho - s0
  const ScalarField local = local_field(rho, [&](double r) { return -(m.local_s(r) + r * m.local_d1(r)) - m.s0; });
  switch (m.kind) {
    case ModelKind::SchrodingerMadelung: return schm_potential(nu, rho, b) + local;
    case ModelKind::Landau: {
      ScalarField half_rho2 = 0.5 * (rho * rho);
      return (-nu / 2.0) * (rho * laplacian(rho, b) + laplacian(half_rho2, b)) + local;
    }
    case ModelKind::Alternative: return (-nu / 2.0) * laplacian(rho, b) + local;
    case ModelKind::FisherShannon: return schm_potential(-8.0 * nu, rho, b) + local;
    case ModelKind::Euler: return local;
  }
  throw ValidationError("unknown model kind");
}

ScalarField amplitude_potential(const EntropyModel& m, const ScalarField& R, Backend b) {
  const double nu = m.nu;
  const ScalarField rho = R * R;
  switch (m.kind) {
    case ModelKind::SchrodingerMadelung: return (-nu / 2.0) * laplacian(R, b) - m.s0 * R;
    case ModelKind::Alternative: return R * ((-nu / 2.0) * laplacian(rho, b)) - m.s0 * R;
    case ModelKind::Landau: {
      const ScalarField g2 = grad(rho, b).norm2();
      return R * ((-nu) * (rho * laplacian(rho, b) + 0.5 * g2)) - m.s0 * R;
    }
    case ModelKind::FisherShannon:
    case ModelKind::Euler: return R * quantum_potential(m, rho, b);
  }
  throw ValidationError("unknown model kind");
}

namespace {

// (a . grad v)_j = a_i d_i v_j
VectorField advect_with(const VectorField& a, const VectorField& v, Backend b) {
  VectorField out(v.grid());
  for (int j = 0; j < v.dim(); ++j) {
    const VectorField gv = grad(v[j], b);
    out[j] = dot(a, gv);
  }
  return out;
}

}  // namespace

VectorField entropy_current(const EntropyModel& m, const ScalarField& rho, const VectorField& v,
                            const SymTensorField& P_total, Backend b) {
  require_same_grid(rho.grid(), v.grid(), "entropy_current");
  require_same_grid(rho.grid(), P_total.grid(), "entropy_current");
  const ConstitutiveBundle cb = constitutive(m, rho, b);
  const ScalarField divv = div(v, b);
  VectorField j = divv * cb.d2s;
  j += advect_with(cb.d2s, v, b);
  j *= 0.5 * (rho * rho);
  return j - contract(v, P_total);
}

VectorField entropy_current_closed(const EntropyModel& m, const ScalarField& rho,
                                   const VectorField& v, const SymTensorField& P_total, Backend b) {
  require_same_grid(rho.grid(), v.grid(), "entropy_current_closed");
  require_above_floor(rho, "entropy_current_closed");
  // j = -v.P - coef(rho) (grad rho div v + grad rho . grad v)
  ScalarField coef(rho.grid());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double r = rho[i];
    switch (m.kind) {
      case ModelKind::SchrodingerMadelung: coef[i] = m.nu / 8.0; break;
      case ModelKind::Landau: coef[i] = m.nu * r * r / 2.0; break;
      case ModelKind::Alternative: coef[i] = m.nu * r / 4.0; break;
      case ModelKind::FisherShannon: coef[i] = -m.nu; break;
      case ModelKind::Euler: coef[i] = 0.0; break;
    }
  }
  const VectorField g = grad(rho, b);
  VectorField extra = div(v, b) * g;
  extra += advect_with(g, v, b);
  return (-1.0) * contract(v, P_total) - coef * extra;
}

PotentialResidual potentializability_residual(const EntropyModel& m, const ScalarField& rho, Backend b) {
  const ConstitutiveBundle cb = constitutive(m, rho, b);
  const VectorField lhs = div_tensor(cb.P_rev, b);
  const VectorField rhs = rho * grad(cb.U, b);
  VectorField r = lhs - rhs;
  const double mx = r.max_norm();
  const double scale = rhs.max_norm();
  const double rel = (mx < 1e-12 && scale < 1e-12) ? 0.0 : mx / scale;
  return {std::move(r), mx, scale, rel};
}

double separability_defect(const EntropyModel& m, const ScalarField& rho1, const ScalarField& rho2) {
  const Grid& g1 = rho1.grid();
  const Grid& g2 = rho2.grid();
  if (g1.dim() != 1 || g2.dim() != 1) throw ValidationError("separability_defect: inputs must be 1D");
  for (const ScalarField* r : {&rho1, &rho2})
    if (r->min() <= 0.0) throw ValidationError("separability_defect: densities must be positive");
  const ScalarField d1 = partial(rho1, 0);
  const ScalarField d2 = partial(rho2, 0);
  double defect = 0.0;
  for (int i = 0; i < g1.points(0); ++i)
    for (int j = 0; j < g2.points(0); ++j) {
      const double a = rho1[i], b = rho2[j];
      const double ga = d1[i], gb = d2[j];
      const double prod_g2 = (b * ga) * (b * ga) + (a * gb) * (a * gb);
      const double joint = m.s(a * b, prod_g2);
      defect = std::max(defect, std::abs(joint - m.s(a, ga * ga) - m.s(b, gb * gb)));
    }
  return defect;
}

double mass_scale_defect(const EntropyModel& m, const ScalarField& rho, double lambda, Backend b) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ValidationError("mass_scale_defect: lambda must be positive, got " + std::to_string(lambda));
  require_above_floor(rho, "mass_scale_defect");
  const ScalarField g2 = grad(rho, b).norm2();
  double defect = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i)
    defect = std::max(defect, std::abs(m.s(lambda * rho[i], lambda * lambda * g2[i]) - m.s(rho[i], g2[i])));
  return defect;
}

}  // namespace wnf
