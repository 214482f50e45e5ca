#include "wnf/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wnf/errors.hpp"
#include "wnf/simd/kernels.hpp"

namespace wnf {

SymTensorField ViscousClosure::pressure(const VectorField& v, Backend b) const {
  if (eta == 0.0) return SymTensorField(v.grid());
  return (-2.0 * eta) * sym_grad(v, b);
}

ScalarField ViscousClosure::production(const VectorField& v, Backend b) const {
  if (eta == 0.0) return ScalarField(v.grid());
  // grad v : P only sees the symmetric part of grad v.
  return -double_dot(sym_grad(v, b), pressure(v, b));
}

ExternalPotential ExternalPotential::none(const Grid& g) { return {ScalarField(g)}; }

ExternalPotential ExternalPotential::harmonic(const Grid& g, double omega) {
  ScalarField V(g);
  const double w2 = omega * omega;
  for (std::size_t q = 0; q < g.size(); ++q) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) r2 += g.coord_of(a, q) * g.coord_of(a, q);
    V[q] = 0.5 * w2 * r2;
  }
  return {std::move(V)};
}

bool ExternalPotential::is_zero() const { return V.max_abs() == 0.0; }

PressureBranch parse_branch(std::string_view n) {
  if (n == "divergence") return PressureBranch::divergence;
  if (n == "potential") return PressureBranch::potential;
  throw ValidationError("dynamics.branch: expected divergence or potential, got '" + std::string(n) + "'");
}

Scheme parse_scheme(std::string_view n) {
  if (n == "rk4") return Scheme::rk4;
  if (n == "rk2") return Scheme::rk2;
  throw ValidationError("dynamics.scheme: expected rk4 or rk2, got '" + std::string(n) + "'");
}

std::string_view to_string(PressureBranch b) { return b == PressureBranch::divergence ? "divergence" : "potential"; }
std::string_view to_string(Scheme s) { return s == Scheme::rk4 ? "rk4" : "rk2"; }

Rates rhs(const FluidState& s, const DynamicsConfig& cfg, const ExternalPotential& ext) {
  const Grid& g = s.grid();
  const Backend b = cfg.backend;
  require_same_grid(g, s.v.grid(), "rhs");
  require_above_floor(s.rho, "rhs");
  s.v.require_finite("rhs velocity");

  Rates r{-div(s.rho * s.v, b), VectorField(g)};

  // Scalar whose negative gradient enters the acceleration.
  ScalarField phi(g);
  if (g.dim() == 1) phi = 0.5 * (s.v[0] * s.v[0]);
  if (cfg.branch == PressureBranch::potential) phi += quantum_potential(cfg.model, s.rho, b);
  phi += ext.V;

  if (phi.max_abs() != 0.0) r.dv = -1.0 * grad(phi, b);
  if (g.dim() == 2) {
    for (int j = 0; j < 2; ++j) r.dv[j] -= dot(s.v, grad(s.v[j], b));
  }

  const bool viscous = cfg.closure.eta != 0.0;
  if (cfg.branch == PressureBranch::divergence || viscous) {
    const ScalarField inv_rho = map(s.rho, [](double x) { return 1.0 / x; });
    if (cfg.branch == PressureBranch::divergence)
      r.dv -= inv_rho * div_tensor(reversible_pressure(cfg.model, s.rho, b), b);
    if (viscous) r.dv -= inv_rho * div_tensor(cfg.closure.pressure(s.v, b), b);
  }
  return r;
}

double stability_bound(const FluidState& s, const DynamicsConfig& cfg) {
  const Grid& g = s.grid();
  double h = g.spacing(0);
  if (g.dim() == 2) h = std::min(h, g.spacing(1));
  const double rmin = s.rho.min(), rmax = s.rho.max();
  double kappa = std::max(1.0, std::sqrt(rmax / rmin) / 4.0);
  // The divergence branch is not the discrete gradient of anything and is
  // stiffer on strongly varying densities (measured on the free Gaussian).
  if (cfg.branch == PressureBranch::divergence) kappa *= std::max(1.0, 1.6 * std::pow(rmax / rmin, 0.25));
  double cs = 0.0;
  for (std::size_t i = 0; i < s.rho.size(); ++i)
    cs = std::max(cs, std::sqrt(std::max(0.0, cfg.model.sound_speed2(s.rho[i]))));
  const double denom = std::max({2.0 * cfg.model.dispersion(rmax) * kappa, h * (s.v.max_norm() + cs),
                                 2.0 * cfg.closure.eta / rmin});
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return cfg.stability_c * h * h / denom;
}

namespace {

FluidState advance(const FluidState& s, double a, const Rates& k) {
  FluidState out{add_scaled(s.rho, a, k.drho), s.v, s.t};
  for (int j = 0; j < s.v.dim(); ++j) out.v[j] = add_scaled(s.v[j], a, k.dv[j]);
  return out;
}

void accumulate(FluidState& acc, double a, const Rates& k) {
  simd::axpy(a, k.drho.values(), acc.rho.values());
  for (int j = 0; j < acc.v.dim(); ++j) simd::axpy(a, k.dv[j].values(), acc.v[j].values());
}

}  // namespace

FluidState step(const FluidState& s, const DynamicsConfig& cfg, const ExternalPotential& V, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dynamics.dt must be positive");
  if (!cfg.override_stability) {
    const double bound = stability_bound(s, cfg);
    if (dt > bound) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "dynamics.dt = " << dt << " exceeds the stability bound " << bound
          << " (set override_stability to force)";
      throw ValidationError(msg.str());
    }
  }
  FluidState out = s;
  if (cfg.scheme == Scheme::rk2) {
    const Rates k1 = rhs(s, cfg, V);
    const Rates k2 = rhs(advance(s, 0.5 * dt, k1), cfg, V);
    accumulate(out, dt, k2);
  } else {
    const Rates k1 = rhs(s, cfg, V);
    const Rates k2 = rhs(advance(s, 0.5 * dt, k1), cfg, V);
    const Rates k3 = rhs(advance(s, 0.5 * dt, k2), cfg, V);
    const Rates k4 = rhs(advance(s, dt, k3), cfg, V);
    accumulate(out, dt / 6.0, k1);
    accumulate(out, dt / 3.0, k2);
    accumulate(out, dt / 3.0, k3);
    accumulate(out, dt / 6.0, k4);
  }
  out.t = s.t + dt;
  out.rho.require_finite("step density");
  out.v.require_finite("step velocity");
  return out;
}

Production entropy_production(const FluidState& s, const DynamicsConfig& cfg) {
  ScalarField sigma = cfg.closure.production(s.v, cfg.backend);
  const double total = sigma.integral();
  return {std::move(sigma), total};
}

DiagnosticsRecord diagnostics(const FluidState& s, const DynamicsConfig& cfg, const ExternalPotential& V) {
  DiagnosticsRecord d;
  d.t = s.t;
  d.mass = s.rho.integral();
  for (int a = 0; a < s.v.dim(); ++a) d.momentum[a] = (s.rho * s.v[a]).integral();
  const ScalarField sd = entropy_density(cfg.model, s.rho, cfg.backend);
  const ScalarField v2 = s.v.norm2();
  ScalarField specific = sd - 0.5 * v2;
  d.entropy = (s.rho * specific).integral();
  d.invariant = (s.rho * (specific - V.V)).integral();
  d.production = entropy_production(s, cfg).total;
  d.min_rho = s.rho.min();
  d.max_speed = std::sqrt(v2.max());
  d.momentum_scale = (s.rho * map(v2, [](double x) { return std::sqrt(x); })).integral();
  return d;
}

Drifts drifts(const std::vector<DiagnosticsRecord>& rec) {
  Drifts d;
  if (rec.empty()) return d;
  const auto& r0 = rec.front();
  double pscale = std::hypot(r0.momentum[0], r0.momentum[1]);
  for (const auto& r : rec) pscale = std::max(pscale, r.momentum_scale);
  auto rel = [](double a, double b, double scale) {
    const double diff = std::abs(a - b);
    return scale > 0.0 ? diff / scale : diff;
  };
  d.min_production = r0.production;
  for (std::size_t k = 0; k < rec.size(); ++k) {
    const auto& r = rec[k];
    d.mass = std::max(d.mass, rel(r.mass, r0.mass, std::abs(r0.mass)));
    const double dp = std::hypot(r.momentum[0] - r0.momentum[0], r.momentum[1] - r0.momentum[1]);
    d.momentum = std::max(d.momentum, pscale > 0.0 ? dp / pscale : dp);
    d.invariant = std::max(d.invariant, rel(r.invariant, r0.invariant, std::abs(r0.invariant)));
    d.entropy = std::max(d.entropy, rel(r.entropy, r0.entropy, std::abs(r0.entropy)));
    d.min_production = std::min(d.min_production, r.production);
    if (k > 0) {
      const double drop = rec[k - 1].entropy - r.entropy;
      d.max_entropy_decrease = std::max(d.max_entropy_decrease, drop);
      if (drop > 1e-10 * std::max(1.0, std::abs(rec[k - 1].entropy))) d.entropy_monotone = false;
    }
  }
  return d;
}

long step_count(double t_end, double dt) {
  if (!(dt > 0.0)) throw ValidationError("dynamics.dt must be positive");
  if (!(t_end >= 0.0)) throw ValidationError("dynamics.t_end must be non-negative");
  const double n = t_end / dt;
  const long steps = std::lround(n);
  if (std::abs(n - steps) > 1e-9 * std::max(1.0, n))
    throw ValidationError("dynamics.t_end must be a whole number of dt steps");
  return steps;
}

SimulationResult simulate(const FluidState& initial, const DynamicsConfig& cfg, const ExternalPotential& V,
                          const SimulationSettings& run, const SampleObserver& observer) {
  if (run.sample_stride < 1) throw ValidationError("output.sample_stride must be >= 1");
  const long n = step_count(run.t_end, run.dt);
  SimulationResult res{{}, {}, initial, 0, false, {}};
  res.records.push_back(diagnostics(initial, cfg, V));
  if (run.dump_stride > 0) res.dumps.push_back(initial);
  if (observer) observer(initial, 0);

  // The bound is enforced on the initial state; later states drift (rho_min,
  // max|v|) and the run is judged by its diagnostics instead.
  if (n > 0 && !cfg.override_stability) {
    const double bound = stability_bound(initial, cfg);
    if (run.dt > bound) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "dynamics.dt = " << run.dt << " exceeds the stability bound " << bound
          << " (use --override-stability to force)";
      throw ValidationError(msg.str());
    }
  }
  DynamicsConfig stepping = cfg;
  stepping.override_stability = true;

  FluidState s = initial;
  try {
    for (long k = 1; k <= n; ++k) {
      s = step(s, stepping, V, run.dt);
      s.t = k * run.dt;
      res.steps = k;
      res.final_state = s;
      const bool sample = k % run.sample_stride == 0 || k == n;
      if (sample) {
        res.records.push_back(diagnostics(s, cfg, V));
        if (observer) observer(s, k);
      }
      if (run.dump_stride > 0 && (k % run.dump_stride == 0 || k == n)) res.dumps.push_back(s);
    }
  } catch (const NumericalError& e) {
    res.failed = true;
    std::ostringstream msg;
    msg << "step " << res.steps + 1 << " (t = " << s.t << "): " << e.what();
    res.failure = msg.str();
  }
  return res;
}

}  // namespace wnf
