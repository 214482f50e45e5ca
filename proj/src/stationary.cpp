#include "wnf/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "wnf/errors.hpp"
#include "wnf/simd/kernels.hpp"

namespace wnf {

namespace {

ScalarField pinned(const ScalarField& V) {
  ScalarField out = V;
  out += -V.min();
  return out;
}

double default_dtau(const StationaryProblem& p) {
  const Grid& g = p.V.grid();
  double h = g.spacing(0);
  if (g.dim() == 2) h = std::min(h, g.spacing(1));
  const double scale = p.model.nu > 0.0 ? std::sqrt(p.model.nu) : 1.0;
  return 0.1 * h * h / scale;
}

void validate(const StationaryProblem& p) {
  p.model.validate();
  if (!(p.mass > 0.0)) throw ValidationError("stationary.mass must be positive");
  if (!(p.tol_r > 0.0)) throw ValidationError("stationary.tol_r must be positive");
  if (p.dtau < 0.0) throw ValidationError("stationary.dtau must be non-negative");
  if (p.max_iterations < 1) throw ValidationError("stationary.max_iterations must be >= 1");
  p.V.require_finite("stationary potential");
}

double weighted_sum(const ScalarField& a, const ScalarField& b) { return simd::dot(a.values(), b.values()); }

void normalize(ScalarField& R, double mass) {
  const double m = weighted_sum(R, R) * R.grid().cell_volume();
  R *= std::sqrt(mass / m);
}

// -rho s as a function of R, written without dividing by rho.
double energy(const EntropyModel& m, const ScalarField& R, const ScalarField& V, Backend b) {
  const ScalarField rho = R * R;
  ScalarField e(R.grid());
  switch (m.kind) {
    case ModelKind::SchrodingerMadelung: e = (m.nu / 2.0) * grad(R, b).norm2(); break;
    case ModelKind::Landau: e = (m.nu / 2.0) * (rho * grad(rho, b).norm2()); break;
    case ModelKind::Alternative: e = (m.nu / 4.0) * grad(rho, b).norm2(); break;
    default: e = -(rho * entropy_density(m, rho, b)); break;
  }
  if (m.kind == ModelKind::SchrodingerMadelung || m.kind == ModelKind::Landau ||
      m.kind == ModelKind::Alternative)
    e += -m.s0 * rho;
  return (e + V * rho).integral();
}

struct FlowEval {
  ScalarField HR;  // R U + V R
  double mu;
  double residual;
};

FlowEval evaluate(const EntropyModel& m, const ScalarField& R, const ScalarField& V, Backend b) {
  ScalarField HR = amplitude_potential(m, R, b) + V * R;
  const double mu = weighted_sum(R, HR) / weighted_sum(R, R);
  double worst = 0.0;
  for (std::size_t i = 0; i < R.size(); ++i) worst = std::max(worst, std::abs(HR[i] - mu * R[i]));
  return {std::move(HR), mu, worst / R.max_abs()};
}

void require_alive(const ScalarField& R) {
  R.require_finite("stationary iterate");
  if (!(R.max_abs() > 1e-150)) throw NumericalError("stationary flow collapsed (amplitude vanished)");
}

}  // namespace

double stationarity_residual(const EntropyModel& m, const ScalarField& rho, const ScalarField& V, Backend b) {
  require_same_grid(rho.grid(), V.grid(), "stationarity_residual");
  if (rho.min() < 0.0) throw DomainError("stationarity_residual: negative density", 0, rho.min());
  const ScalarField R = map(rho, [](double x) { return std::sqrt(x); });
  return evaluate(m, R, pinned(V), b).residual;
}

StationaryResult ground_state(const StationaryProblem& p) {
  validate(p);
  const Grid& g = p.V.grid();
  const Backend b = p.backend;
  const ScalarField V = pinned(p.V);

  ScalarField R(g);
  if (p.initial) {
    require_same_grid(g, p.initial->grid(), "stationary initial guess");
    if (p.initial->min() <= 0.0) throw ValidationError("stationary initial guess must be positive");
    R = map(*p.initial, [](double x) { return std::sqrt(x); });
  } else {
    R = map(V, [](double v) { return std::sqrt(std::exp(-v)); });
  }
  normalize(R, p.mass);

  double dtau = p.dtau > 0.0 ? p.dtau : default_dtau(p);
  const double dtau_min = dtau * 1e-12;
  double E = energy(p.model, R, V, b);
  FlowEval ev = evaluate(p.model, R, V, b);
  StationaryResult res{R * R, ev.mu, ev.residual, 0, false, {}};
  long it = 0;
  while (ev.residual > p.tol_r && it < p.max_iterations) {
    ScalarField next = R;
    for (std::size_t i = 0; i < R.size(); ++i) next[i] -= dtau * (ev.HR[i] - ev.mu * R[i]);
    require_alive(next);
    normalize(next, p.mass);
    const double E_next = energy(p.model, next, V, b);
    if (E_next > E + 1e-12 * std::abs(E)) {
      dtau *= 0.5;
      if (dtau < dtau_min) {
        res.warnings.push_back("flow step underflowed while backtracking");
        break;
      }
      continue;
    }
    R = std::move(next);
    E = E_next;
    ev = evaluate(p.model, R, V, b);
    ++it;
  }
  res.rho = R * R;
  res.mu = ev.mu;
  res.residual = ev.residual;
  res.iterations = it;
  res.converged = ev.residual <= p.tol_r;
  return res;
}

std::vector<Level> excited_states_schm(const StationaryProblem& p, int count, std::vector<std::string>* warnings) {
  validate(p);
  if (p.model.kind != ModelKind::SchrodingerMadelung)
    throw ValidationError("excited states need model schm");
  if (count < 1) throw ValidationError("stationary.levels must be >= 1");
  if (p.V.grid().dim() != 1) throw ValidationError("excited states are 1D only");
  const Grid& g = p.V.grid();
  const Backend b = p.backend;
  const ScalarField V = pinned(p.V);
  const double dtau = p.dtau > 0.0 ? p.dtau : default_dtau(p);
  const double ell = g.extent(0) / 4.0;

  auto apply_H = [&](const ScalarField& psi) {
    return (-p.model.nu / 2.0) * laplacian(psi, b) + (V - p.model.s0 * ScalarField(g, 1.0)) * psi;
  };

  auto residual_of = [&](const ScalarField& psi, const ScalarField& Hpsi, double mu) {
    double worst = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) worst = std::max(worst, std::abs(Hpsi[i] - mu * psi[i]));
    return worst / psi.max_abs();
  };

  std::vector<ScalarField> found;
  std::vector<long> iterations;
  for (int n = 0; n < count; ++n) {
    // e^{-V/2} (1 + x/ell)^{n+1} overlaps every level up to n+1.
    ScalarField psi = ScalarField::sample(g, [&](double x) { return std::pow(1.0 + x / ell, n + 1); });
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= std::exp(-0.5 * V[i]);

    auto project_out = [&](ScalarField& f) {
      for (const auto& lower : found) {
        const double c = weighted_sum(lower, f) / weighted_sum(lower, lower);
        simd::axpy(-c, lower.values(), f.values());
      }
    };
    project_out(psi);
    normalize(psi, p.mass);

    // Converged when the residual is zero inside the complement of the lower
    // levels; their own small errors are removed by the Ritz step below.
    long it = 0;
    for (;; ++it) {
      const ScalarField Hpsi = apply_H(psi);
      const double mu = weighted_sum(psi, Hpsi) / weighted_sum(psi, psi);
      ScalarField r = Hpsi - mu * psi;
      project_out(r);
      if (r.max_abs() / psi.max_abs() <= p.tol_r || it >= p.max_iterations) break;
      simd::axpy(-dtau, r.values(), psi.values());
      require_alive(psi);
      project_out(psi);
      normalize(psi, p.mass);
    }
    found.push_back(std::move(psi));
    iterations.push_back(it);
  }

  // Rayleigh-Ritz in the span of the flowed vectors.
  const int m = count;
  std::vector<ScalarField> Hf;
  for (const auto& f : found) Hf.push_back(apply_H(f));
  Eigen::MatrixXd H(m, m), S(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      H(i, j) = 0.5 * (weighted_sum(found[i], Hf[j]) + weighted_sum(found[j], Hf[i]));
      S(i, j) = weighted_sum(found[i], found[j]);
    }
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ritz(H, S);
  if (ritz.info() != Eigen::Success) throw NumericalError("excited states: Ritz step failed");

  std::vector<Level> levels;
  for (int k = 0; k < m; ++k) {
    ScalarField psi(g);
    for (int i = 0; i < m; ++i) simd::axpy(ritz.eigenvectors()(i, k), found[i].values(), psi.values());
    normalize(psi, p.mass);
    const ScalarField Hpsi = apply_H(psi);
    const double mu = weighted_sum(psi, Hpsi) / weighted_sum(psi, psi);
    const double residual = residual_of(psi, Hpsi, mu);
    levels.push_back({psi * psi, mu, residual, iterations[k], residual <= p.tol_r});
  }
  for (int n = 1; n < count; ++n) {
    const double gap = levels[n].mu - levels[n - 1].mu;
    if (gap < 10.0 * p.tol_r && warnings) {
      std::ostringstream msg;
      msg << "levels " << n - 1 << " and " << n << " are nearly degenerate (gap " << gap << ")";
      warnings->push_back(msg.str());
    }
  }
  return levels;
}

}  // namespace wnf
