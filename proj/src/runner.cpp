#include "wnf/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <json.hpp>
#include <sstream>

#include "wnf/csv.hpp"
#include "wnf/errors.hpp"
#include "wnf/quantum.hpp"
#include "wnf/random_density.hpp"
#include "wnf/simd/kernels.hpp"

namespace wnf {

using json = nlohmann::ordered_json;

Command parse_command(std::string_view n) {
  if (n == "simulate") return Command::simulate;
  if (n == "compare") return Command::compare;
  if (n == "stationary") return Command::stationary;
  if (n == "verify") return Command::verify;
  if (n == "list-models") return Command::list_models;
  throw ValidationError("unknown command '" + std::string(n) + "'");
}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::simulate: return "simulate";
    case Command::compare: return "compare";
    case Command::stationary: return "stationary";
    case Command::verify: return "verify";
    case Command::list_models: return "list-models";
  }
  return "?";
}

std::filesystem::path default_output_root() {
  if (const char* env = std::getenv("WNF_OUTPUT_ROOT"); env && *env) return env;
  return "wnf-out";
}

void list_models(std::ostream& out) {
  out << "name            coefficients         s(rho, grad rho)\n"
      << "schm            nu>=0, s0            -(nu/8)|grad rho|^2/rho^2 + s0\n"
      << "landau          nu>=0, s0            -(nu/2)|grad rho|^2 + s0\n"
      << "alternative     nu>=0, s0            -(nu/4)|grad rho|^2/rho + s0\n"
      << "fisher-shannon  nu, k, s0, local     nu|grad rho|^2/rho^2 + k ln rho + s0 + s~(rho)\n"
      << "euler           s0, local            s~(rho) + s0\n"
      << "\nlocal parts s~: none | inverse (a/rho) | log (a ln rho) | power (a rho^p)\n"
      << "fisher-shannon(nu) = schm(-8 nu) plus its local part\n";
}

namespace {

json real(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << j.dump(2) << '\n';
}

json header(Command c, const Scenario& s) {
  json j;
  j["command"] = std::string(to_string(c));
  j["scenario"] = s.name;
  j["model"] = std::string(to_string(s.model.kind));
  j["backend"] = std::string(to_string(s.backend));
  j["simd"] = std::string(simd::kernels().name);
  return j;
}

void write_diagnostics(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& rec) {
  csv::Writer w(path, {"t", "mass", "momentum_x", "momentum_y", "entropy", "invariant", "production",
                       "min_rho", "max_speed"});
  for (const auto& r : rec)
    w.row({r.t, r.mass, r.momentum[0], r.momentum[1], r.entropy, r.invariant, r.production, r.min_rho,
           r.max_speed});
}

void write_fields(const std::filesystem::path& path, const FluidState& f) {
  const Grid& g = f.grid();
  if (g.dim() == 1) {
    csv::Writer w(path, {"x", "rho", "v_x"});
    for (std::size_t i = 0; i < g.size(); ++i) w.row({g.coord_of(0, i), f.rho[i], f.v[0][i]});
  } else {
    csv::Writer w(path, {"x", "y", "rho", "v_x", "v_y"});
    for (std::size_t i = 0; i < g.size(); ++i)
      w.row({g.coord_of(0, i), g.coord_of(1, i), f.rho[i], f.v[0][i], f.v[1][i]});
  }
}

std::string dump_name(std::size_t k) {
  std::ostringstream name;
  name << "fields_t" << std::setw(4) << std::setfill('0') << k << ".csv";
  return name.str();
}

json drift_json(const Drifts& d) {
  json j;
  j["mass"] = real(d.mass);
  j["momentum"] = real(d.momentum);
  j["invariant"] = real(d.invariant);
  j["entropy"] = real(d.entropy);
  j["min_production"] = real(d.min_production);
  j["max_entropy_decrease"] = real(d.max_entropy_decrease);
  j["entropy_monotone"] = d.entropy_monotone;
  return j;
}

int finish_simulation(const SimulationResult& res, const std::filesystem::path& dir, json& summary) {
  write_diagnostics(dir / "diagnostics.csv", res.records);
  json dumps = json::array();
  for (std::size_t k = 0; k < res.dumps.size(); ++k) {
    write_fields(dir / dump_name(k), res.dumps[k]);
    dumps.push_back({{"file", dump_name(k)}, {"t", res.dumps[k].t}});
  }
  if (res.failed) write_fields(dir / "fields_failure.csv", res.final_state);
  summary["status"] = res.failed ? "failed" : "ok";
  if (res.failed) summary["failure"] = res.failure;
  summary["steps"] = res.steps;
  summary["t_final"] = res.records.empty() ? 0.0 : res.records.back().t;
  summary["drift"] = drift_json(drifts(res.records));
  summary["dumps"] = dumps;
  return res.failed ? kExitNumerical : kExitOk;
}

int do_simulate(const Scenario& s, const std::filesystem::path& dir, json& summary) {
  const FluidState init = make_initial(s);
  const DynamicsConfig cfg = make_dynamics(s);
  const ExternalPotential V = make_potential(s);
  const SimulationSettings run = make_settings(s);
  summary["dt"] = s.dt;
  summary["stability_bound"] = real(stability_bound(init, cfg));
  const SimulationResult res = simulate(init, cfg, V, run);
  return finish_simulation(res, dir, summary);
}

int do_compare(const Scenario& s, const std::filesystem::path& dir, json& summary) {
  const FluidState init = make_initial(s);
  const DynamicsConfig cfg = make_dynamics(s);
  const ExternalPotential V = make_potential(s);
  const SimulationSettings run = make_settings(s);
  const Grid g = make_grid(s);

  DensityOracle exact;
  if (s.initial.type == "gaussian" && s.potential.type == "none") {
    const auto in = s.initial;
    const double hbar = s.hbar;
    exact = [g, in, hbar](double t) {
      WaveState w{g, free_gaussian(g, in.sigma0, in.center, in.mass, in.pedestal, hbar, t), hbar, t};
      return w.density();
    };
  }
  const bool coherent = s.initial.type == "gaussian" && s.potential.type == "harmonic";

  summary["dt"] = s.dt;
  summary["hbar"] = s.hbar;
  summary["stability_bound"] = real(stability_bound(init, cfg));
  const Comparison cmp = compare_evolutions(init, cfg, V, run, s.hbar, exact);

  csv::Writer w(dir / "compare.csv", {"t", "rho_error", "velocity_error", "fluid_exact_error", "wave_exact_error",
                                      "fluid_mass", "wave_norm", "fluid_energy", "wave_energy", "center_fluid",
                                      "center_wave", "center_exact"});
  double center_dev = 0.0;
  for (const auto& r : cmp.rows) {
    const double ce = coherent ? s.initial.center * std::cos(s.potential.omega * r.t)
                               : std::numeric_limits<double>::quiet_NaN();
    if (coherent) center_dev = std::max(center_dev, std::abs(r.center_fluid - ce));
    w.row({r.t, r.rho_error, r.velocity_error, r.fluid_exact_error, r.wave_exact_error, r.fluid_mass, r.wave_norm,
           r.fluid_energy, r.wave_energy, r.center_fluid, r.center_wave, ce});
  }
  w.flush();
  const int code = finish_simulation(cmp.fluid, dir, summary);
  if (!cmp.rows.empty()) {
    const auto& last = cmp.rows.back();
    summary["final_rho_error"] = real(last.rho_error);
    summary["final_velocity_error"] = real(last.velocity_error);
    summary["final_fluid_exact_error"] = real(last.fluid_exact_error);
    summary["final_wave_exact_error"] = real(last.wave_exact_error);
    const auto& first = cmp.rows.front();
    summary["wave_energy_drift"] = real(std::abs(last.wave_energy - first.wave_energy) / std::abs(first.wave_energy));
  }
  if (coherent) summary["max_center_deviation"] = real(center_dev);
  summary["max_tail_fraction"] = real(cmp.max_tail_fraction);
  summary["warnings"] = cmp.warnings;
  return code;
}

void write_density(const std::filesystem::path& path, const ScalarField& rho) {
  const Grid& g = rho.grid();
  if (g.dim() == 1) {
    csv::Writer w(path, {"x", "rho"});
    for (std::size_t i = 0; i < g.size(); ++i) w.row({g.coord_of(0, i), rho[i]});
  } else {
    csv::Writer w(path, {"x", "y", "rho"});
    for (std::size_t i = 0; i < g.size(); ++i) w.row({g.coord_of(0, i), g.coord_of(1, i), rho[i]});
  }
}

int do_stationary(const Scenario& s, const std::filesystem::path& dir, json& summary) {
  const StationaryProblem p = make_stationary(s);
  const int count = s.stationary.levels;
  if (count > 1 && s.model.kind != ModelKind::SchrodingerMadelung)
    throw ValidationError("stationary.levels > 1 needs model schm (excited states are linear-wave only)");

  const StationaryResult ground = ground_state(p);
  std::vector<Level> levels{{ground.rho, ground.mu, ground.residual, ground.iterations, ground.converged}};
  std::vector<std::string> warnings = ground.warnings;
  json consistency = nullptr;
  if (count > 1) {
    const auto ex = excited_states_schm(p, count, &warnings);
    double diff = 0.0;
    for (std::size_t i = 0; i < ground.rho.size(); ++i) diff = std::max(diff, std::abs(ex[0].rho[i] - ground.rho[i]));
    consistency = diff;
    for (int n = 1; n < count; ++n) levels.push_back(ex[n]);
  }

  csv::Writer w(dir / "levels.csv", {"level", "mu", "residual", "iterations", "converged"});
  bool all_converged = true;
  json lv = json::array();
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const auto& L = levels[n];
    w.row({static_cast<long long>(n), L.mu, L.residual, static_cast<long long>(L.iterations),
           static_cast<long long>(L.converged ? 1 : 0)});
    std::ostringstream name;
    name << "density_level" << n << ".csv";
    write_density(dir / name.str(), L.rho);
    all_converged = all_converged && L.converged;
    lv.push_back({{"level", n}, {"mu", L.mu}, {"residual", L.residual}, {"iterations", L.iterations},
                  {"converged", L.converged}, {"mass", L.rho.integral()}});
  }
  summary["levels"] = lv;
  summary["ground_vs_level0_linf"] = consistency;
  summary["warnings"] = warnings;
  summary["status"] = all_converged ? "ok" : "not-converged";
  return all_converged ? kExitOk : kExitNumerical;
}

double rel_max(const ScalarField& a, const ScalarField& ref) { return (a - ref).max_abs() / ref.max_abs(); }

double rel_max(const SymTensorField& a, const SymTensorField& ref) {
  const double scale = ref.max_abs();
  const double diff = (a - ref).max_abs();
  return scale > 0.0 ? diff / scale : diff;
}

int do_verify(const Scenario& s, const std::filesystem::path& dir, json& summary) {
  const auto& v = s.verify;
  csv::Writer w(dir / "verify.csv", {"dim", "seed", "residual", "residual_fd4", "pressure_closed_error",
                                     "potential_closed_error", "pass"});
  double worst_res = 0.0, worst_p = 0.0, worst_u = 0.0;
  long failures = 0;
  auto check = [&](const Grid& g, int dim, std::uint64_t seed) {
    const ScalarField rho = random_log_smooth_density(g, seed);
    const auto res = potentializability_residual(s.model, rho, s.backend);
    const auto res4 = potentializability_residual(s.model, rho, Backend::fd4);
    const double ep = rel_max(reversible_pressure(s.model, rho, s.backend),
                              reversible_pressure_closed(s.model, rho, s.backend));
    const double eu = rel_max(quantum_potential(s.model, rho, s.backend),
                              quantum_potential_closed(s.model, rho, s.backend));
    const bool pass = res.relative <= v.tol && ep <= v.closed_tol && eu <= v.closed_tol;
    if (!pass) ++failures;
    worst_res = std::max(worst_res, res.relative);
    worst_p = std::max(worst_p, ep);
    worst_u = std::max(worst_u, eu);
    w.row({static_cast<long long>(dim), static_cast<long long>(seed), res.relative, res4.relative, ep, eu,
           static_cast<long long>(pass ? 1 : 0)});
  };
  const Grid g1 = Grid::line(s.L[0], v.n1d);
  for (int k = 0; k < v.seeds; ++k) check(g1, 1, v.seed_base + k);
  if (v.n2d > 0) {
    const Grid g2 = Grid::plane(s.L[0], s.L[0], v.n2d, v.n2d);
    for (int k = 0; k < v.seeds; ++k) check(g2, 2, v.seed_base + k);
  }
  w.flush();
  summary["cases"] = v.seeds * (v.n2d > 0 ? 2 : 1);
  summary["failures"] = failures;
  summary["max_residual"] = worst_res;
  summary["max_pressure_closed_error"] = worst_p;
  summary["max_potential_closed_error"] = worst_u;
  summary["tol"] = v.tol;
  summary["closed_tol"] = v.closed_tol;
  summary["status"] = failures == 0 ? "ok" : "failed";
  return failures == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

RunOutcome run(Command c, const Scenario& scenario, const RunOptions& opt) {
  RunOutcome out;
  Scenario s = scenario;
  if (opt.backend) s.backend = *opt.backend;
  if (opt.override_stability) s.override_stability = true;
  out.out_dir = opt.out_root / s.name;
  json summary = header(c, s);
  try {
    std::filesystem::create_directories(out.out_dir);
    switch (c) {
      case Command::simulate: out.exit_code = do_simulate(s, out.out_dir, summary); break;
      case Command::compare: out.exit_code = do_compare(s, out.out_dir, summary); break;
      case Command::stationary: out.exit_code = do_stationary(s, out.out_dir, summary); break;
      case Command::verify: out.exit_code = do_verify(s, out.out_dir, summary); break;
      case Command::list_models: {
        std::ostringstream text;
        list_models(text);
        out.message = text.str();
        return out;
      }
    }
    if (summary.contains("failure")) out.message = summary["failure"].get<std::string>();
  } catch (const ValidationError& e) {
    out.exit_code = kExitValidation;
    out.message = e.what();
    summary["status"] = "invalid";
    summary["failure"] = out.message;
  } catch (const NumericalError& e) {
    out.exit_code = kExitNumerical;
    out.message = e.what();
    summary["status"] = "failed";
    summary["failure"] = out.message;
  } catch (const std::filesystem::filesystem_error& e) {
    out.exit_code = kExitNumerical;
    out.message = e.what();
    return out;
  }
  summary["exit_code"] = out.exit_code;
  try {
    if (std::filesystem::exists(out.out_dir)) write_json(out.out_dir / "summary.json", summary);
  } catch (const std::exception&) {
  }
  return out;
}

}  // namespace wnf
