// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance               run all criteria
//   acceptance --criterion N run criterion N only
// Exit status is 0 only when every selected criterion passes.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wnf/dynamics.hpp"
#include "wnf/errors.hpp"
#include "wnf/quantum.hpp"
#include "wnf/random_density.hpp"
#include "wnf/scenario.hpp"
#include "wnf/stationary.hpp"

using namespace wnf;

namespace {

constexpr double pi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[fail] ";
    }
    detail << what << "; ";
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double rel_max(const ScalarField& a, const ScalarField& ref) { return (a - ref).max_abs() / ref.max_abs(); }

double rel_max(const SymTensorField& a, const SymTensorField& ref) { return (a - ref).max_abs() / ref.max_abs(); }

// The seeded field set shared by criteria 1 and 2.
std::vector<ScalarField> field_set() {
  std::vector<ScalarField> out;
  const Grid g1 = Grid::line(2 * pi, 256), g2 = Grid::plane(2 * pi, 2 * pi, 64, 64);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) out.push_back(random_log_smooth_density(g1, seed));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) out.push_back(random_log_smooth_density(g2, seed));
  return out;
}

void potentializability(Verdict& v) {
  const auto fields = field_set();
  const std::pair<const char*, EntropyModel> models[] = {{"schm", EntropyModel::schm(1.0)},
                                                         {"landau", EntropyModel::landau(1.0)},
                                                         {"alternative", EntropyModel::alternative(1.0)},
                                                         {"fisher-shannon", EntropyModel::fisher_shannon(1.0, 0.0)}};
  for (const auto& [name, m] : models) {
    double worst = 0.0;
    for (const auto& rho : fields) worst = std::max(worst, potentializability_residual(m, rho).relative);
    v.require(worst <= 1e-6, std::string(name) + " max residual " + sci(worst));
  }
}

void closed_forms(Verdict& v) {
  const auto fields = field_set();
  const std::pair<const char*, EntropyModel> models[] = {
      {"schm", EntropyModel::schm(1.0)}, {"landau", EntropyModel::landau(1.0)}, {"alternative", EntropyModel::alternative(1.0)}};
  for (const auto& [name, m] : models) {
    double ep = 0.0, eu = 0.0;
    for (const auto& rho : fields) {
      ep = std::max(ep, rel_max(reversible_pressure(m, rho), reversible_pressure_closed(m, rho)));
      eu = std::max(eu, rel_max(quantum_potential(m, rho), quantum_potential_closed(m, rho)));
    }
    v.require(ep <= 1e-8 && eu <= 1e-8, std::string(name) + " P " + sci(ep) + ", U " + sci(eu));
  }
}

struct ScenarioRun {
  Scenario s;
  FluidState initial;
  DynamicsConfig cfg;
  ExternalPotential V;
  SimulationSettings settings;
};

ScenarioRun prepare(const std::string& name) {
  const Scenario s = bundled_scenario(name);
  return {s, make_initial(s), make_dynamics(s), make_potential(s), make_settings(s)};
}

// Closed-form free packet on its constant background.
DensityOracle free_packet(const Scenario& s) {
  const Grid g = make_grid(s);
  const InitialSpec in = s.initial;
  const double hbar = s.hbar;
  return [g, in, hbar](double t) {
    const auto psi = free_gaussian(g, in.sigma0, in.center, in.mass, in.pedestal, hbar, t);
    ScalarField rho(g);
    for (std::size_t i = 0; i < psi.size(); ++i) rho[i] = std::norm(psi[i]);
    return rho;
  };
}

void madelung_schrodinger(Verdict& v) {
  const ScenarioRun r = prepare("free-gaussian");
  const Comparison c = compare_evolutions(r.initial, r.cfg, r.V, r.settings, r.s.hbar, free_packet(r.s));
  v.require(!c.fluid.failed, "fluid run " + std::string(c.fluid.failed ? c.fluid.failure : "completed"));
  double fw = 0.0, fe = 0.0, we = 0.0;
  for (const auto& row : c.rows) {
    fw = std::max(fw, row.rho_error);
    fe = std::max(fe, row.fluid_exact_error);
    we = std::max(we, row.wave_exact_error);
  }
  v.require(!c.rows.empty() && std::abs(c.rows.back().t - 1.0) < 1e-12, "reached t = 1");
  v.require(fw <= 1e-3, "fluid vs split-step " + sci(fw));
  v.require(fe <= 1e-3, "fluid vs closed form " + sci(fe));
  v.require(we <= 1e-3, "split-step vs closed form " + sci(we));
}

// Runs a bundled scenario; a run that cannot start or stops early is reported.
std::optional<SimulationResult> run_named(Verdict& v, const std::string& name) {
  try {
    const ScenarioRun r = prepare(name);
    SimulationResult res = simulate(r.initial, r.cfg, r.V, r.settings);
    if (res.failed) {
      v.require(false, name + " stopped: " + res.failure);
      return std::nullopt;
    }
    return res;
  } catch (const std::exception& e) {
    v.require(false, name + " could not run: " + e.what());
    return std::nullopt;
  }
}

void entropy_balance(Verdict& v) {
  for (const char* name : {"free-gaussian", "harmonic-coherent"}) {
    if (auto res = run_named(v, name)) {
      const double dq = drifts(res->records).invariant;
      v.require(dq <= 1e-6, std::string(name) + " |dQ|/|Q| " + sci(dq));
    }
  }
  if (auto res = run_named(v, "free-gaussian-viscous")) {
    const Drifts d = drifts(res->records);
    v.require(d.min_production >= 0.0, "viscous min production " + sci(d.min_production));
    v.require(d.entropy_monotone, "viscous S_tot non-decreasing (largest drop " + sci(d.max_entropy_decrease) + ")");
  }
}

void conservation(Verdict& v) {
  for (const char* name : {"free-gaussian", "free-gaussian-viscous", "harmonic-coherent"}) {
    auto res = run_named(v, name);
    if (!res) continue;
    const Drifts d = drifts(res->records);
    v.require(d.mass <= 1e-10, std::string(name) + " mass " + sci(d.mass));
    if (bundled_scenario(name).potential.type == "none")
      v.require(d.momentum <= 1e-8, std::string(name) + " momentum " + sci(d.momentum));
  }
}

void spectrum(Verdict& v) {
  const StationaryProblem p1 = make_stationary(bundled_scenario("harmonic-ground"));
  const auto levels = excited_states_schm(p1, 3);
  const double expect[] = {0.5, 1.5, 2.5};
  for (int n = 0; n < 3; ++n)
    v.require(std::abs(levels[n].mu - expect[n]) <= 1e-6 && levels[n].converged,
              "nu = 1 mu_" + std::to_string(n) + " error " + sci(levels[n].mu - expect[n]));
  const auto g1 = ground_state(p1);
  v.require(std::abs(g1.mu - 0.5) <= 1e-6 && g1.converged, "nu = 1 ground flow mu_0 error " + sci(g1.mu - 0.5));
  const auto g4 = ground_state(make_stationary(bundled_scenario("harmonic-ground-nu4")));
  v.require(std::abs(g4.mu - 1.0) <= 1e-6 && g4.converged, "nu = 4 mu_0 error " + sci(g4.mu - 1.0));
}

ScalarField sine_density(const Grid& g, double a) {
  return ScalarField::sample(g, [a](double x) { return 1.0 + a * std::sin(x); });
}

void uniqueness_chain(Verdict& v) {
  const Grid g1 = Grid::line(2 * pi, 64), g2 = Grid::line(3.0, 32);
  double schm = 0.0, fs = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r1 = random_log_smooth_density(g1, seed), r2 = random_log_smooth_density(g2, seed + 100);
    schm = std::max(schm, separability_defect(EntropyModel::schm(1.0), r1, r2));
    fs = std::max(fs, separability_defect(EntropyModel::fisher_shannon(1.0, 1.0), r1, r2));
  }
  v.require(schm <= 1e-12, "schm additivity " + sci(schm));
  v.require(fs <= 1e-12, "fisher-shannon additivity " + sci(fs));

  const auto pair = sine_density(g1, 0.5);
  const double dl = separability_defect(EntropyModel::landau(1.0), pair, pair);
  const double da = separability_defect(EntropyModel::alternative(1.0), pair, pair);
  v.require(dl >= 1e-3, "landau pair defect " + sci(dl));
  v.require(da >= 1e-3, "alternative pair defect " + sci(da));

  const auto rho = random_log_smooth_density(Grid::line(2 * pi, 128), 13);
  for (double lambda : {0.1, 7.3}) {
    const double ds = mass_scale_defect(EntropyModel::schm(1.0), rho, lambda);
    v.require(ds <= 1e-12, "schm mass-scale(" + sci(lambda) + ") " + sci(ds));
    const double df = mass_scale_defect(EntropyModel::fisher_shannon(1.0, 1.0), rho, lambda);
    const double off = std::abs(df - std::abs(std::log(lambda)));
    v.require(off <= 1e-10, "fisher-shannon mass-scale(" + sci(lambda) + ") - |ln lambda| = " + sci(off));
  }
}

// Least-squares slope of log e against log h.
double slope(const std::vector<double>& h, const std::vector<double>& e) {
  const double n = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(e[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

FluidState integrate(FluidState s, const DynamicsConfig& cfg, const ExternalPotential& V, double dt, double t_end) {
  const long n = step_count(t_end, dt);
  for (long k = 0; k < n; ++k) s = step(s, cfg, V, dt);
  return s;
}

void orders(Verdict& v) {
  // fd: f = exp(sin x), first derivative
  for (auto [b, target, tol] : {std::tuple{Backend::fd2, 2.0, 0.1}, std::tuple{Backend::fd4, 4.0, 0.2}}) {
    std::vector<double> h, e;
    for (int N : {32, 64, 128, 256}) {
      const Grid g = Grid::line(2 * pi, N);
      const auto f = ScalarField::sample(g, [](double x) { return std::exp(std::sin(x)); });
      const auto df = ScalarField::sample(g, [](double x) { return std::cos(x) * std::exp(std::sin(x)); });
      h.push_back(g.spacing(0));
      e.push_back((partial(f, 0, b) - df).max_abs());
    }
    const double p = slope(h, e);
    v.require(std::abs(p - target) <= tol, std::string(to_string(b)) + " order " + sci(p));
  }

  // rk4 self-convergence on a smooth periodic SchM state
  {
    const Grid g = Grid::line(2 * pi, 32);
    VectorField vel(g);
    vel[0] = ScalarField::sample(g, [](double x) { return 0.2 * std::cos(x); });
    const FluidState s0{ScalarField::sample(g, [](double x) { return 1.0 + 0.3 * std::sin(x); }), vel, 0.0};
    DynamicsConfig cfg;
    cfg.model = EntropyModel::schm(1.0);
    cfg.override_stability = true;
    const auto V = ExternalPotential::none(g);
    const std::vector<double> dts = {0.01, 0.005, 0.0025};
    const auto ref = integrate(s0, cfg, V, dts.back() / 16, 0.2);
    std::vector<double> e;
    for (double dt : dts) {
      const auto s = integrate(s0, cfg, V, dt, 0.2);
      e.push_back(std::max((s.rho - ref.rho).max_abs(), (s.v[0] - ref.v[0]).max_abs()));
    }
    const double p = slope(dts, e);
    v.require(std::abs(p - 4.0) <= 0.3, "rk4 order " + sci(p));
  }

  // split-step in a harmonic trap
  {
    const Grid g = Grid::line(16.0, 128);
    const auto V = ExternalPotential::harmonic(g, 1.0).V;
    const WaveState w0{g, free_gaussian(g, 0.8, 1.0, 1.0, 0.0, 1.0, 0.0), 1.0, 0.0};
    auto evolve = [&](double dt) {
      WaveState w = w0;
      const SplitStepPropagator prop(g, V, dt, 1.0);
      for (long k = step_count(0.5, dt); k > 0; --k) prop.step(w);
      return w;
    };
    const auto ref = evolve(1e-4);
    const std::vector<double> dts = {0.02, 0.01, 0.005};
    std::vector<double> e;
    for (double dt : dts) {
      const auto w = evolve(dt);
      double m = 0.0;
      for (std::size_t i = 0; i < w.psi.size(); ++i) m = std::max(m, std::abs(w.psi[i] - ref.psi[i]));
      e.push_back(m);
    }
    const double p = slope(dts, e);
    v.require(std::abs(p - 2.0) <= 0.2, "split-step order " + sci(p));
  }
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // <= 0: none stated
  std::function<void(Verdict&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "potentializability", 10.0, potentializability},
      {2, "closed-form agreement", 5.0, closed_forms},
      {3, "Madelung-Schrodinger equivalence", 60.0, madelung_schrodinger},
      {4, "reversible entropy conservation", 90.0, entropy_balance},
      {5, "conservation drifts", 0.0, conservation},
      {6, "stationary spectrum", 30.0, spectrum},
      {7, "uniqueness-chain properties", 5.0, uniqueness_chain},
      {8, "discretization orders", 60.0, orders},
  };
  return all;
}

bool report(const Criterion& c) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.run(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("error: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream time;
  time.precision(3);
  time << secs << " s";
  if (c.budget_s > 0.0) {
    time << " of " << c.budget_s << " s";
    if (secs > c.budget_s) v.require(false, "over the runtime budget");
  }
  std::printf("%s criterion %d (%s): %s[%s]\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.str().c_str(),
              time.str().c_str());
  std::fflush(stdout);
  return v.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (const auto& c : criteria())
    if (only == 0 || c.id == only) all_pass = report(c) && all_pass;
  return all_pass ? 0 : 1;
}
