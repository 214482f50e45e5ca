#include "wnf/scenario.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "wnf/bundled.hpp"
#include "wnf/csv.hpp"
#include "wnf/errors.hpp"
#include "wnf/quantum.hpp"
#include "wnf/random_density.hpp"

namespace wnf {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"scenario", {"name", "description"}},
      {"grid", {"dim", "L", "N", "Ly", "Ny"}},
      {"model", {"name", "nu", "k", "s0", "local", "local_a", "local_p"}},
      {"initial", {"type", "sigma0", "center", "mass", "pedestal", "velocity", "wave", "seed", "modes", "file"}},
      {"potential", {"type", "omega", "file"}},
      {"dynamics", {"eta", "scheme", "branch", "backend", "dt", "t_end", "stability_c", "override_stability"}},
      {"quantum", {"hbar"}},
      {"output", {"sample_stride", "dump_stride"}},
      {"stationary", {"mass", "tol_r", "dtau", "max_iterations", "levels", "initial_guess"}},
      {"verify", {"seeds", "seed_base", "n1d", "n2d", "tol", "closed_tol"}},
  };
  return s;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& t) : tree_(t) {}

  std::optional<std::string> raw(const std::string& sec, const std::string& key) const {
    const auto s = tree_.get_child_optional(sec);
    if (!s) return std::nullopt;
    const auto v = s->get_optional<std::string>(key);
    if (!v) return std::nullopt;
    return *v;
  }

  std::string text(const std::string& sec, const std::string& key, const std::string& dflt) const {
    return raw(sec, key).value_or(dflt);
  }

  std::optional<double> real(const std::string& sec, const std::string& key) const {
    const auto r = raw(sec, key);
    if (!r) return std::nullopt;
    double x = 0.0;
    const auto res = std::from_chars(r->data(), r->data() + r->size(), x);
    if (res.ec != std::errc() || res.ptr != r->data() + r->size() || !std::isfinite(x))
      throw ValidationError(sec + "." + key + ": expected a finite number, got '" + *r + "'");
    return x;
  }

  double real(const std::string& sec, const std::string& key, double dflt) const {
    return real(sec, key).value_or(dflt);
  }

  std::optional<long long> integer(const std::string& sec, const std::string& key) const {
    const auto r = raw(sec, key);
    if (!r) return std::nullopt;
    long long x = 0;
    const auto res = std::from_chars(r->data(), r->data() + r->size(), x);
    if (res.ec != std::errc() || res.ptr != r->data() + r->size())
      throw ValidationError(sec + "." + key + ": expected an integer, got '" + *r + "'");
    return x;
  }

  long long integer(const std::string& sec, const std::string& key, long long dflt) const {
    return integer(sec, key).value_or(dflt);
  }

  bool flag(const std::string& sec, const std::string& key, bool dflt) const {
    const auto r = raw(sec, key);
    if (!r) return dflt;
    if (*r == "true" || *r == "1") return true;
    if (*r == "false" || *r == "0") return false;
    throw ValidationError(sec + "." + key + ": expected true or false, got '" + *r + "'");
  }

 private:
  const pt::ptree& tree_;
};

void check_schema(const pt::ptree& tree) {
  for (const auto& [sec, body] : tree) {
    const auto it = schema().find(sec);
    if (it == schema().end()) {
      if (body.empty()) throw ValidationError("unknown top-level key '" + sec + "' (keys belong in a section)");
      throw ValidationError("unknown section [" + sec + "]");
    }
    for (const auto& [key, _] : body)
      if (!it->second.count(key)) throw ValidationError("unknown key '" + key + "' in section [" + sec + "]");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

int positive_int(long long v, const char* field) {
  if (v < 1 || v > 1'000'000'000) throw ValidationError(std::string(field) + " must be a positive integer");
  return static_cast<int>(v);
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::filesystem::path& base) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError(std::string("config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  check_schema(tree);
  const Reader r(tree);
  Scenario s;

  s.name = r.text("scenario", "name", "unnamed");
  s.description = r.text("scenario", "description", "");
  if (s.name.empty() || s.name.find_first_of("/\\") != std::string::npos)
    throw ValidationError("scenario.name must be a non-empty plain name");

  s.dim = static_cast<int>(r.integer("grid", "dim", 1));
  if (s.dim != 1 && s.dim != 2) throw ValidationError("grid.dim must be 1 or 2");
  s.L[0] = r.real("grid", "L", 2.0 * std::numbers::pi);
  s.N[0] = positive_int(r.integer("grid", "N", 64), "grid.N");
  s.L[1] = r.real("grid", "Ly", s.L[0]);
  s.N[1] = positive_int(r.integer("grid", "Ny", s.N[0]), "grid.Ny");
  if (s.dim == 1 && (r.raw("grid", "Ly") || r.raw("grid", "Ny")))
    throw ValidationError("grid.Ly / grid.Ny given for a 1D grid");

  // model
  const std::string model_name = r.text("model", "name", "schm");
  s.model.kind = parse_model_kind(model_name);
  s.model.nu = r.real("model", "nu", 0.0);
  s.model.k = r.real("model", "k", 0.0);
  s.model.s0 = r.real("model", "s0", 0.0);
  s.model.local.form = parse_local_form(r.text("model", "local", "none"));
  s.model.local.a = r.real("model", "local_a", 0.0);
  s.model.local.p = r.real("model", "local_p", 1.0);
  if (s.model.local.form == LocalPart::Form::none && (r.raw("model", "local_a") || r.raw("model", "local_p")))
    throw ValidationError("model.local_a / model.local_p given without model.local");
  if (s.model.kind != ModelKind::FisherShannon && r.raw("model", "k"))
    throw ValidationError("model.k is ambiguous for " + model_name + " (only fisher-shannon has a Shannon term)");
  s.model.validate();

  // quantum: nu = hbar^2 for the Schrodinger-Madelung fluid
  const auto hbar = r.real("quantum", "hbar");
  if (hbar && !(*hbar > 0.0)) throw ValidationError("quantum.hbar must be positive");
  if (s.model.kind == ModelKind::SchrodingerMadelung) {
    const bool has_nu = r.raw("model", "nu").has_value();
    if (hbar && has_nu && std::abs(s.model.nu - *hbar * *hbar) > 1e-12 * std::max(1.0, s.model.nu))
      throw ValidationError("ambiguous coefficients: model.nu differs from quantum.hbar^2");
    if (hbar && !has_nu) s.model.nu = *hbar * *hbar;
    s.hbar = hbar ? *hbar : std::sqrt(s.model.nu);
  } else {
    s.hbar = hbar.value_or(1.0);
  }

  // initial data
  auto& in = s.initial;
  in.type = r.text("initial", "type", "uniform");
  in.sigma0 = r.real("initial", "sigma0", 1.0);
  in.center = r.real("initial", "center", 0.0);
  in.mass = r.real("initial", "mass", 1.0);
  in.pedestal = r.real("initial", "pedestal", 0.0);
  in.velocity = r.real("initial", "velocity", 0.0);
  in.wave = static_cast<int>(r.integer("initial", "wave", 0));
  if (const auto seed = r.integer("initial", "seed")) {
    if (*seed < 0) throw ValidationError("initial.seed must be non-negative");
    in.seed = static_cast<std::uint64_t>(*seed);
  }
  in.modes = static_cast<int>(r.integer("initial", "modes", 0));
  if (const auto f = r.raw("initial", "file")) in.file = resolve(base, *f);
  static const std::set<std::string> initial_types{"gaussian", "uniform", "plane-wave", "random", "file"};
  if (!initial_types.count(in.type)) throw ValidationError("initial.type: unknown selector '" + in.type + "'");
  if (!(in.mass > 0.0)) throw ValidationError("initial.mass must be positive");
  if (!(in.sigma0 > 0.0)) throw ValidationError("initial.sigma0 must be positive");
  if (in.pedestal < 0.0) throw ValidationError("initial.pedestal must be non-negative");
  if (in.modes < 0) throw ValidationError("initial.modes must be non-negative");
  if (in.type == "random" && !in.seed) throw ValidationError("initial.seed is required for random initial data");
  if (in.type == "file" && in.file.empty()) throw ValidationError("initial.file is required for file initial data");

  // potential
  auto& pot = s.potential;
  pot.type = r.text("potential", "type", "none");
  pot.omega = r.real("potential", "omega", 1.0);
  if (const auto f = r.raw("potential", "file")) pot.file = resolve(base, *f);
  if (pot.type != "none" && pot.type != "harmonic" && pot.type != "file")
    throw ValidationError("potential.type: unknown selector '" + pot.type + "'");
  if (pot.type == "file" && pot.file.empty()) throw ValidationError("potential.file is required");

  // dynamics
  s.eta = r.real("dynamics", "eta", 0.0);
  if (s.eta < 0.0) throw ValidationError("dynamics.eta must be >= 0");
  s.scheme = parse_scheme(r.text("dynamics", "scheme", "rk4"));
  s.branch = parse_branch(r.text("dynamics", "branch", "potential"));
  s.backend = parse_backend(r.text("dynamics", "backend", "spectral"));
  s.dt = r.real("dynamics", "dt", 1e-3);
  s.t_end = r.real("dynamics", "t_end", 0.0);
  s.stability_c = r.real("dynamics", "stability_c", 0.1);
  s.override_stability = r.flag("dynamics", "override_stability", false);
  if (!(s.dt > 0.0)) throw ValidationError("dynamics.dt must be positive");
  if (s.t_end < 0.0) throw ValidationError("dynamics.t_end must be >= 0");
  if (!(s.stability_c > 0.0)) throw ValidationError("dynamics.stability_c must be positive");

  s.sample_stride = positive_int(r.integer("output", "sample_stride", 1), "output.sample_stride");
  s.dump_stride = static_cast<int>(r.integer("output", "dump_stride", 0));
  if (s.dump_stride < 0) throw ValidationError("output.dump_stride must be >= 0");

  auto& st = s.stationary;
  st.mass = r.real("stationary", "mass", 1.0);
  st.tol_r = r.real("stationary", "tol_r", 1e-10);
  st.dtau = r.real("stationary", "dtau", 0.0);
  st.max_iterations = r.integer("stationary", "max_iterations", 2'000'000);
  st.levels = static_cast<int>(r.integer("stationary", "levels", 1));
  st.initial_guess = r.text("stationary", "initial_guess", "exp-v");
  if (!(st.mass > 0.0)) throw ValidationError("stationary.mass must be positive");
  if (!(st.tol_r > 0.0)) throw ValidationError("stationary.tol_r must be positive");
  if (st.dtau < 0.0) throw ValidationError("stationary.dtau must be >= 0");
  if (st.max_iterations < 1) throw ValidationError("stationary.max_iterations must be >= 1");
  if (st.levels < 1) throw ValidationError("stationary.levels must be >= 1");
  if (st.initial_guess != "exp-v" && st.initial_guess != "initial")
    throw ValidationError("stationary.initial_guess must be exp-v or initial");

  auto& v = s.verify;
  v.seeds = positive_int(r.integer("verify", "seeds", 20), "verify.seeds");
  const auto sb = r.integer("verify", "seed_base", 1);
  if (sb < 0) throw ValidationError("verify.seed_base must be non-negative");
  v.seed_base = static_cast<std::uint64_t>(sb);
  v.n1d = positive_int(r.integer("verify", "n1d", 256), "verify.n1d");
  v.n2d = static_cast<int>(r.integer("verify", "n2d", 64));
  if (v.n2d < 0) throw ValidationError("verify.n2d must be >= 0 (0 skips 2D)");
  v.tol = r.real("verify", "tol", 1e-6);
  v.closed_tol = r.real("verify", "closed_tol", 1e-8);

  make_grid(s);  // validates extents and point counts
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.parent_path());
}

std::vector<std::string> bundled_scenario_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : bundled::scenarios()) out.push_back(name);
  return out;
}

const std::string& bundled_scenario_text(const std::string& name) {
  const auto& all = bundled::scenarios();
  const auto it = all.find(name);
  if (it == all.end()) throw ValidationError("unknown bundled scenario '" + name + "'");
  return it->second;
}

Scenario bundled_scenario(const std::string& name) { return parse_scenario(bundled_scenario_text(name)); }

Grid make_grid(const Scenario& s) {
  return s.dim == 1 ? Grid::line(s.L[0], s.N[0]) : Grid::plane(s.L[0], s.L[1], s.N[0], s.N[1]);
}

FluidState make_initial(const Scenario& s) {
  const Grid g = make_grid(s);
  const auto& in = s.initial;
  FluidState f{ScalarField(g), VectorField(g), 0.0};
  if (in.type == "gaussian") {
    if (g.dim() != 1) throw ValidationError("initial.type = gaussian is 1D only");
    const auto psi = free_gaussian(g, in.sigma0, in.center, in.mass, in.pedestal, s.hbar, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) f.rho[i] = std::norm(psi[i]);
  } else if (in.type == "uniform") {
    f.rho = ScalarField(g, in.mass / (g.extent(0) * (g.dim() == 2 ? g.extent(1) : 1.0)));
    f.v[0] = ScalarField(g, in.velocity);
  } else if (in.type == "plane-wave") {
    if (g.dim() != 1) throw ValidationError("initial.type = plane-wave is 1D only");
    if (std::abs(in.wave) >= g.points(0) / 2) throw ValidationError("initial.wave must be below the Nyquist mode");
    f.rho = ScalarField(g, in.mass / g.extent(0));
    f.v[0] = ScalarField(g, s.hbar * 2.0 * std::numbers::pi * in.wave / g.extent(0));
  } else if (in.type == "random") {
    f.rho = random_log_smooth_density(g, *in.seed, in.modes);
    f.rho *= in.mass / f.rho.integral();
  } else {
    const csv::Table t = csv::read(in.file);
    if (t.rows.size() != g.size())
      throw ValidationError("initial.file: expected " + std::to_string(g.size()) + " rows, got " +
                            std::to_string(t.rows.size()));
    const auto rho = t.values("rho");
    for (std::size_t i = 0; i < g.size(); ++i) f.rho[i] = rho[i];
    const char* names[2] = {"v_x", "v_y"};
    for (int a = 0; a < g.dim(); ++a) {
      const auto v = t.values(names[a]);
      for (std::size_t i = 0; i < g.size(); ++i) f.v[a][i] = v[i];
    }
  }
  f.rho.require_finite("initial density");
  f.v.require_finite("initial velocity");
  return f;
}

ExternalPotential make_potential(const Scenario& s) {
  const Grid g = make_grid(s);
  const auto& p = s.potential;
  if (p.type == "harmonic") return ExternalPotential::harmonic(g, p.omega);
  if (p.type == "file") {
    const csv::Table t = csv::read(p.file);
    if (t.rows.size() != g.size()) throw ValidationError("potential.file: row count does not match grid");
    const auto V = t.values("V");
    ExternalPotential out = ExternalPotential::none(g);
    for (std::size_t i = 0; i < g.size(); ++i) out.V[i] = V[i];
    out.V.require_finite("potential.file");
    return out;
  }
  return ExternalPotential::none(g);
}

DynamicsConfig make_dynamics(const Scenario& s) {
  DynamicsConfig c;
  c.model = s.model;
  c.closure.eta = s.eta;
  c.backend = s.backend;
  c.branch = s.branch;
  c.scheme = s.scheme;
  c.stability_c = s.stability_c;
  c.override_stability = s.override_stability;
  return c;
}

SimulationSettings make_settings(const Scenario& s) {
  step_count(s.t_end, s.dt);
  return {s.dt, s.t_end, s.sample_stride, s.dump_stride};
}

StationaryProblem make_stationary(const Scenario& s) {
  StationaryProblem p{.model = s.model,
                      .V = make_potential(s).V,
                      .mass = s.stationary.mass,
                      .tol_r = s.stationary.tol_r,
                      .dtau = s.stationary.dtau,
                      .max_iterations = s.stationary.max_iterations,
                      .initial = std::nullopt,
                      .backend = s.backend};
  if (s.stationary.initial_guess == "initial") p.initial = make_initial(s).rho;
  return p;
}

}  // namespace wnf
