#pragma once

// Scenario files: INI-style sections of flat key = value pairs. Unknown
// sections or keys are rejected. See README.md for the schema.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wnf/dynamics.hpp"
#include "wnf/models.hpp"
#include "wnf/stationary.hpp"

namespace wnf {

struct InitialSpec {
  std::string type = "uniform";  // gaussian | uniform | plane-wave | random | file
  double sigma0 = 1.0;
  double center = 0.0;
  double mass = 1.0;
  double pedestal = 0.0;
  double velocity = 0.0;  // uniform
  int wave = 0;           // plane-wave mode number
  std::optional<std::uint64_t> seed;
  int modes = 0;  // random: highest mode, 0 = N/8
  std::filesystem::path file;
};

struct PotentialSpec {
  std::string type = "none";  // none | harmonic | file
  double omega = 1.0;
  std::filesystem::path file;
};

struct StationarySpec {
  double mass = 1.0;
  double tol_r = 1e-10;
  double dtau = 0.0;
  long max_iterations = 2'000'000;
  int levels = 1;
  std::string initial_guess = "exp-v";  // exp-v | initial
};

struct VerifySpec {
  int seeds = 20;
  std::uint64_t seed_base = 1;
  int n1d = 256;
  int n2d = 64;
  double tol = 1e-6;
  double closed_tol = 1e-8;
};

struct Scenario {
  std::string name;
  std::string description;
  int dim = 1;
  double L[2] = {0.0, 0.0};
  int N[2] = {0, 0};
  EntropyModel model;
  InitialSpec initial;
  PotentialSpec potential;
  double eta = 0.0;
  Scheme scheme = Scheme::rk4;
  PressureBranch branch = PressureBranch::potential;
  Backend backend = Backend::spectral;
  double dt = 1e-3;
  double t_end = 0.0;
  double stability_c = 0.1;
  bool override_stability = false;
  double hbar = 1.0;
  int sample_stride = 1;
  int dump_stride = 0;
  StationarySpec stationary;
  VerifySpec verify;
};

// Parse scenario text; `base` resolves relative file paths.
Scenario parse_scenario(const std::string& text, const std::filesystem::path& base = {});
Scenario load_scenario(const std::filesystem::path& path);

std::vector<std::string> bundled_scenario_names();
const std::string& bundled_scenario_text(const std::string& name);  // throws ValidationError
Scenario bundled_scenario(const std::string& name);

Grid make_grid(const Scenario& s);
FluidState make_initial(const Scenario& s);
ExternalPotential make_potential(const Scenario& s);
DynamicsConfig make_dynamics(const Scenario& s);
SimulationSettings make_settings(const Scenario& s);
StationaryProblem make_stationary(const Scenario& s);

}  // namespace wnf
