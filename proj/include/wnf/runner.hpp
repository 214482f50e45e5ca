#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "wnf/scenario.hpp"

namespace wnf {

enum class Command { simulate, compare, stationary, verify, list_models };

Command parse_command(std::string_view name);
std::string_view to_string(Command c);

struct RunOptions {
  std::filesystem::path out_root = "wnf-out";
  std::optional<Backend> backend;
  bool override_stability = false;
};

// Exit statuses.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct RunOutcome {
  int exit_code = kExitOk;
  std::string message;
  std::filesystem::path out_dir;
};

// Runs one scenario, writing artifacts under out_root / scenario.name.
// Never throws; errors become exit codes and a message.
RunOutcome run(Command c, const Scenario& s, const RunOptions& opt);

void list_models(std::ostream& out);

// Default output root: $WNF_OUTPUT_ROOT, else "wnf-out".
std::filesystem::path default_output_root();

}  // namespace wnf
