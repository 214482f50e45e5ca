// Command-line front end: wnf <command> --scenario NAME | --config FILE [options]

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <iostream>
#include <mutex>
#include <thread>

#include "wnf/errors.hpp"
#include "wnf/runner.hpp"

namespace {

struct Job {
  std::string label;
  std::optional<wnf::Scenario> scenario;
  std::string load_error;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weakly nonlocal fluid laboratory: simulate, compare, stationary, verify, list-models"};
  std::string command;
  std::vector<std::string> configs, names;
  std::string out, backend;
  int jobs = 1;
  bool override_stability = false;

  app.add_option("command", command, "simulate | compare | stationary | verify | list-models")
      ->required()
      ->check(CLI::IsMember({"simulate", "compare", "stationary", "verify", "list-models"}));
  app.add_option("--config,-c", configs, "Scenario file(s)");
  app.add_option("--scenario,-s", names, "Bundled scenario name(s)");
  app.add_option("--out,-o", out, "Output root (default $WNF_OUTPUT_ROOT or ./wnf-out)");
  app.add_option("--jobs,-j", jobs, "Scenarios to run in parallel")->check(CLI::PositiveNumber);
  app.add_flag("--override-stability", override_stability, "Run even when dt exceeds the stability bound");
  app.add_option("--backend", backend, "Derivative backend")->check(CLI::IsMember({"spectral", "fd2", "fd4"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return wnf::kExitValidation;
  }

  const wnf::Command cmd = wnf::parse_command(command);
  if (cmd == wnf::Command::list_models) {
    wnf::list_models(std::cout);
    std::cout << "\nbundled scenarios:";
    for (const auto& n : wnf::bundled_scenario_names()) std::cout << ' ' << n;
    std::cout << '\n';
    return wnf::kExitOk;
  }
  if (configs.empty() && names.empty()) {
    std::cerr << "error: give --config FILE or --scenario NAME\n";
    return wnf::kExitValidation;
  }

  wnf::RunOptions opt;
  opt.out_root = out.empty() ? wnf::default_output_root() : std::filesystem::path(out);
  opt.override_stability = override_stability;
  if (!backend.empty()) opt.backend = wnf::parse_backend(backend);

  std::vector<Job> work;
  for (const auto& n : names) {
    Job j{n, std::nullopt, {}};
    try {
      j.scenario = wnf::bundled_scenario(n);
    } catch (const wnf::ValidationError& e) {
      j.load_error = e.what();
    }
    work.push_back(std::move(j));
  }
  for (const auto& c : configs) {
    Job j{c, std::nullopt, {}};
    try {
      j.scenario = wnf::load_scenario(c);
    } catch (const wnf::ValidationError& e) {
      j.load_error = e.what();
    }
    work.push_back(std::move(j));
  }

  std::mutex io;
  std::atomic<std::size_t> next{0};
  std::atomic<int> worst{wnf::kExitOk};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < work.size();) {
      const Job& j = work[k];
      int code;
      std::string msg, where;
      if (!j.scenario) {
        code = wnf::kExitValidation;
        msg = j.load_error;
      } else {
        const auto res = wnf::run(cmd, *j.scenario, opt);
        code = res.exit_code;
        msg = res.message;
        where = res.out_dir.string();
      }
      {
        std::lock_guard lock(io);
        std::ostream& os = code == wnf::kExitOk ? std::cout : std::cerr;
        os << j.label << ": " << (code == wnf::kExitOk ? "ok" : code == wnf::kExitValidation ? "invalid" : "failed");
        if (!where.empty()) os << " -> " << where;
        if (!msg.empty()) os << " (" << msg << ")";
        os << '\n';
      }
      int prev = worst.load();
      while (code > prev && !worst.compare_exchange_weak(prev, code)) {
      }
    }
  };
  const int n_threads = std::min<int>(jobs, static_cast<int>(work.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return worst.load();
}
