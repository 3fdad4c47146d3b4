// peakflow: command-line front end for the Lagrangian CH/DP solver.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "peakflow/checks.hpp"
#include "peakflow/errors.hpp"
#include "peakflow/io.hpp"
#include "peakflow/scenario.hpp"
#include "peakflow/studies.hpp"

namespace fs = std::filesystem;
using namespace peakflow;

namespace {

int code(ExitCode c) { return static_cast<int>(c); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config `" + path + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::trunc);
  out << text;
  if (!out) throw IoError("cannot write `" + path + "`");
}

// Custom data paths are taken relative to the config file.
void resolve_paths(ConfigTree& tree, const std::string& config_path) {
  auto it = tree.entries.find("initial.path");
  if (it == tree.entries.end()) return;
  fs::path p(it->second.value);
  if (p.is_relative()) {
    it->second.value = (fs::path(config_path).parent_path() / p).string();
  }
}

struct Common {
  std::string config;
  std::string out;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "Scenario config (key = value sections)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "Output directory (overrides output.dir)");
  cmd->add_flag("--quiet", c.quiet, "Suppress progress output");
}

struct Loaded {
  ConfigTree tree;
  Scenario scenario;
  std::string out;
};

Loaded load(const Common& c) {
  Loaded l;
  l.tree = parse_config_tree(read_file(c.config));
  resolve_paths(l.tree, c.config);
  l.scenario = build_scenario(l.tree);
  l.out = c.out.empty() ? l.scenario.output_dir : c.out;
  return l;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "peakflow: Lagrangian solver for the Camassa-Holm and Degasperis-Procesi "
      "equations on the line.\n"
      "Exit codes: 0 completed, 2 config error, 3 breakdown, 4 diverged, 5 I/O.\n"
      "Worker pool size is capped by PEAKFLOW_THREADS."};
  app.require_subcommand(1);

  Common common;
  std::uint64_t seed = 20240611;

  auto* run_cmd = app.add_subcommand("run", "Run one scenario");
  add_common(run_cmd, common);

  auto* conv_cmd = app.add_subcommand(
      "converge", "Self-convergence study over the [converge] ladder");
  add_common(conv_cmd, common);

  double delta = -1.0;
  auto* dep_cmd = app.add_subcommand(
      "depend",
      "Continuous-dependence experiment: base vs amplitude-shifted data.\n"
      "Distances are measured in H^1 only; the data-to-solution map is not "
      "continuous in W^{1,inf}, so slope sup-norm distances are not reported.");
  add_common(dep_cmd, common);
  dep_cmd->add_option("--delta", delta, "Perturbation (overrides depend.delta)");

  auto* sweep_cmd =
      app.add_subcommand("sweep", "Run one scenario per [sweep] value");
  add_common(sweep_cmd, common);

  bool check_quiet = false;
  auto* check_cmd = app.add_subcommand("check", "Run the randomized invariant suites");
  check_cmd->add_option("--seed", seed, "Random seed");
  check_cmd->add_flag("--quiet", check_quiet, "Only report failures");
  for (auto* cmd : {run_cmd, conv_cmd, dep_cmd, sweep_cmd}) {
    cmd->add_option("--seed", seed, "Unused; accepted for uniformity");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::ConfigError);
  }

  try {
    if (check_cmd->parsed()) {
      bool all = true;
      for (const auto& r : run_invariant_checks(seed)) {
        all = all && r.passed;
        if (!check_quiet || !r.passed) {
          std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail
                    << "\n";
        }
      }
      return all ? 0 : 1;
    }

    const Loaded l = load(common);
    const Progress progress(&std::cerr, common.quiet);

    if (run_cmd->parsed()) {
      return code(run_scenario(l.scenario, l.out, progress).code);
    }
    if (conv_cmd->parsed()) {
      if (l.scenario.ladder.empty()) {
        throw ConfigError("converge.ladder", "converge needs at least one rung");
      }
      const ConvergenceReport report =
          run_convergence(l.scenario, l.scenario.ladder, progress);
      write_file(l.out + "/convergence.csv", convergence_csv(report));
      if (!common.quiet) std::cout << convergence_csv(report);
      return 0;
    }
    if (dep_cmd->parsed()) {
      const double d = delta >= 0.0 ? delta : l.scenario.delta;
      const DependenceReport report = run_dependence(l.scenario, d, progress);
      write_file(l.out + "/dependence.csv", dependence_csv(report));
      if (!common.quiet) {
        std::cout << "initial_h1_distance," << format_double(report.initial_distance)
                  << "\nsup_h1_distance," << format_double(report.sup_distance)
                  << "\nratio,"
                  << (report.ratio ? format_double(*report.ratio)
                                   : std::string(report.exact_match ? "exact_match"
                                                                    : "undefined"))
                  << "\n";
      }
      return 0;
    }
    if (sweep_cmd->parsed()) {
      if (l.scenario.sweep_key.empty() || l.scenario.sweep_values.empty()) {
        throw ConfigError("sweep.key", "sweep needs sweep.key and sweep.values");
      }
      const auto entries = run_sweep(l.tree, l.scenario.sweep_key,
                                     l.scenario.sweep_values, l.out, progress);
      write_file(l.out + "/sweep.csv", sweep_csv(entries));
      if (!common.quiet) std::cout << sweep_csv(entries);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return code(ExitCode::ConfigError);
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return code(ExitCode::Io);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return code(ExitCode::Io);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code(ExitCode::ConfigError);
  }
  return 0;
}
