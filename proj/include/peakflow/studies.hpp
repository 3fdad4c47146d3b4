#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "peakflow/eulerian.hpp"
#include "peakflow/integrator.hpp"
#include "peakflow/scenario.hpp"

namespace peakflow {

/// Process exit codes; a stable public contract of the CLI.
enum class ExitCode : int {
  Completed = 0,
  ConfigError = 2,
  Breakdown = 3,
  Diverged = 4,
  Io = 5,
};

ExitCode exit_code(RunStatus status) noexcept;

/// Worker count: PEAKFLOW_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned worker_threads();

/// Run `task(i)` for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task);

/// Serialized console progress; silent when `quiet`.
class Progress {
 public:
  Progress(std::ostream* out, bool quiet) : out_(out), quiet_(quiet) {}
  void line(const std::string& text) const;

 private:
  std::ostream* out_;
  bool quiet_;
};

struct ScenarioResult {
  RunOutcome outcome;
  ExitCode code = ExitCode::Completed;
};

/// Build the initial data, run, and stream `snapshots.ndjson` and
/// `diagnostics.csv` into `out_dir`.
ScenarioResult run_scenario(const Scenario& scenario, const std::string& out_dir,
                            const Progress& progress = {nullptr, true});

/// L^2 distance of u and H^1 distance of (u, u_x) over the nodes two
/// snapshots share. Axes must have equal spacing and aligned nodes.
double l2_distance(const EulerianFields& a, const EulerianFields& b);
double h1_distance(const EulerianFields& a, const EulerianFields& b);

struct ConvergenceRung {
  LadderRung rung;
  RunStatus status = RunStatus::Completed;
  double final_time = 0.0;
  std::optional<double> error_vs_finest;  // L^2 of u on the comparison axis
  LagrangianState final_state;
};

struct ConvergenceReport {
  std::vector<ConvergenceRung> rungs;
  UniformAxis comparison_axis;
  /// log(|u_k - u_{k+1}| / |u_{k+1} - u_{k+2}|) / log(r) for each
  /// consecutive completed triple, r the refinement ratio.
  std::vector<double> orders;
};

/// Run every rung (cells, dt) of the ladder concurrently and compare the
/// final Eulerian profiles on the coarsest rung's nodes.
ConvergenceReport run_convergence(const Scenario& scenario,
                                  const std::vector<LadderRung>& ladder,
                                  const Progress& progress = {nullptr, true});

std::string convergence_csv(const ConvergenceReport& report);

struct DependenceReport {
  double delta = 0.0;
  double initial_distance = 0.0;  // H^1 at t = 0
  double sup_distance = 0.0;      // sup over snapshots of H^1 distance
  std::optional<double> ratio;    // sup / initial, absent when initial is 0
  bool exact_match = false;       // delta = 0 and identical trajectories
  std::vector<std::pair<double, double>> series;  // (t, H^1 distance)
  RunStatus base_status = RunStatus::Completed;
  RunStatus perturbed_status = RunStatus::Completed;
};

/// Scenario with its initial amplitude shifted by delta (peakon speed c,
/// gaussian/breaking amplitude, custom data scaled by 1 + delta).
Scenario perturbed(const Scenario& scenario, double delta);

/// Run base and perturbed data and measure the H^1 distance over time.
DependenceReport run_dependence(const Scenario& scenario, double delta,
                                const Progress& progress = {nullptr, true});

std::string dependence_csv(const DependenceReport& report);

struct SweepEntry {
  std::string value;
  std::string directory;
  RunStatus status = RunStatus::Completed;
  ExitCode code = ExitCode::Completed;
  double final_time = 0.0;
};

/// One scenario per value of `key`, each written to its own subdirectory
/// of `out_dir`. Throws ConfigError before running anything if any value
/// produces an invalid scenario.
std::vector<SweepEntry> run_sweep(const ConfigTree& base, const std::string& key,
                                  const std::vector<std::string>& values,
                                  const std::string& out_dir,
                                  const Progress& progress = {nullptr, true});

std::string sweep_csv(const std::vector<SweepEntry>& entries);

}  // namespace peakflow
