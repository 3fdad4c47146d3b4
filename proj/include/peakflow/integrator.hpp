#pragma once

#include <functional>
#include <vector>

#include "peakflow/diagnostics.hpp"
#include "peakflow/dynamics.hpp"
#include "peakflow/state.hpp"

namespace peakflow {

enum class IntegratorMode { RK4, Picard };

struct IntegratorConfig {
  IntegratorMode mode = IntegratorMode::RK4;
  double dt = 1e-3;          // negative values integrate backwards in time
  double horizon = 1.0;      // |elapsed time| to cover
  int picard_sweeps = 4;
  double breakdown_rho = 1e-2;
  double max_slope_guard = 1e3;
  double snapshot_cadence = 0.1;  // simulation time; 0 = first and last only
};

/// Throws ConfigError listing every invalid field.
void validate(const IntegratorConfig& config);

enum class RunStatus { Completed, Breakdown, Diverged };

struct RunOutcome {
  LagrangianState final_state;
  RunStatus status = RunStatus::Completed;
  double status_time = 0.0;  // time at which the run stopped
  std::vector<SnapshotRecord> trace;
  /// Picard mode only: per step, the surrogate-norm distance between
  /// successive iterates.
  std::vector<std::vector<double>> picard_increments;
};

const char* to_string(RunStatus status) noexcept;

/// state + scale * rate, time advanced by `scale`.
LagrangianState advance(const LagrangianState& state, const StateRate& rate,
                        double scale);

/// Classical four-stage Runge-Kutta step. Throws NonMonotoneDeformation if
/// a stage leaves the admissible set.
LagrangianState step_rk4(const LagrangianState& state,
                         const ModelParams& params, double dt);

struct PicardStep {
  LagrangianState state;
  std::vector<double> increments;  // |v_{k+1} - v_k| for k = 0 .. sweeps-1
};

/// Trapezoidal-in-time fixed-point iteration
///   v_{k+1} = v_n + dt/2 (F(v_n) + F(v_k)),  v_0 = v_n.
/// Throws NoContraction if dt |w|_inf >= 1/2 or the increments stop
/// shrinking before reaching roundoff.
PicardStep picard_step(const LagrangianState& state, const ModelParams& params,
                       double dt, int sweeps);

LagrangianState step_picard(const LagrangianState& state,
                            const ModelParams& params, double dt, int sweeps);

/// Distance between two states in the X x X x Y (x Y for y) surrogate norm.
double state_distance(const LagrangianState& a, const LagrangianState& b);

using SnapshotSink = std::function<void(const SnapshotRecord&)>;

/// Advance `state0` over the configured horizon. Breakdown (min y at or
/// below breakdown_rho) and divergence (slope guard, step-size guard or
/// non-finite values) end the run through the returned status; no snapshot
/// ever carries a non-finite value.
RunOutcome run(const LagrangianState& state0, const ModelParams& params,
               const IntegratorConfig& config, const DiagnosticsPlan& plan,
               const SnapshotSink& sink = {});

}  // namespace peakflow
