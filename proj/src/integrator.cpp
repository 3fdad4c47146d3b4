#include "peakflow/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "peakflow/errors.hpp"

namespace peakflow {

void validate(const IntegratorConfig& config) {
  std::vector<ConfigIssue> issues;
  if (!std::isfinite(config.dt) || config.dt == 0.0) {
    issues.push_back({"integrator.dt", "must be finite and nonzero"});
  }
  if (!std::isfinite(config.horizon) || !(config.horizon > 0.0)) {
    issues.push_back({"integrator.T", "must be positive"});
  } else if (std::isfinite(config.dt) &&
             std::abs(config.dt) > config.horizon) {
    issues.push_back({"integrator.dt", "|dt| must not exceed the horizon T"});
  }
  if (config.picard_sweeps < 1) {
    issues.push_back({"integrator.picard_sweeps", "must be at least 1"});
  }
  if (!(config.breakdown_rho > 0.0 && config.breakdown_rho < 1.0)) {
    issues.push_back({"integrator.breakdown_rho", "must lie in (0, 1)"});
  }
  if (!(config.max_slope_guard > 0.0)) {
    issues.push_back({"integrator.max_slope_guard", "must be positive"});
  }
  if (!(config.snapshot_cadence >= 0.0) ||
      !std::isfinite(config.snapshot_cadence)) {
    issues.push_back({"output.cadence", "must be nonnegative"});
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

const char* to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::Completed: return "Completed";
    case RunStatus::Breakdown: return "Breakdown";
    case RunStatus::Diverged: return "Diverged";
  }
  return "Unknown";
}

namespace {

void axpy(GridFunction& out, const GridFunction& base, const GridFunction& d,
          double scale) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = base[i] + scale * d[i];
}

bool all_finite(const LagrangianState& s) {
  auto finite = [](const GridFunction& f) {
    return std::all_of(f.values.begin(), f.values.end(),
                       [](double v) { return std::isfinite(v); });
  };
  return finite(s.xi) && finite(s.z) && finite(s.w) && finite(s.y);
}

// Admissibility of an intermediate state: positive Jacobian and strictly
// increasing positions.
void require_admissible(const LagrangianState& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s.y[i] > 0.0)) throw NonMonotoneDeformation(i);
    if (i > 0 && !(s.position(i) > s.position(i - 1))) {
      throw NonMonotoneDeformation(i);
    }
  }
}

}  // namespace

LagrangianState advance(const LagrangianState& state, const StateRate& rate,
                        double scale) {
  LagrangianState out = state;
  axpy(out.xi, state.xi, rate.d_xi, scale);
  axpy(out.z, state.z, rate.d_z, scale);
  axpy(out.w, state.w, rate.d_w, scale);
  axpy(out.y, state.y, rate.d_y, scale);
  out.time = state.time + scale;
  return out;
}

LagrangianState step_rk4(const LagrangianState& state,
                         const ModelParams& params, double dt) {
  const StateRate k1 = vector_field(state, params);
  const LagrangianState s2 = advance(state, k1, 0.5 * dt);
  require_admissible(s2);
  const StateRate k2 = vector_field(s2, params);
  const LagrangianState s3 = advance(state, k2, 0.5 * dt);
  require_admissible(s3);
  const StateRate k3 = vector_field(s3, params);
  const LagrangianState s4 = advance(state, k3, dt);
  require_admissible(s4);
  const StateRate k4 = vector_field(s4, params);

  LagrangianState out = state;
  const double c = dt / 6.0;
  auto combine = [c](GridFunction& o, const GridFunction& base,
                     const GridFunction& a, const GridFunction& b,
                     const GridFunction& d, const GridFunction& e) {
    for (std::size_t i = 0; i < o.size(); ++i) {
      o[i] = base[i] + c * (a[i] + 2.0 * b[i] + 2.0 * d[i] + e[i]);
    }
  };
  combine(out.xi, state.xi, k1.d_xi, k2.d_xi, k3.d_xi, k4.d_xi);
  combine(out.z, state.z, k1.d_z, k2.d_z, k3.d_z, k4.d_z);
  combine(out.w, state.w, k1.d_w, k2.d_w, k3.d_w, k4.d_w);
  combine(out.y, state.y, k1.d_y, k2.d_y, k3.d_y, k4.d_y);
  out.time = state.time + dt;
  return out;
}

double state_distance(const LagrangianState& a, const LagrangianState& b) {
  auto diff = [](const GridFunction& p, const GridFunction& q) {
    GridFunction d = GridFunction::filled_like(p);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = p[i] - q[i];
    return d;
  };
  return norm_X(diff(a.xi, b.xi)) + norm_X(diff(a.z, b.z)) +
         norm_Y(diff(a.w, b.w)) + norm_Y(diff(a.y, b.y));
}

PicardStep picard_step(const LagrangianState& state, const ModelParams& params,
                       double dt, int sweeps) {
  if (sweeps < 1) throw NoContraction("Picard iteration needs at least one sweep");
  if (std::abs(dt) * norm_Linf(state.w) >= 0.5) {
    throw NoContraction("dt |w|_inf >= 1/2: Picard step is not a contraction");
  }
  const StateRate base_rate = vector_field(state, params);
  PicardStep result{state, {}};
  LagrangianState iterate = state;
  // Increments below this are roundoff and may wobble.
  const double floor = 1e-13 * (1.0 + norm_X(state.xi) + norm_X(state.z) +
                                norm_Y(state.w) + norm_Y(state.y));
  for (int k = 0; k < sweeps; ++k) {
    require_admissible(iterate);
    const StateRate rate = vector_field(iterate, params);
    LagrangianState next = state;
    const double half = 0.5 * dt;
    for (std::size_t i = 0; i < next.size(); ++i) {
      next.xi[i] = state.xi[i] + half * (base_rate.d_xi[i] + rate.d_xi[i]);
      next.z[i] = state.z[i] + half * (base_rate.d_z[i] + rate.d_z[i]);
      next.w[i] = state.w[i] + half * (base_rate.d_w[i] + rate.d_w[i]);
      next.y[i] = state.y[i] + half * (base_rate.d_y[i] + rate.d_y[i]);
    }
    next.time = state.time + dt;
    const double inc = state_distance(next, iterate);
    if (!result.increments.empty() && inc > result.increments.back() &&
        inc > floor) {
      throw NoContraction("Picard increment grew from " +
                          std::to_string(result.increments.back()) + " to " +
                          std::to_string(inc));
    }
    result.increments.push_back(inc);
    iterate = std::move(next);
  }
  result.state = std::move(iterate);
  return result;
}

LagrangianState step_picard(const LagrangianState& state,
                            const ModelParams& params, double dt, int sweeps) {
  return picard_step(state, params, dt, sweeps).state;
}

RunOutcome run(const LagrangianState& state0, const ModelParams& params,
               const IntegratorConfig& config, const DiagnosticsPlan& plan,
               const SnapshotSink& sink) {
  validate(config);
  validate(state0);

  RunOutcome outcome;
  outcome.final_state = state0;
  outcome.status_time = state0.time;

  auto emit = [&](const LagrangianState& s) {
    SnapshotRecord rec = make_snapshot(s, plan);
    if (sink) sink(rec);
    outcome.trace.push_back(std::move(rec));
  };

  const double t0 = state0.time;
  const double direction = config.dt > 0.0 ? 1.0 : -1.0;
  const double step = std::abs(config.dt);
  const auto steps = static_cast<long>(std::ceil(config.horizon / step - 1e-9));
  const double cadence = config.snapshot_cadence;
  long next_snapshot = 1;  // index k of the next cadence time k * cadence

  emit(state0);
  bool last_emitted = true;

  LagrangianState current = state0;
  for (long n = 0; n < steps; ++n) {
    const double remaining = config.horizon - static_cast<double>(n) * step;
    const double dt = direction * std::min(step, remaining);

    const double slope = norm_Linf(current.w);
    if (slope > config.max_slope_guard ||
        std::abs(dt) > 0.5 / std::max(1.0, slope)) {
      outcome.status = RunStatus::Diverged;
      break;
    }

    LagrangianState next;
    try {
      if (config.mode == IntegratorMode::RK4) {
        next = step_rk4(current, params, dt);
      } else {
        PicardStep p = picard_step(current, params, dt, config.picard_sweeps);
        outcome.picard_increments.push_back(std::move(p.increments));
        next = std::move(p.state);
      }
    } catch (const NonMonotoneDeformation&) {
      outcome.status = RunStatus::Breakdown;
      break;
    } catch (const NoContraction&) {
      outcome.status = RunStatus::Diverged;
      break;
    }
    next.time = t0 + direction * std::min(config.horizon,
                                          static_cast<double>(n + 1) * step);

    if (!all_finite(next)) {
      outcome.status = RunStatus::Diverged;
      break;
    }
    const double min_y =
        *std::min_element(next.y.values.begin(), next.y.values.end());
    if (!(min_y > 0.0)) {
      // The step crossed y = 0 outright; keep the last admissible state.
      outcome.status = RunStatus::Breakdown;
      break;
    }
    try {
      require_admissible(next);
    } catch (const NonMonotoneDeformation&) {
      outcome.status = RunStatus::Breakdown;
      break;
    }

    current = std::move(next);
    last_emitted = false;
    if (min_y <= config.breakdown_rho) {
      outcome.status = RunStatus::Breakdown;
      break;
    }
    if (norm_Linf(current.w) > config.max_slope_guard) {
      outcome.status = RunStatus::Diverged;
      break;
    }
    if (cadence > 0.0) {
      const double elapsed = std::abs(current.time - t0);
      if (elapsed >= static_cast<double>(next_snapshot) * cadence - 1e-9 * step) {
        emit(current);
        last_emitted = true;
        while (static_cast<double>(next_snapshot) * cadence <=
               elapsed + 1e-9 * step) {
          ++next_snapshot;
        }
      }
    }
  }

  if (!last_emitted) emit(current);
  outcome.status_time = current.time;
  outcome.final_state = std::move(current);
  return outcome;
}

}  // namespace peakflow
