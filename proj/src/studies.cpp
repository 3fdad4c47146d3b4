#include "peakflow/studies.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "peakflow/diagnostics.hpp"
#include "peakflow/errors.hpp"
#include "peakflow/io.hpp"

namespace peakflow {

ExitCode exit_code(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::Completed: return ExitCode::Completed;
    case RunStatus::Breakdown: return ExitCode::Breakdown;
    case RunStatus::Diverged: return ExitCode::Diverged;
  }
  return ExitCode::Diverged;
}

unsigned worker_threads() {
  if (const char* env = std::getenv("PEAKFLOW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& task) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, threads));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            task(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

namespace {
std::mutex& console_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void Progress::line(const std::string& text) const {
  if (quiet_ || out_ == nullptr) return;
  std::lock_guard lock(console_mutex());
  *out_ << text << std::endl;
}

ScenarioResult run_scenario(const Scenario& scenario, const std::string& out_dir,
                            const Progress& progress) {
  const LagrangianState state0 = build_initial_state(scenario);
  RunWriter writer(out_dir, scenario);
  progress.line("[" + scenario.name + "] running to T = " +
                format_double(scenario.integrator.horizon));
  ScenarioResult result;
  result.outcome = run(state0, scenario.params, scenario.integrator,
                       scenario.diagnostics,
                       [&](const SnapshotRecord& s) { writer.write(s); });
  writer.finish(result.outcome.status, result.outcome.status_time);
  result.code = exit_code(result.outcome.status);
  progress.line("[" + scenario.name + "] " + to_string(result.outcome.status) +
                " at t = " + format_double(result.outcome.status_time));
  return result;
}

namespace {

// Node offsets so that a.axis.at(ia + k) == b.axis.at(ib + k) for the overlap.
struct Overlap {
  std::size_t a0 = 0, b0 = 0, count = 0;
};

Overlap overlap(const UniformAxis& a, const UniformAxis& b) {
  const double h = a.spacing;
  if (std::abs(a.spacing - b.spacing) > 1e-12 * h) {
    throw InvalidGrid("cannot compare snapshots with different spacing");
  }
  const double shift = (b.origin - a.origin) / h;
  const long offset = std::lround(shift);
  if (std::abs(shift - static_cast<double>(offset)) > 1e-6) {
    throw InvalidGrid("snapshot axes are not node-aligned");
  }
  Overlap o;
  if (offset >= 0) {
    o.a0 = static_cast<std::size_t>(offset);
  } else {
    o.b0 = static_cast<std::size_t>(-offset);
  }
  const long na = static_cast<long>(a.count) - static_cast<long>(o.a0);
  const long nb = static_cast<long>(b.count) - static_cast<long>(o.b0);
  o.count = static_cast<std::size_t>(std::max(0L, std::min(na, nb)));
  return o;
}

double distance(const EulerianFields& a, const EulerianFields& b,
                bool with_slope) {
  const Overlap o = overlap(a.axis, b.axis);
  std::vector<double> sq(o.count);
  for (std::size_t k = 0; k < o.count; ++k) {
    const double du = a.u[o.a0 + k] - b.u[o.b0 + k];
    sq[k] = du * du;
    if (with_slope) {
      const double dux = a.ux[o.a0 + k] - b.ux[o.b0 + k];
      sq[k] += dux * dux;
    }
  }
  return std::sqrt(trapezoid(sq, a.axis.spacing));
}

}  // namespace

double l2_distance(const EulerianFields& a, const EulerianFields& b) {
  return distance(a, b, false);
}

double h1_distance(const EulerianFields& a, const EulerianFields& b) {
  return distance(a, b, true);
}

ConvergenceReport run_convergence(const Scenario& scenario,
                                  const std::vector<LadderRung>& ladder,
                                  const Progress& progress) {
  ConvergenceReport report;
  report.rungs.resize(ladder.size());
  parallel_for(ladder.size(), worker_threads(), [&](std::size_t k) {
    Scenario sc = scenario;
    sc.grid.cells = ladder[k].cells;
    sc.integrator.dt = ladder[k].dt;
    sc.integrator.snapshot_cadence = 0.0;
    sc.diagnostics = {};
    const LagrangianState s0 = build_initial_state(sc);
    RunOutcome out = run(s0, sc.params, sc.integrator, sc.diagnostics);
    auto& rung = report.rungs[k];
    rung.rung = ladder[k];
    rung.status = out.status;
    rung.final_time = out.status_time;
    rung.final_state = std::move(out.final_state);
    progress.line("[converge] N = " + std::to_string(ladder[k].cells) +
                  ", dt = " + format_double(ladder[k].dt) + ": " +
                  to_string(rung.status));
  });
  if (ladder.empty()) return report;

  std::vector<std::size_t> done;
  for (std::size_t k = 0; k < report.rungs.size(); ++k) {
    if (report.rungs[k].status == RunStatus::Completed) done.push_back(k);
  }
  if (done.empty()) return report;

  // Coarsest completed rung's interior nodes, clipped to every deformed range.
  const LagrangianState& coarse = report.rungs[done.front()].final_state;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t k : done) {
    const auto& s = report.rungs[k].final_state;
    lo = std::max(lo, s.position(0));
    hi = std::min(hi, s.position(s.size() - 1));
  }
  std::size_t first = 1;
  while (first < coarse.size() && coarse.label(first) < lo) ++first;
  std::size_t last = coarse.size() - 1;
  while (last > first && coarse.label(last - 1) > hi) --last;
  report.comparison_axis = {coarse.label(first), coarse.spacing(), last - first};

  std::vector<EulerianFields> fields;
  for (std::size_t k : done) {
    fields.push_back(
        reconstruct(report.rungs[k].final_state, report.comparison_axis));
  }
  const EulerianFields& finest = fields.back();
  for (std::size_t j = 0; j < done.size(); ++j) {
    report.rungs[done[j]].error_vs_finest = l2_distance(fields[j], finest);
  }
  for (std::size_t j = 0; j + 2 < done.size(); ++j) {
    const double d01 = l2_distance(fields[j], fields[j + 1]);
    const double d12 = l2_distance(fields[j + 1], fields[j + 2]);
    const auto& r0 = report.rungs[done[j]].rung;
    const auto& r1 = report.rungs[done[j + 1]].rung;
    const double ratio =
        std::max(static_cast<double>(r1.cells) / static_cast<double>(r0.cells),
                 r0.dt / r1.dt);
    report.orders.push_back(std::log(d01 / d12) / std::log(ratio));
  }
  return report;
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::string out = "N,dt,status,final_time,error_vs_finest,observed_order\n";
  std::size_t order_index = 0;
  for (const auto& r : report.rungs) {
    out += std::to_string(r.rung.cells) + "," + format_double(r.rung.dt) + "," +
           to_string(r.status) + "," + format_double(r.final_time) + "," +
           (r.error_vs_finest ? format_double(*r.error_vs_finest) : "") + ",";
    if (r.status == RunStatus::Completed && order_index < report.orders.size()) {
      out += format_double(report.orders[order_index++]);
    }
    out += "\n";
  }
  return out;
}

Scenario perturbed(const Scenario& scenario, double delta) {
  Scenario sc = scenario;
  switch (sc.initial.kind) {
    case InitialKind::Peakon:
      sc.initial.c += delta;
      if (sc.diagnostics.peakon_speed) sc.diagnostics.peakon_speed = sc.initial.c;
      break;
    case InitialKind::Gaussian:
    case InitialKind::Breaking: sc.initial.amplitude += delta; break;
    case InitialKind::Custom: break;  // scaled after loading
    case InitialKind::Zero:
      throw ConfigError("initial.type", "zero data has no amplitude to perturb");
  }
  return sc;
}

namespace {

LagrangianState perturbed_state(const Scenario& sc, double delta) {
  LagrangianState s = build_initial_state(perturbed(sc, delta));
  if (sc.initial.kind == InitialKind::Custom) {
    for (double& v : s.z.values) v *= 1.0 + delta;
    for (double& v : s.w.values) v *= 1.0 + delta;
  }
  return s;
}

}  // namespace

DependenceReport run_dependence(const Scenario& scenario, double delta,
                                const Progress& progress) {
  DependenceReport report;
  report.delta = delta;
  Scenario sc = scenario;
  sc.diagnostics.probes.clear();
  sc.diagnostics.decay.clear();
  sc.diagnostics.peakon_speed.reset();

  std::vector<RunOutcome> outcomes(2);
  std::vector<LagrangianState> starts = {build_initial_state(sc),
                                         perturbed_state(sc, delta)};
  parallel_for(2, worker_threads(), [&](std::size_t k) {
    outcomes[k] = run(starts[k], sc.params, sc.integrator, sc.diagnostics);
  });
  report.base_status = outcomes[0].status;
  report.perturbed_status = outcomes[1].status;

  const auto& a = outcomes[0].trace;
  const auto& b = outcomes[1].trace;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(a[k].time - b[k].time) > 1e-12) break;
    const double d = h1_distance(a[k].fields, b[k].fields);
    report.series.emplace_back(a[k].time, d);
    report.sup_distance = std::max(report.sup_distance, d);
  }
  if (!report.series.empty()) report.initial_distance = report.series.front().second;
  if (report.initial_distance > 0.0) {
    report.ratio = report.sup_distance / report.initial_distance;
  } else {
    report.exact_match = report.sup_distance == 0.0;
  }
  progress.line("[depend] delta = " + format_double(delta) +
                ": sup H1 distance " + format_double(report.sup_distance));
  return report;
}

std::string dependence_csv(const DependenceReport& report) {
  std::string out = "time,h1_distance\n";
  for (const auto& [t, d] : report.series) {
    out += format_double(t) + "," + format_double(d) + "\n";
  }
  return out;
}

std::vector<SweepEntry> run_sweep(const ConfigTree& base, const std::string& key,
                                  const std::vector<std::string>& values,
                                  const std::string& out_dir,
                                  const Progress& progress) {
  std::vector<Scenario> scenarios;
  std::vector<ConfigIssue> issues;
  for (const auto& v : values) {
    ConfigTree tree = base;
    tree.entries[key] = {v, 0};
    try {
      scenarios.push_back(build_scenario(tree));
    } catch (const ConfigError& e) {
      for (const auto& i : e.issues()) {
        issues.push_back({i.field, i.reason + " (sweep value `" + v + "`)"});
      }
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));

  std::vector<SweepEntry> entries(values.size());
  parallel_for(values.size(), worker_threads(), [&](std::size_t k) {
    auto& e = entries[k];
    e.value = values[k];
    e.directory = out_dir + "/sweep_" + std::to_string(k);
    Scenario sc = scenarios[k];
    sc.name += "@" + key + "=" + values[k];
    const ScenarioResult r = run_scenario(sc, e.directory, progress);
    e.status = r.outcome.status;
    e.code = r.code;
    e.final_time = r.outcome.status_time;
  });
  return entries;
}

std::string sweep_csv(const std::vector<SweepEntry>& entries) {
  std::string out = "value,directory,status,exit_code,final_time\n";
  for (const auto& e : entries) {
    out += e.value + "," + e.directory + "," + to_string(e.status) + "," +
           std::to_string(static_cast<int>(e.code)) + "," +
           format_double(e.final_time) + "\n";
  }
  return out;
}

}  // namespace peakflow
