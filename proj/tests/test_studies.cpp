#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "peakflow/errors.hpp"
#include "peakflow/io.hpp"
#include "peakflow/studies.hpp"

using namespace peakflow;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("peakflow_" + name);
  fs::remove_all(p);
  return p;
}

Scenario config(const std::string& text) { return parse_config(text); }

}  // namespace

TEST_CASE("exit codes") {
  CHECK(static_cast<int>(exit_code(RunStatus::Completed)) == 0);
  CHECK(static_cast<int>(exit_code(RunStatus::Breakdown)) == 3);
  CHECK(static_cast<int>(exit_code(RunStatus::Diverged)) == 4);
  CHECK(static_cast<int>(ExitCode::ConfigError) == 2);
  CHECK(static_cast<int>(ExitCode::Io) == 5);
}

TEST_CASE("parallel_for visits every index and rethrows") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 7) throw Error("boom");
                               }),
                  Error);
  CHECK(worker_threads() >= 1);
}

TEST_CASE("scenario runs") {
  SUBCASE("zero data") {
    const fs::path dir = scratch("zero_run");
    const Scenario sc = config("[initial]\ntype = zero\n[grid]\nL = 5\nN = 64\n"
                               "[integrator]\ndt = 0.01\n");
    const ScenarioResult r = run_scenario(sc, dir.string());
    CHECK(r.code == ExitCode::Completed);
    CHECK(r.outcome.trace.size() == 11);
    for (const auto& rec : r.outcome.trace) {
      for (double v : rec.fields.u) CHECK(v == 0.0);
    }
    fs::remove_all(dir);
  }
  SUBCASE("breaking data") {
    const fs::path dir = scratch("breaking_run");
    const Scenario sc = config("[initial]\ntype = breaking\n[grid]\nL = 10\nN = 512\n"
                               "[integrator]\nT = 5\n");
    const ScenarioResult r = run_scenario(sc, dir.string());
    CHECK(r.code == ExitCode::Breakdown);
    CHECK(r.outcome.trace.back().diagnostics.min_jacobian <= sc.integrator.breakdown_rho);
    fs::remove_all(dir);
  }
  SUBCASE("identical configs give identical files") {
    const Scenario sc = config("[initial]\ntype = gaussian\n[grid]\nL = 8\nN = 200\n"
                               "[integrator]\ndt = 0.01\nT = 0.2\n[diagnostics]\n"
                               "decay = 0.9:50\n");
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    run_scenario(sc, a.string());
    run_scenario(sc, b.string());
    CHECK(slurp(a / "snapshots.ndjson") == slurp(b / "snapshots.ndjson"));
    CHECK(slurp(a / "diagnostics.csv") == slurp(b / "diagnostics.csv"));
    fs::remove_all(a);
    fs::remove_all(b);
  }
}

TEST_CASE("distances between snapshots") {
  EulerianFields a{{0.0, 0.5, 5}, {0, 1, 1, 1, 0}, {0, 0, 0, 0, 0}, 0.0};
  EulerianFields b{{0.5, 0.5, 5}, {1, 1, 1, 0, 0}, {0, 0, 0, 0, 1}, 0.0};
  // overlap is x = 0.5 .. 2.0 where u agrees
  CHECK(l2_distance(a, b) == 0.0);
  CHECK(h1_distance(a, b) == doctest::Approx(0.0));
  EulerianFields c = a;
  c.ux = {2, 2, 2, 2, 2};
  CHECK(h1_distance(a, c) == doctest::Approx(2.0 * std::sqrt(2.0)));
  EulerianFields off{{0.25, 0.5, 5}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, 0.0};
  CHECK_THROWS_AS(l2_distance(a, off), InvalidGrid);
}

TEST_CASE("convergence ladder") {
  Scenario sc = config("[initial]\ntype = gaussian\n[grid]\nL = 10\n[integrator]\nT = 0.5\n");
  SUBCASE("single rung has no order") {
    const ConvergenceReport r = run_convergence(sc, {{256, 0.01}});
    REQUIRE(r.rungs.size() == 1);
    CHECK(r.orders.empty());
    CHECK(*r.rungs[0].error_vs_finest == 0.0);
  }
  SUBCASE("temporal refinement on a fixed grid is fourth order") {
    const ConvergenceReport r =
        run_convergence(sc, {{400, 0.1}, {400, 0.05}, {400, 0.025}});
    REQUIRE(r.orders.size() == 1);
    CHECK(r.orders[0] == doctest::Approx(4.0).epsilon(0.1));
    const std::string csv = convergence_csv(r);
    CHECK(csv.rfind("N,dt,status,final_time,error_vs_finest,observed_order\n", 0) == 0);
  }
  SUBCASE("spatial refinement on smooth data is second order") {
    const ConvergenceReport r =
        run_convergence(sc, {{200, 0.005}, {400, 0.005}, {800, 0.005}});
    REQUIRE(r.orders.size() == 1);
    CHECK(r.orders[0] >= 1.8);
  }
}

TEST_CASE("continuous dependence") {
  Scenario sc = config("[initial]\ntype = peakon\n[grid]\nL = 20\nN = 1024\n"
                       "[integrator]\ndt = 0.004\nT = 0.2\n[output]\ncadence = 0.05\n");
  SUBCASE("zero perturbation reproduces the base run") {
    const DependenceReport r = run_dependence(sc, 0.0);
    CHECK(r.exact_match);
    CHECK_FALSE(r.ratio.has_value());
    CHECK(r.series.size() == 5);
  }
  SUBCASE("small perturbation stays small") {
    const DependenceReport r = run_dependence(sc, 0.01);
    REQUIRE(r.ratio.has_value());
    CHECK(r.initial_distance == doctest::Approx(0.01 * std::sqrt(2.0)).epsilon(0.05));
    CHECK(*r.ratio >= 1.0);
    CHECK(dependence_csv(r).rfind("time,h1_distance\n", 0) == 0);
  }
  SUBCASE("perturbation targets") {
    CHECK(perturbed(sc, 0.1).initial.c == doctest::Approx(1.1));
    Scenario z = sc;
    z.initial.kind = InitialKind::Zero;
    CHECK_THROWS_AS(perturbed(z, 0.1), ConfigError);
  }
}

TEST_CASE("parameter sweep") {
  const ConfigTree base = parse_config_tree(
      "[initial]\ntype = gaussian\n[grid]\nL = 8\nN = 128\n[integrator]\nT = 0.1\ndt = 0.01\n");
  const fs::path dir = scratch("sweep");
  const auto entries = run_sweep(base, "initial.amplitude", {"0.5", "1.0"}, dir.string());
  REQUIRE(entries.size() == 2);
  CHECK(entries[1].status == RunStatus::Completed);
  CHECK(fs::exists(fs::path(entries[0].directory) / "snapshots.ndjson"));
  CHECK(sweep_csv(entries).find("0.5,") != std::string::npos);
  CHECK_THROWS_AS(run_sweep(base, "grid.N", {"64", "zero"}, dir.string()), ConfigError);
  fs::remove_all(dir);
}
