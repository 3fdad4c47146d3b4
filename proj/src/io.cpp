#include "peakflow/io.hpp"

#include <cstdio>
#include <filesystem>

#include "peakflow/errors.hpp"

namespace peakflow {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  // %.17g round-trips every double.
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const Scenario& sc) {
  json init = {{"type", to_string(sc.initial.kind)}};
  switch (sc.initial.kind) {
    case InitialKind::Peakon: init["c"] = sc.initial.c; break;
    case InitialKind::Gaussian:
      init["amplitude"] = sc.initial.amplitude;
      init["width"] = sc.initial.width;
      break;
    case InitialKind::Breaking: init["amplitude"] = sc.initial.amplitude; break;
    case InitialKind::Custom: init["path"] = sc.initial.path; break;
    case InitialKind::Zero: break;
  }
  json decay = json::array();
  for (const auto& d : sc.diagnostics.decay) {
    decay.push_back({{"theta", d.theta}, {"m", d.m}});
  }
  json probes = json::array();
  for (const auto& p : sc.diagnostics.probes) {
    probes.push_back({{"id", p.id},
                      {"label_left", p.label_left},
                      {"label_right", p.label_right},
                      {"order", p.order}});
  }
  return {
      {"name", sc.name},
      {"initial", init},
      {"model",
       {{"family", to_string(sc.params.family)},
        {"kappa", sc.params.kappa},
        {"coeff_a", sc.params.coeff_a},
        {"coeff_b", sc.params.coeff_b},
        {"coeff_c", sc.params.coeff_c}}},
      {"grid", {{"L", sc.grid.half_width}, {"N", sc.grid.cells}}},
      {"integrator",
       {{"mode", to_string(sc.integrator.mode)},
        {"dt", sc.integrator.dt},
        {"T", sc.integrator.horizon},
        {"picard_sweeps", sc.integrator.picard_sweeps},
        {"breakdown_rho", sc.integrator.breakdown_rho},
        {"max_slope_guard", sc.integrator.max_slope_guard}}},
      {"diagnostics",
       {{"decay", decay},
        {"probes", probes},
        {"peakon_speed", sc.diagnostics.peakon_speed
                             ? json(*sc.diagnostics.peakon_speed)
                             : json(nullptr)}}},
      {"output", {{"cadence", sc.integrator.snapshot_cadence}}},
  };
}

json to_json(const DiagnosticsRecord& r) {
  json decay = json::array();
  for (const auto& d : r.decay) {
    decay.push_back({{"theta", d.theta}, {"m", d.m}, {"value", d.value}});
  }
  json probes = json::array();
  for (const auto& p : r.regularity_probes) {
    probes.push_back({{"id", p.id},
                      {"order", p.order},
                      {"x_left", p.x_left},
                      {"x_right", p.x_right},
                      {"value", p.value}});
  }
  auto opt = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  return {{"time", r.time},
          {"energy", r.energy},
          {"min_jacobian", r.min_jacobian},
          {"max_slope", r.max_slope},
          {"constraint_residual", r.constraint_residual},
          {"decay_norm", opt(r.decay_norm)},
          {"decay", decay},
          {"peakon_l2_error", opt(r.peakon_l2_error)},
          {"peakon_h1_error", opt(r.peakon_h1_error)},
          {"regularity_probes", probes}};
}

json manifest_record(const Scenario& sc) {
  return {{"record", "manifest"},
          {"schema_version", kSnapshotSchemaVersion},
          {"scenario", to_json(sc)},
          {"label_grid",
           {{"origin", sc.grid.origin()},
            {"spacing", sc.grid.spacing()},
            {"count", sc.grid.nodes()}}}};
}

json snapshot_record(const SnapshotRecord& s) {
  return {{"record", "snapshot"},
          {"schema_version", kSnapshotSchemaVersion},
          {"time", s.time},
          {"x_grid",
           {{"origin", s.fields.axis.origin},
            {"spacing", s.fields.axis.spacing},
            {"count", s.fields.axis.count}}},
          {"u", s.fields.u},
          {"ux", s.fields.ux},
          {"diagnostics", to_json(s.diagnostics)}};
}

json summary_record(RunStatus status, double time) {
  return {{"record", "summary"},
          {"schema_version", kSnapshotSchemaVersion},
          {"status", to_string(status)},
          {"time", time}};
}

std::string diagnostics_csv_header(const DiagnosticsPlan& plan) {
  std::string h = "time,energy,min_jacobian,max_slope,constraint_residual";
  for (const auto& d : plan.decay) {
    h += ",decay_" + format_double(d.theta) + "_" + std::to_string(d.m);
  }
  if (plan.peakon_speed) h += ",peakon_l2_error,peakon_h1_error";
  for (const auto& p : plan.probes) h += ",probe_" + p.id;
  return h;
}

std::string diagnostics_csv_row(const DiagnosticsRecord& r,
                                const DiagnosticsPlan& plan) {
  std::string row = format_double(r.time) + "," + format_double(r.energy) +
                    "," + format_double(r.min_jacobian) + "," +
                    format_double(r.max_slope) + "," +
                    format_double(r.constraint_residual);
  for (std::size_t k = 0; k < plan.decay.size(); ++k) {
    row += "," + (k < r.decay.size() ? format_double(r.decay[k].value) : "");
  }
  if (plan.peakon_speed) {
    row += "," + (r.peakon_l2_error ? format_double(*r.peakon_l2_error) : "");
    row += "," + (r.peakon_h1_error ? format_double(*r.peakon_h1_error) : "");
  }
  for (std::size_t k = 0; k < plan.probes.size(); ++k) {
    row += "," + (k < r.regularity_probes.size()
                      ? format_double(r.regularity_probes[k].value)
                      : "");
  }
  return row;
}

RunWriter::RunWriter(const std::string& directory, const Scenario& scenario)
    : dir_(directory), plan_(scenario.diagnostics) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create output directory `" + dir_ + "`: " + ec.message());
  const std::string nd = dir_ + "/snapshots.ndjson";
  const std::string cs = dir_ + "/diagnostics.csv";
  ndjson_.open(nd, std::ios::out | std::ios::trunc);
  if (!ndjson_) throw IoError("cannot open `" + nd + "` for writing");
  csv_.open(cs, std::ios::out | std::ios::trunc);
  if (!csv_) throw IoError("cannot open `" + cs + "` for writing");
  ndjson_ << manifest_record(scenario).dump() << '\n';
  csv_ << diagnostics_csv_header(plan_) << '\n';
  check(ndjson_, "snapshots.ndjson");
  check(csv_, "diagnostics.csv");
}

void RunWriter::write(const SnapshotRecord& snapshot) {
  ndjson_ << snapshot_record(snapshot).dump() << '\n';
  csv_ << diagnostics_csv_row(snapshot.diagnostics, plan_) << '\n';
  check(ndjson_, "snapshots.ndjson");
  check(csv_, "diagnostics.csv");
}

void RunWriter::finish(RunStatus status, double time) {
  ndjson_ << summary_record(status, time).dump() << '\n';
  ndjson_.flush();
  csv_.flush();
  check(ndjson_, "snapshots.ndjson");
  check(csv_, "diagnostics.csv");
}

void RunWriter::check(const std::ofstream& out, const std::string& name) const {
  if (!out) throw IoError("write failed for `" + dir_ + "/" + name + "`");
}

}  // namespace peakflow
