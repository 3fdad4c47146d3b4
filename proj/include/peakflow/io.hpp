#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "peakflow/diagnostics.hpp"
#include "peakflow/integrator.hpp"
#include "peakflow/scenario.hpp"

namespace peakflow {

inline constexpr int kSnapshotSchemaVersion = 1;

nlohmann::json to_json(const Scenario& scenario);
nlohmann::json to_json(const DiagnosticsRecord& record);

/// First line of every snapshot stream: config echo plus grid metadata.
nlohmann::json manifest_record(const Scenario& scenario);
nlohmann::json snapshot_record(const SnapshotRecord& snapshot);
/// Last line: how the run ended.
nlohmann::json summary_record(RunStatus status, double time);

/// CSV header and one row for the scalar diagnostics time series. The
/// column set depends on the diagnostics plan, so both take it.
std::string diagnostics_csv_header(const DiagnosticsPlan& plan);
std::string diagnostics_csv_row(const DiagnosticsRecord& record,
                                const DiagnosticsPlan& plan);

/// Shortest round-trip text for a double.
std::string format_double(double v);

/// Owns `snapshots.ndjson` and `diagnostics.csv` in one output directory.
/// Throws IoError naming the path on any failure.
class RunWriter {
 public:
  RunWriter(const std::string& directory, const Scenario& scenario);
  void write(const SnapshotRecord& snapshot);
  void finish(RunStatus status, double time);

 private:
  std::string dir_;
  DiagnosticsPlan plan_;
  std::ofstream ndjson_;
  std::ofstream csv_;
  void check(const std::ofstream& out, const std::string& name) const;
};

}  // namespace peakflow
