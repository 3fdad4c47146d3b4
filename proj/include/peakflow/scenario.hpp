#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "peakflow/diagnostics.hpp"
#include "peakflow/integrator.hpp"
#include "peakflow/state.hpp"

namespace peakflow {

enum class InitialKind { Zero, Peakon, Gaussian, Breaking, Custom };

struct InitialDataSpec {
  InitialKind kind = InitialKind::Peakon;
  double c = 1.0;          // peakon speed
  double amplitude = 1.0;  // gaussian / breaking
  double width = 1.0;      // gaussian
  std::string path;        // custom: columns x, u[, u']
};

struct LadderRung {
  std::size_t cells = 0;
  double dt = 0.0;
};

/// Everything needed to run, study and record one simulation setup.
struct Scenario {
  std::string name = "scenario";
  InitialDataSpec initial;
  ModelParams params = ModelParams::camassa_holm(0.0);
  GridSpec grid;
  IntegratorConfig integrator;
  DiagnosticsPlan diagnostics;
  std::string output_dir = "out";
  std::vector<LadderRung> ladder;
  double delta = 0.01;
  std::string sweep_key;
  std::vector<std::string> sweep_values;
};

/// Flat `section.key -> value` view of a config file, with source lines.
struct ConfigTree {
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, Entry> entries;
};

/// Parse `key = value` lines grouped under `[section]` headers. `#` and `;`
/// start comments. Keys before the first header belong to the top level.
ConfigTree parse_config_tree(const std::string& text);

/// Validate a tree into a Scenario, reporting every problem at once.
Scenario build_scenario(const ConfigTree& tree);

/// parse_config_tree followed by build_scenario.
Scenario parse_config(const std::string& text);

/// Every key the parser accepts, as `section.key`.
const std::vector<std::string>& known_config_keys();

/// Closest known key by edit distance.
std::string nearest_key(const std::string& key);

/// Initial state for the scenario; custom files are read and validated here.
LagrangianState build_initial_state(const Scenario& scenario);

/// Read a custom profile: whitespace- or comma-separated columns x, u and an
/// optional u', with strictly increasing x. Resampled linearly onto the grid.
LagrangianState load_custom_initial(const std::string& path,
                                    const GridSpec& grid);

std::string to_string(InitialKind kind);
std::string to_string(Family family);
std::string to_string(IntegratorMode mode);

}  // namespace peakflow
