#include "peakflow/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "peakflow/errors.hpp"

namespace peakflow {

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& i : issues) msg += "\n  " + i.field + ": " + i.reason;
        return msg;
      }()),
      issues_(std::move(issues)) {}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::optional<double> to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (...) {
    return std::nullopt;
  }
}

std::optional<long long> to_integer(const std::string& s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "name",
      "initial.type", "initial.c", "initial.amplitude", "initial.width",
      "initial.path",
      "model.family", "model.kappa", "model.coeff_a", "model.coeff_b",
      "model.coeff_c",
      "grid.L", "grid.N",
      "integrator.mode", "integrator.dt", "integrator.T",
      "integrator.picard_sweeps", "integrator.breakdown_rho",
      "integrator.max_slope_guard",
      "diagnostics.decay", "diagnostics.probes", "diagnostics.peakon_reference",
      "output.dir", "output.cadence",
      "converge.ladder",
      "depend.delta",
      "sweep.key", "sweep.values"};
  return keys;
}

std::string nearest_key(const std::string& key) {
  const auto& keys = known_config_keys();
  std::string best = keys.front();
  std::size_t best_d = edit_distance(lower(key), lower(best));
  for (const auto& k : keys) {
    const std::size_t d = edit_distance(lower(key), lower(k));
    if (d < best_d) {
      best = k;
      best_d = d;
    }
  }
  return best;
}

ConfigTree parse_config_tree(const std::string& text) {
  ConfigTree tree;
  std::vector<ConfigIssue> issues;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto comment = raw.find_first_of("#;");
    std::string line = trim(comment == std::string::npos
                                ? std::string_view(raw)
                                : std::string_view(raw).substr(0, comment));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') {
        issues.push_back({where, "unterminated section header"});
        continue;
      }
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back({where, "expected `key = value`"});
      continue;
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) {
      issues.push_back({where, "empty key"});
      continue;
    }
    const std::string full = section.empty() ? key : section + "." + key;
    if (tree.entries.count(full)) {
      issues.push_back({full, "duplicate key (" + where + ")"});
      continue;
    }
    tree.entries[full] = {value, line_no};
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return tree;
}

namespace {

class Builder {
 public:
  explicit Builder(const ConfigTree& tree) : tree_(tree) {}

  const std::string* get(const std::string& key) const {
    auto it = tree_.entries.find(key);
    return it == tree_.entries.end() ? nullptr : &it->second.value;
  }

  void number(const std::string& key, double& out) {
    if (const auto* v = get(key)) {
      if (auto d = to_double(*v); d && std::isfinite(*d)) {
        out = *d;
      } else {
        fail(key, "expected a finite number, got `" + *v + "`");
      }
    }
  }

  void integer(const std::string& key, long long& out) {
    if (const auto* v = get(key)) {
      if (auto d = to_integer(*v)) {
        out = *d;
      } else {
        fail(key, "expected an integer, got `" + *v + "`");
      }
    }
  }

  void fail(const std::string& key, std::string reason) {
    issues.push_back({key, std::move(reason)});
  }

  std::vector<ConfigIssue> issues;

 private:
  const ConfigTree& tree_;
};

}  // namespace

Scenario build_scenario(const ConfigTree& tree) {
  Builder b(tree);
  Scenario sc;
  const auto& known = known_config_keys();
  for (const auto& [key, entry] : tree.entries) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      b.fail(key, "unknown key (line " + std::to_string(entry.line) +
                      "); did you mean `" + nearest_key(key) + "`?");
    }
  }

  if (const auto* v = b.get("name")) sc.name = *v;

  // initial
  if (const auto* v = b.get("initial.type")) {
    const std::string t = lower(*v);
    if (t == "zero") sc.initial.kind = InitialKind::Zero;
    else if (t == "peakon") sc.initial.kind = InitialKind::Peakon;
    else if (t == "gaussian") sc.initial.kind = InitialKind::Gaussian;
    else if (t == "breaking") sc.initial.kind = InitialKind::Breaking;
    else if (t == "custom") sc.initial.kind = InitialKind::Custom;
    else b.fail("initial.type", "expected zero|peakon|gaussian|breaking|custom");
  }
  b.number("initial.c", sc.initial.c);
  b.number("initial.amplitude", sc.initial.amplitude);
  b.number("initial.width", sc.initial.width);
  if (const auto* v = b.get("initial.path")) sc.initial.path = *v;
  if (sc.initial.kind == InitialKind::Breaking && !b.get("initial.amplitude")) {
    sc.initial.amplitude = 3.0;
  }
  if (sc.initial.kind == InitialKind::Gaussian && !(sc.initial.width > 0.0)) {
    b.fail("initial.width", "must be positive");
  }
  if (sc.initial.kind == InitialKind::Custom && sc.initial.path.empty()) {
    b.fail("initial.path", "custom initial data needs a file path");
  }

  // model
  double kappa = 0.0;
  b.number("model.kappa", kappa);
  if (const auto* v = b.get("model.family")) {
    const std::string f = lower(*v);
    if (f == "ch") sc.params = ModelParams::camassa_holm(kappa);
    else if (f == "dp") sc.params = ModelParams::degasperis_procesi();
    else b.fail("model.family", "expected CH or DP");
  } else {
    sc.params = ModelParams::camassa_holm(kappa);
  }
  if (sc.params.family == Family::DP && kappa != 0.0) {
    b.fail("model.kappa", "the DP family has no kappa term");
  }
  b.number("model.coeff_a", sc.params.coeff_a);
  b.number("model.coeff_b", sc.params.coeff_b);
  b.number("model.coeff_c", sc.params.coeff_c);

  // grid
  b.number("grid.L", sc.grid.half_width);
  long long cells = static_cast<long long>(sc.grid.cells);
  b.integer("grid.N", cells);
  if (!(sc.grid.half_width > 0.0)) b.fail("grid.L", "must be positive");
  if (cells < 4) {
    b.fail("grid.N", "must be at least 4, got " + std::to_string(cells));
  } else {
    sc.grid.cells = static_cast<std::size_t>(cells);
  }

  // integrator
  if (const auto* v = b.get("integrator.mode")) {
    const std::string m = lower(*v);
    if (m == "rk4") sc.integrator.mode = IntegratorMode::RK4;
    else if (m == "picard") sc.integrator.mode = IntegratorMode::Picard;
    else b.fail("integrator.mode", "expected rk4 or picard");
  }
  b.number("integrator.dt", sc.integrator.dt);
  b.number("integrator.T", sc.integrator.horizon);
  long long sweeps = sc.integrator.picard_sweeps;
  b.integer("integrator.picard_sweeps", sweeps);
  sc.integrator.picard_sweeps = static_cast<int>(sweeps);
  b.number("integrator.breakdown_rho", sc.integrator.breakdown_rho);
  b.number("integrator.max_slope_guard", sc.integrator.max_slope_guard);
  b.number("output.cadence", sc.integrator.snapshot_cadence);
  try {
    validate(sc.integrator);
  } catch (const ConfigError& e) {
    for (const auto& i : e.issues()) b.issues.push_back(i);
  }

  // diagnostics
  if (const auto* v = b.get("diagnostics.decay")) {
    for (const auto& item : split(*v, ',')) {
      const auto parts = split(item, ':');
      std::optional<double> theta;
      std::optional<long long> m;
      if (parts.size() == 2) {
        theta = to_double(parts[0]);
        m = to_integer(parts[1]);
      }
      if (!theta || !m || !(*theta > 0.0 && *theta < 1.0) || *m < 1) {
        b.fail("diagnostics.decay",
               "expected theta:m with theta in (0,1) and m >= 1, got `" +
                   item + "`");
        continue;
      }
      sc.diagnostics.decay.push_back({*theta, static_cast<int>(*m)});
    }
  }
  if (const auto* v = b.get("diagnostics.probes")) {
    for (const auto& item : split(*v, ',')) {
      const auto parts = split(item, ':');
      std::optional<double> a, c;
      std::optional<long long> order;
      if (parts.size() == 4) {
        a = to_double(parts[1]);
        c = to_double(parts[2]);
        order = to_integer(parts[3]);
      }
      if (!a || !c || !order || !(*a < *c) || (*order != 2 && *order != 3)) {
        b.fail("diagnostics.probes",
               "expected id:left:right:order with left < right and order 2 "
               "or 3, got `" + item + "`");
        continue;
      }
      sc.diagnostics.probes.push_back(
          {parts[0], *a, *c, static_cast<int>(*order)});
    }
  }
  std::string reference = "auto";
  if (const auto* v = b.get("diagnostics.peakon_reference")) {
    reference = lower(*v);
    if (reference != "auto" && reference != "off") {
      b.fail("diagnostics.peakon_reference", "expected auto or off");
    }
  }
  if (reference == "auto" && sc.initial.kind == InitialKind::Peakon &&
      sc.params.coeff_a == 0.0) {
    sc.diagnostics.peakon_speed = sc.initial.c;
  }

  if (const auto* v = b.get("output.dir")) sc.output_dir = *v;

  if (const auto* v = b.get("converge.ladder")) {
    for (const auto& item : split(*v, ',')) {
      const auto parts = split(item, ':');
      std::optional<long long> n;
      std::optional<double> dt;
      if (parts.size() == 2) {
        n = to_integer(parts[0]);
        dt = to_double(parts[1]);
      }
      if (!n || !dt || *n < 4 || !(*dt > 0.0)) {
        b.fail("converge.ladder",
               "expected N:dt with N >= 4 and dt > 0, got `" + item + "`");
        continue;
      }
      sc.ladder.push_back({static_cast<std::size_t>(*n), *dt});
    }
    for (std::size_t k = 1; k < sc.ladder.size(); ++k) {
      if (sc.ladder[k].cells < sc.ladder[k - 1].cells ||
          sc.ladder[k].dt > sc.ladder[k - 1].dt ||
          (sc.ladder[k].cells == sc.ladder[k - 1].cells &&
           sc.ladder[k].dt == sc.ladder[k - 1].dt)) {
        b.fail("converge.ladder", "rungs must be sorted by refinement");
        break;
      }
    }
  }
  b.number("depend.delta", sc.delta);
  if (!(sc.delta >= 0.0)) b.fail("depend.delta", "must be nonnegative");
  if (const auto* v = b.get("sweep.key")) {
    sc.sweep_key = *v;
    const auto& keys = known_config_keys();
    if (std::find(keys.begin(), keys.end(), *v) == keys.end() ||
        v->rfind("sweep.", 0) == 0) {
      b.fail("sweep.key", "`" + *v + "` is not a sweepable key; nearest is `" +
                              nearest_key(*v) + "`");
    }
  }
  if (const auto* v = b.get("sweep.values")) sc.sweep_values = split(*v, ',');

  if (!b.issues.empty()) throw ConfigError(std::move(b.issues));
  return sc;
}

Scenario parse_config(const std::string& text) {
  return build_scenario(parse_config_tree(text));
}

LagrangianState load_custom_initial(const std::string& path,
                                    const GridSpec& grid) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open custom initial data `" + path + "`");
  std::vector<double> xs, us, ds;
  bool has_slope = true;
  std::string raw;
  int line_no = 0;
  std::vector<ConfigIssue> issues;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto comment = raw.find('#');
    std::string line = trim(comment == std::string::npos
                                ? std::string_view(raw)
                                : std::string_view(raw).substr(0, comment));
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream cols(line);
    std::vector<double> row;
    std::string tok;
    bool ok = true;
    while (cols >> tok) {
      auto v = to_double(tok);
      if (!v || !std::isfinite(*v)) ok = false;
      else row.push_back(*v);
    }
    if (!ok || row.size() < 2 || row.size() > 3) {
      issues.push_back({"initial.path", path + ":" + std::to_string(line_no) +
                                            ": expected 2 or 3 numeric columns"});
      continue;
    }
    if (!xs.empty() && !(row[0] > xs.back())) {
      issues.push_back({"initial.path", path + ":" + std::to_string(line_no) +
                                            ": x must be strictly increasing"});
    }
    xs.push_back(row[0]);
    us.push_back(row[1]);
    if (row.size() == 3) ds.push_back(row[2]);
    else has_slope = false;
  }
  if (xs.size() < 2) issues.push_back({"initial.path", "need at least two rows"});
  if (!issues.empty()) throw ConfigError(std::move(issues));
  has_slope = has_slope && ds.size() == xs.size();

  validate(grid);
  GridFunction u(std::vector<double>(grid.nodes()), grid.origin(),
                 grid.spacing());
  GridFunction du = GridFunction::filled_like(u);
  // Monotone linear resampling; zero outside the tabulated range.
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double s = u.node(i);
    if (s < xs.front() || s > xs.back()) continue;
    auto it = std::upper_bound(xs.begin(), xs.end(), s);
    std::size_t k = static_cast<std::size_t>(it - xs.begin());
    k = k == 0 ? 0 : std::min(k - 1, xs.size() - 2);
    const double lambda = (s - xs[k]) / (xs[k + 1] - xs[k]);
    u[i] = us[k] + lambda * (us[k + 1] - us[k]);
    if (has_slope) du[i] = ds[k] + lambda * (ds[k + 1] - ds[k]);
  }
  return from_samples(u, has_slope ? std::optional<GridFunction>(du)
                                   : std::nullopt);
}

LagrangianState build_initial_state(const Scenario& sc) {
  const auto& init = sc.initial;
  switch (init.kind) {
    case InitialKind::Zero:
      return from_initial({[](double) { return 0.0; }, [](double) { return 0.0; }},
                          sc.grid);
    case InitialKind::Peakon:
      return from_initial(peakon_profile(init.c), sc.grid);
    case InitialKind::Gaussian:
      return from_initial(gaussian_profile(init.amplitude, init.width), sc.grid);
    case InitialKind::Breaking:
      return from_initial(breaking_profile(init.amplitude), sc.grid);
    case InitialKind::Custom:
      return load_custom_initial(init.path, sc.grid);
  }
  throw Error("unknown initial data kind");
}

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::Zero: return "zero";
    case InitialKind::Peakon: return "peakon";
    case InitialKind::Gaussian: return "gaussian";
    case InitialKind::Breaking: return "breaking";
    case InitialKind::Custom: return "custom";
  }
  return "unknown";
}

std::string to_string(Family family) {
  return family == Family::CH ? "CH" : "DP";
}

std::string to_string(IntegratorMode mode) {
  return mode == IntegratorMode::RK4 ? "rk4" : "picard";
}

}  // namespace peakflow
