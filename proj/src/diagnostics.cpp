#include "peakflow/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "peakflow/errors.hpp"

namespace peakflow {

double energy(const LagrangianState& state) {
  // Node-sampled y keeps the trapezoid's fast convergence on smooth data. At
  // a crest y is one-sided, so peakon traces drift by O(h).
  GridFunction density = GridFunction::filled_like(state.z);
  for (std::size_t i = 0; i < density.size(); ++i) {
    density[i] =
        (state.z[i] * state.z[i] + state.w[i] * state.w[i]) * state.y[i];
  }
  return trapezoid(density);
}

double decay_weight(double x, double theta, int m) noexcept {
  if (x <= 0.0) return 1.0;
  return std::exp(theta * std::min(x, static_cast<double>(m)));
}

double decay_norm(const EulerianFields& fields, double theta, int m) {
  double sup = 0.0;
  for (std::size_t j = 0; j < fields.axis.count; ++j) {
    const double x = fields.axis.at(j);
    if (x < 0.0) continue;
    sup = std::max(sup, decay_weight(x, theta, m) *
                            (std::abs(fields.u[j]) + std::abs(fields.ux[j])));
  }
  return sup;
}

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 4> kGlNodes = {
    0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
    0.9602898564975363};
constexpr std::array<double, 4> kGlWeights = {
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
    0.1012285362903763};

template <typename F>
double gauss_legendre(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
    acc += kGlWeights[k] *
           (f(mid - half * kGlNodes[k]) + f(mid + half * kGlNodes[k]));
  }
  return acc * half;
}

// Composite rule with panels no wider than `panel` on [a, b].
template <typename F>
double composite(F&& f, double a, double b, double panel) {
  if (!(b > a)) return 0.0;
  const int count = std::max(1, static_cast<int>(std::ceil((b - a) / panel)));
  const double step = (b - a) / count;
  double acc = 0.0;
  for (int k = 0; k < count; ++k) {
    acc += gauss_legendre(f, a + k * step, a + (k + 1) * step);
  }
  return acc;
}

}  // namespace

double weight_kernel_bound_check(double theta, int m,
                                 std::span<const double> sample_xs) {
  constexpr double kTail = 60.0;   // e^{-60} is below double resolution here
  constexpr double kPanel = 0.25;
  double worst = 0.0;
  for (const double x : sample_xs) {
    auto integrand = [&](double y) {
      return std::exp(-std::abs(x - y)) / decay_weight(y, theta, m);
    };
    std::vector<double> cuts = {x - kTail, x + kTail, 0.0,
                                static_cast<double>(m), x};
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = std::max(cuts[k], x - kTail);
      const double b = std::min(cuts[k + 1], x + kTail);
      total += composite(integrand, a, b, kPanel);
    }
    worst = std::max(worst, decay_weight(x, theta, m) * total);
  }
  return worst;
}

namespace {

struct WindowNodes {
  std::size_t first = 0;
  std::size_t last = 0;  // exclusive
};

WindowNodes window_nodes(const EulerianFields& fields, double x_left,
                         double x_right) {
  const auto& axis = fields.axis;
  if (axis.count == 0 || !(x_left < x_right) || x_left < axis.at(0) ||
      x_right > axis.at(axis.count - 1)) {
    throw OutOfRange("probe window [" + std::to_string(x_left) + ", " +
                     std::to_string(x_right) +
                     "] is not inside the reconstructed range");
  }
  // Window ends within a rounding error of a node include that node.
  constexpr double kSnap = 1e-9;
  WindowNodes nodes;
  nodes.first = static_cast<std::size_t>(
      std::ceil((x_left - axis.origin) / axis.spacing - kSnap));
  nodes.last = static_cast<std::size_t>(
                   std::floor((x_right - axis.origin) / axis.spacing + kSnap)) +
               1;
  nodes.last = std::min(nodes.last, axis.count);
  return nodes;
}

}  // namespace

double regularity_probe(const EulerianFields& fields, double x_left,
                        double x_right, int order) {
  if (order != 2 && order != 3) {
    throw Error("regularity probe order must be 2 or 3");
  }
  const WindowNodes nodes = window_nodes(fields, x_left, x_right);
  const double h = fields.axis.spacing;
  const auto& u = fields.u;
  const std::size_t span = static_cast<std::size_t>(order);
  double acc = 0.0;
  for (std::size_t j = nodes.first; j + span < nodes.last; ++j) {
    const double diff =
        order == 2 ? u[j + 2] - 2.0 * u[j + 1] + u[j]
                   : u[j + 3] - 3.0 * u[j + 2] + 3.0 * u[j + 1] - u[j];
    const double quotient = diff / std::pow(h, order);
    acc += quotient * quotient * h;
  }
  return std::sqrt(acc);
}

double holder_probe(const EulerianFields& fields, double x_left,
                    double x_right, double theta) {
  const WindowNodes nodes = window_nodes(fields, x_left, x_right);
  double sup = 0.0;
  for (std::size_t j = nodes.first; j < nodes.last; ++j) {
    for (std::size_t k = j + 1; k < nodes.last; ++k) {
      const double dx = fields.axis.at(k) - fields.axis.at(j);
      sup = std::max(sup, std::abs(fields.ux[k] - fields.ux[j]) /
                              std::pow(dx, theta));
    }
  }
  return sup;
}

double exact_peakon(double x, double c, double t) noexcept {
  return c * std::exp(-std::abs(x - c * t));
}

double exact_peakon_slope(double x, double c, double t) noexcept {
  const double r = x - c * t;
  if (r == 0.0) return 0.0;
  const double v = c * std::exp(-std::abs(r));
  return r > 0.0 ? -v : v;
}

double trapezoid(std::span<const double> f, double spacing) {
  if (f.size() < 2) return 0.0;
  double acc = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) acc += f[i];
  return acc * spacing;
}

PeakonError peakon_error(const EulerianFields& fields, double c, double t) {
  const std::size_t n = fields.axis.count;
  std::vector<double> du(n), dux(n), eu(n), eux(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = fields.axis.at(j);
    const double u = exact_peakon(x, c, t);
    const double ux = exact_peakon_slope(x, c, t);
    du[j] = (fields.u[j] - u) * (fields.u[j] - u);
    dux[j] = (fields.ux[j] - ux) * (fields.ux[j] - ux);
    eu[j] = u * u;
    eux[j] = ux * ux;
  }
  const double h = fields.axis.spacing;
  PeakonError err;
  const double e_u = trapezoid(du, h);
  const double e_ux = trapezoid(dux, h);
  const double ref_u = trapezoid(eu, h);
  const double ref_ux = trapezoid(eux, h);
  err.l2 = std::sqrt(e_u);
  err.h1 = std::sqrt(e_u + e_ux);
  err.l2_relative = ref_u > 0.0 ? err.l2 / std::sqrt(ref_u) : err.l2;
  err.h1_relative =
      ref_u + ref_ux > 0.0 ? err.h1 / std::sqrt(ref_u + ref_ux) : err.h1;
  return err;
}

DiagnosticsRecord compute_diagnostics(const LagrangianState& state,
                                      const EulerianFields& fields,
                                      const DiagnosticsPlan& plan) {
  DiagnosticsRecord rec;
  rec.time = state.time;
  rec.energy = energy(state);
  rec.min_jacobian =
      *std::min_element(state.y.values.begin(), state.y.values.end());
  rec.max_slope = norm_Linf(state.w);
  rec.constraint_residual = constraint_residual(state);
  for (const auto& spec : plan.decay) {
    rec.decay.push_back(
        {spec.theta, spec.m, decay_norm(fields, spec.theta, spec.m)});
  }
  if (!rec.decay.empty()) rec.decay_norm = rec.decay.front().value;
  if (plan.peakon_speed) {
    const PeakonError err = peakon_error(fields, *plan.peakon_speed, state.time);
    rec.peakon_l2_error = err.l2_relative;
    rec.peakon_h1_error = err.h1_relative;
  }
  for (const auto& probe : plan.probes) {
    const auto [a, b] =
        advect_window(state, probe.label_left, probe.label_right);
    rec.regularity_probes.push_back(
        {probe.id, probe.order, a, b,
         regularity_probe(fields, a, b, probe.order)});
  }
  return rec;
}

SnapshotRecord make_snapshot(const LagrangianState& state,
                             const DiagnosticsPlan& plan) {
  EulerianFields fields = reconstruct(state, default_axis(state));
  DiagnosticsRecord diag = compute_diagnostics(state, fields, plan);
  return {state.time, std::move(fields), std::move(diag)};
}

}  // namespace peakflow
