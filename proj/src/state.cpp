#include "peakflow/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "peakflow/errors.hpp"

namespace peakflow {

void validate(const GridSpec& spec) {
  if (!(spec.half_width > 0.0) || !std::isfinite(spec.half_width)) {
    throw InvalidGrid("grid half width L must be positive, got " +
                      std::to_string(spec.half_width));
  }
  if (spec.cells < 4) {
    throw InvalidGrid("grid needs at least 4 cells, got " +
                      std::to_string(spec.cells));
  }
}

ModelParams ModelParams::camassa_holm(double kappa) {
  return {Family::CH, kappa, 2.0 * kappa, 1.0, 0.5};
}

ModelParams ModelParams::degasperis_procesi() {
  return {Family::DP, 0.0, 0.0, 1.5, 0.0};
}

InitialProfile peakon_profile(double c) {
  return {[c](double s) { return c * std::exp(-std::abs(s)); },
          // At the crest the right-sided slope -c is used: it is the a.e.
          // representative, so w^2 = c^2 there and the energy quadrature
          // carries no O(h) deficit.
          [c](double s) {
            const double v = c * std::exp(-std::abs(s));
            return s >= 0.0 ? -v : v;
          }};
}

InitialProfile gaussian_profile(double amplitude, double width) {
  return {[=](double s) {
            const double r = s / width;
            return amplitude * std::exp(-r * r);
          },
          [=](double s) {
            const double r = s / width;
            return -2.0 * amplitude * r / width * std::exp(-r * r);
          }};
}

InitialProfile breaking_profile(double amplitude) {
  return {[=](double s) { return -amplitude * s * std::exp(-s * s); },
          [=](double s) {
            return -amplitude * (1.0 - 2.0 * s * s) * std::exp(-s * s);
          }};
}

void validate(const LagrangianState& state) {
  const auto& ref = state.z;
  if (!state.xi.same_grid(ref) || !state.w.same_grid(ref) ||
      !state.y.same_grid(ref)) {
    throw InvalidGrid("state components do not share a grid");
  }
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (!std::isfinite(state.xi[i]) || !std::isfinite(state.z[i]) ||
        !std::isfinite(state.w[i]) || !std::isfinite(state.y[i])) {
      throw InvalidGrid("non-finite state value at node " + std::to_string(i));
    }
    if (!(state.y[i] > 0.0)) throw NonMonotoneDeformation(i);
  }
}

LagrangianState from_initial(const InitialProfile& u0, const GridSpec& spec) {
  validate(spec);
  const std::size_t n = spec.nodes();
  const double h = spec.spacing();
  GridFunction z(std::vector<double>(n), spec.origin(), h);
  GridFunction w = GridFunction::filled_like(z);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = z.node(i);
    z[i] = u0.value(s);
    w[i] = u0.derivative ? u0.derivative(s)
                         : (u0.value(s + h) - u0.value(s - h)) / (2.0 * h);
  }
  LagrangianState state{GridFunction::filled_like(z), z, w,
                        GridFunction::filled_like(z, 1.0), 0.0};
  validate(state);
  return state;
}

GridFunction centered_derivative(const GridFunction& f) {
  const std::size_t n = f.size();
  GridFunction d = GridFunction::filled_like(f);
  if (n < 2) return d;
  const double h = f.spacing;
  d[0] = (f[1] - f[0]) / h;
  d[n - 1] = (f[n - 1] - f[n - 2]) / h;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  return d;
}

LagrangianState from_samples(const GridFunction& u0,
                             const std::optional<GridFunction>& slope) {
  if (u0.size() < 5) throw InvalidGrid("need at least 4 cells of samples");
  GridFunction w = slope ? *slope : centered_derivative(u0);
  if (!w.same_grid(u0)) throw InvalidGrid("slope samples on a different grid");
  LagrangianState state{GridFunction::filled_like(u0), u0, std::move(w),
                        GridFunction::filled_like(u0, 1.0), 0.0};
  validate(state);
  return state;
}

double trapezoid(const GridFunction& f) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  double acc = 0.5 * (f[0] + f[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) acc += f[i];
  return acc * f.spacing;
}

double norm_L2(const GridFunction& f) {
  GridFunction sq = GridFunction::filled_like(f);
  for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
  return std::sqrt(trapezoid(sq));
}

double norm_Linf(const GridFunction& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double norm_Y(const GridFunction& f) { return norm_L2(f) + norm_Linf(f); }

double norm_X(const GridFunction& f) {
  const std::size_t n = f.size();
  double d2 = 0.0;
  double dmax = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = (f[i] - f[i - 1]) / f.spacing;
    d2 += d * d;
    dmax = std::max(dmax, std::abs(d));
  }
  return norm_L2(f) + std::sqrt(d2 * f.spacing) + norm_Linf(f) + dmax;
}

double check_admissible(const LagrangianState& state, double rho) {
  return *std::min_element(state.y.values.begin(), state.y.values.end()) - rho;
}

double constraint_residual(const LagrangianState& state) {
  const GridFunction dz = centered_derivative(state.z);
  double r = 0.0;
  for (std::size_t i = 0; i < dz.size(); ++i) {
    r = std::max(r, std::abs(dz[i] - state.w[i] * state.y[i]));
  }
  return r;
}

DeformedGrid to_deformed_grid(const LagrangianState& state) {
  const std::size_t n = state.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = state.position(i);
  return DeformedGrid(state.origin(), state.spacing(), std::move(x),
                      state.y.values);
}

}  // namespace peakflow
