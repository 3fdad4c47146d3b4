#include "peakflow/eulerian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "peakflow/errors.hpp"

namespace peakflow {

std::vector<double> UniformAxis::points() const {
  std::vector<double> p(count);
  for (std::size_t j = 0; j < count; ++j) p[j] = at(j);
  return p;
}

DeformedGrid deformation(const LagrangianState& state) {
  return to_deformed_grid(state);
}

namespace {

// Index k with x[k] <= q <= x[k+1]; requires x.front() <= q <= x.back().
std::size_t bracket(std::span<const double> x, double q) {
  auto it = std::upper_bound(x.begin(), x.end(), q);
  std::size_t k = static_cast<std::size_t>(it - x.begin());
  if (k == 0) return 0;
  return std::min(k - 1, x.size() - 2);
}

void check_range(std::span<const double> x, double q, const char* what) {
  if (!(q >= x.front() && q <= x.back())) {
    throw OutOfRange(std::string(what) + " query " + std::to_string(q) +
                     " outside [" + std::to_string(x.front()) + ", " +
                     std::to_string(x.back()) + "]");
  }
}

}  // namespace

double inverse_map(const DeformedGrid& grid, double x_query) {
  const auto x = grid.x_nodes();
  check_range(x, x_query, "inverse_map");
  const std::size_t k = bracket(x, x_query);
  if (x_query == x[k]) return grid.s_node(k);
  if (x_query == x[k + 1]) return grid.s_node(k + 1);
  const double lambda = (x_query - x[k]) / (x[k + 1] - x[k]);
  return grid.s_node(k) + lambda * grid.spacing();
}

double forward_map(const DeformedGrid& grid, double s_query) {
  const double s0 = grid.s_origin();
  const double h = grid.spacing();
  const auto x = grid.x_nodes();
  const double s_last = grid.s_node(x.size() - 1);
  if (!(s_query >= s0 && s_query <= s_last)) {
    throw OutOfRange("forward_map label " + std::to_string(s_query) +
                     " outside the label interval");
  }
  const double pos = (s_query - s0) / h;
  std::size_t k = static_cast<std::size_t>(std::floor(pos));
  k = std::min(k, x.size() - 2);
  const double lambda = pos - static_cast<double>(k);
  return x[k] + lambda * (x[k + 1] - x[k]);
}

EulerianFields reconstruct(const LagrangianState& state,
                           const UniformAxis& axis) {
  const DeformedGrid grid = deformation(state);
  const auto x = grid.x_nodes();
  EulerianFields out{axis, std::vector<double>(axis.count),
                     std::vector<double>(axis.count), state.time};
  for (std::size_t j = 0; j < axis.count; ++j) {
    const double q = axis.at(j);
    check_range(x, q, "reconstruct");
    const std::size_t k = bracket(x, q);
    if (q == x[k]) {
      out.u[j] = state.z[k];
      out.ux[j] = state.w[k];
      continue;
    }
    if (q == x[k + 1]) {
      out.u[j] = state.z[k + 1];
      out.ux[j] = state.w[k + 1];
      continue;
    }
    const double lambda = (q - x[k]) / (x[k + 1] - x[k]);
    out.u[j] = state.z[k] + lambda * (state.z[k + 1] - state.z[k]);
    out.ux[j] = state.w[k] + lambda * (state.w[k + 1] - state.w[k]);
  }
  return out;
}

UniformAxis default_axis(const LagrangianState& state) {
  const std::size_t n = state.size();
  const double lo = state.position(0);
  const double hi = state.position(n - 1);
  const double h = state.spacing();
  std::size_t first = 0;
  while (first < n && state.label(first) < lo) ++first;
  std::size_t last = n;
  while (last > first && state.label(last - 1) > hi) --last;
  return {state.label(first), h, last - first};
}

std::pair<double, double> advect_window(const LagrangianState& state, double a,
                                        double b) {
  const DeformedGrid grid = deformation(state);
  return {forward_map(grid, a), forward_map(grid, b)};
}

}  // namespace peakflow
