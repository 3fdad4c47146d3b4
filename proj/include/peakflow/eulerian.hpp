#pragma once

#include <span>
#include <utility>
#include <vector>

#include "peakflow/kernel.hpp"
#include "peakflow/state.hpp"

namespace peakflow {

/// Uniform Eulerian sample locations x_j = origin + j * spacing.
struct UniformAxis {
  double origin = 0.0;
  double spacing = 1.0;
  std::size_t count = 0;

  double at(std::size_t j) const noexcept {
    return origin + static_cast<double>(j) * spacing;
  }
  std::vector<double> points() const;
};

/// Velocity u and slope u_x sampled on a uniform x axis at one time.
struct EulerianFields {
  UniformAxis axis;
  std::vector<double> u;
  std::vector<double> ux;
  double time = 0.0;
};

/// x = s + xi with Jacobian y. Throws NonMonotoneDeformation with the first
/// offending index.
DeformedGrid deformation(const LagrangianState& state);

/// Label s with x(s) = x_query, by piecewise-linear inversion of the node
/// map s_i -> x_i. Throws OutOfRange outside [x_0, x_N].
double inverse_map(const DeformedGrid& grid, double x_query);

/// Piecewise-linear forward map s -> x(s) through the nodes. Throws
/// OutOfRange outside the label interval.
double forward_map(const DeformedGrid& grid, double s_query);

/// u(x) = z(s(x)), u_x(x) = w(s(x)), linear in s within each cell.
EulerianFields reconstruct(const LagrangianState& state,
                           const UniformAxis& axis);

/// Nodes of the state's own label grid that lie inside the current deformed
/// range; the default output axis for snapshots.
UniformAxis default_axis(const LagrangianState& state);

/// Current Eulerian positions of the characteristics that started at the
/// labels a and b.
std::pair<double, double> advect_window(const LagrangianState& state, double a,
                                        double b);

}  // namespace peakflow
