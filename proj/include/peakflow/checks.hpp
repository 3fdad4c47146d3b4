#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "peakflow/kernel.hpp"
#include "peakflow/state.hpp"

namespace peakflow {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Randomized admissible deformation on [-half_width, half_width] with
/// `cells` cells: Jacobian samples uniform in [jac_lo, jac_hi] and positions
/// integrated from them by the trapezoidal rule.
DeformedGrid random_deformed_grid(std::mt19937_64& rng, std::size_t cells,
                                  double half_width, double jac_lo,
                                  double jac_hi);

/// Smooth random bump data: a sum of a few Gaussians with random centres,
/// widths and signs on the grid of `like`.
GridFunction random_smooth(std::mt19937_64& rng, const GridFunction& like,
                           double amplitude = 1.0);

/// Smooth admissible Lagrangian state with nonzero displacement, built from
/// analytic profiles so that it can be resampled at any resolution.
LagrangianState smooth_random_state(std::uint64_t seed, const GridSpec& grid);

/// The invariant suites behind `peakflow check`.
std::vector<CheckResult> run_invariant_checks(std::uint64_t seed);

}  // namespace peakflow
