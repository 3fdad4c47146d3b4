#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "peakflow/grid_function.hpp"
#include "peakflow/kernel.hpp"

namespace peakflow {

/// Truncated label interval [-half_width, half_width] split into `cells`
/// equal cells, i.e. cells + 1 nodes with s = 0 a node whenever `cells`
/// is even.
struct GridSpec {
  double half_width = 40.0;
  std::size_t cells = 8192;

  double spacing() const noexcept {
    return 2.0 * half_width / static_cast<double>(cells);
  }
  std::size_t nodes() const noexcept { return cells + 1; }
  double origin() const noexcept { return -half_width; }
};

/// Throws InvalidGrid if cells < 4 or half_width <= 0.
void validate(const GridSpec& spec);

enum class Family { CH, DP };

/// Coefficients of the nonlocal source M(z, w) = a z + b z^2 + c w^2.
struct ModelParams {
  Family family = Family::CH;
  double kappa = 0.0;
  double coeff_a = 0.0;
  double coeff_b = 1.0;
  double coeff_c = 0.5;

  /// CH: (a, b, c) = (2 kappa, 1, 1/2).
  static ModelParams camassa_holm(double kappa = 0.0);
  /// DP: (a, b, c) = (0, 3/2, 0).
  static ModelParams degasperis_procesi();
};

/// Initial velocity profile. `derivative` may be left empty, in which case
/// centered differences of `value` are used (which average the one-sided
/// slopes at a kink). An analytic derivative should return a one-sided
/// slope at a kink.
struct InitialProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

InitialProfile peakon_profile(double c);
InitialProfile gaussian_profile(double amplitude, double width);
/// u0(x) = -amplitude * x * exp(-x^2).
InitialProfile breaking_profile(double amplitude);

/// Lagrangian unknowns on the label grid: displacement xi, velocity z,
/// velocity gradient w along characteristics and Jacobian y = d x / d s.
struct LagrangianState {
  GridFunction xi;
  GridFunction z;
  GridFunction w;
  GridFunction y;
  double time = 0.0;

  std::size_t size() const noexcept { return z.size(); }
  double spacing() const noexcept { return z.spacing; }
  double origin() const noexcept { return z.origin; }
  double label(std::size_t i) const noexcept { return z.node(i); }
  double position(std::size_t i) const noexcept { return z.node(i) + xi[i]; }
};

/// Throws InvalidGrid on mismatched grids, non-finite values or y <= 0.
void validate(const LagrangianState& state);

/// State at t = 0: xi = 0, z = u0, w = u0', y = 1.
LagrangianState from_initial(const InitialProfile& u0, const GridSpec& spec);

/// Same, from samples already on the grid (w from centered differences,
/// one-sided at the ends, unless `slope` is given).
LagrangianState from_samples(const GridFunction& u0,
                             const std::optional<GridFunction>& slope);

/// Trapezoidal integral over the grid.
double trapezoid(const GridFunction& f);

double norm_L2(const GridFunction& f);
double norm_Linf(const GridFunction& f);
/// Discrete surrogate of the Y = L^2 cap L^inf norm.
double norm_Y(const GridFunction& f);
/// Discrete surrogate of the X = H^1 cap W^{1,inf} norm:
/// |f|_2 + |D f|_2 + |f|_inf + |D f|_inf with D the forward cell difference.
double norm_X(const GridFunction& f);

/// min_i y_i - rho; positive means the state lies in the admissible set.
double check_admissible(const LagrangianState& state, double rho);

/// sup_i |D z - w y| with centered differences (one-sided at the ends).
double constraint_residual(const LagrangianState& state);

/// Deformation x = s + xi with Jacobian y. Throws NonMonotoneDeformation.
DeformedGrid to_deformed_grid(const LagrangianState& state);

/// Centered difference quotient, one-sided at the two ends.
GridFunction centered_derivative(const GridFunction& f);

}  // namespace peakflow
