#pragma once

// Green's function of (1 - d^2/dx^2) on the line and its convolution against
// grid data pulled back through a monotone deformation x(s).

#include <cstddef>
#include <span>
#include <vector>

#include "peakflow/grid_function.hpp"

namespace peakflow {

/// G(x) = exp(-|x|) / 2.
double green(double x) noexcept;

/// G'(x) = -sgn(x) exp(-|x|) / 2, with sgn(0) = 0.
double green_prime(double x) noexcept;

/// A uniform label grid s_i together with the deformed positions
/// x_i = x(s_i) and the Jacobian samples x'(s_i).
///
/// Construction validates that x is strictly increasing and the Jacobian is
/// positive; violations throw NonMonotoneDeformation naming the first bad node.
class DeformedGrid {
 public:
  DeformedGrid(double s_origin, double spacing, std::vector<double> x_nodes,
               std::vector<double> jacobian);

  /// Undeformed grid: x = s, x' = 1.
  static DeformedGrid identity(double s_origin, double spacing,
                               std::size_t count);

  std::size_t size() const noexcept { return x_.size(); }
  double s_origin() const noexcept { return s_origin_; }
  double spacing() const noexcept { return spacing_; }
  double s_node(std::size_t i) const noexcept {
    return s_origin_ + static_cast<double>(i) * spacing_;
  }
  std::span<const double> x_nodes() const noexcept { return x_; }
  std::span<const double> jacobian() const noexcept { return jacobian_; }

  double min_jacobian() const noexcept;
  /// min over cells of (x_{i+1} - x_i) / h.
  double min_stretch() const noexcept;
  /// max over cells of (x_{i+1} - x_i) / h.
  double max_stretch() const noexcept;

 private:
  double s_origin_;
  double spacing_;
  std::vector<double> x_;
  std::vector<double> jacobian_;
};

/// One-sided exponential moments of m against x':
///   left_i  = exp(-x_i) * int_{s_0}^{s_i} exp(x(sigma)) m(sigma) x'(sigma) dsigma
///   right_i = exp(x_i)  * int_{s_i}^{s_N} exp(-x(sigma)) m(sigma) x'(sigma) dsigma
/// Each cell is weighted by its exact x'-integral x_i - x_{i-1}, i.e. the
/// trapezoidal rule in the deformed variable.
struct ScanPair {
  std::vector<double> left;
  std::vector<double> right;
};

/// Linear-time evaluation of both one-sided moments by the recursions
///   L_i = e^{x_{i-1}-x_i} L_{i-1} + (x_i - x_{i-1})/2 (e^{x_{i-1}-x_i} m_{i-1} + m_i)
/// and its right-to-left mirror. Throws InvalidGrid if `m` and `grid`
/// disagree in length.
ScanPair exp_scan(const DeformedGrid& grid, const GridFunction& m);

/// Trapezoidal value of int G(x_i - x(sigma)) m(sigma) x'(sigma) dsigma.
GridFunction conv_G(const DeformedGrid& grid, const GridFunction& m);
GridFunction conv_G(const DeformedGrid& grid, const GridFunction& m,
                    const ScanPair& scans);

/// Trapezoidal value of int G'(x_i - x(sigma)) m(sigma) x'(sigma) dsigma.
GridFunction conv_Gprime(const DeformedGrid& grid, const GridFunction& m);
GridFunction conv_Gprime(const DeformedGrid& grid, const GridFunction& m,
                         const ScanPair& scans);

enum class KernelMode { G, Gprime };

/// Reference O(N^2) evaluation of the same trapezoidal sums. Intended for
/// cross-checking conv_G / conv_Gprime on modest grids.
GridFunction conv_naive(const DeformedGrid& grid, const GridFunction& m,
                        KernelMode mode);

}  // namespace peakflow
