#include "peakflow/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "peakflow/errors.hpp"

namespace peakflow {

NonMonotoneDeformation::NonMonotoneDeformation(std::size_t index)
    : Error("deformation is not strictly increasing at node " +
            std::to_string(index)),
      index_(index) {}

double green(double x) noexcept { return 0.5 * std::exp(-std::abs(x)); }

double green_prime(double x) noexcept {
  if (x == 0.0) return 0.0;
  const double g = 0.5 * std::exp(-std::abs(x));
  return x > 0.0 ? -g : g;
}

DeformedGrid::DeformedGrid(double s_origin, double spacing,
                           std::vector<double> x_nodes,
                           std::vector<double> jacobian)
    : s_origin_(s_origin),
      spacing_(spacing),
      x_(std::move(x_nodes)),
      jacobian_(std::move(jacobian)) {
  if (!(spacing_ > 0.0) || !std::isfinite(spacing_)) {
    throw InvalidGrid("deformed grid spacing must be positive");
  }
  if (x_.size() != jacobian_.size() || x_.size() < 2) {
    throw InvalidGrid("deformed grid needs matching x/jacobian of length >= 2");
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !(jacobian_[i] > 0.0) ||
        !std::isfinite(jacobian_[i])) {
      throw NonMonotoneDeformation(i);
    }
    if (i > 0 && !(x_[i] > x_[i - 1])) throw NonMonotoneDeformation(i);
  }
}

DeformedGrid DeformedGrid::identity(double s_origin, double spacing,
                                    std::size_t count) {
  std::vector<double> x(count);
  for (std::size_t i = 0; i < count; ++i) {
    x[i] = s_origin + static_cast<double>(i) * spacing;
  }
  return DeformedGrid(s_origin, spacing, std::move(x),
                      std::vector<double>(count, 1.0));
}

double DeformedGrid::min_jacobian() const noexcept {
  return *std::min_element(jacobian_.begin(), jacobian_.end());
}

double DeformedGrid::min_stretch() const noexcept {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < x_.size(); ++i) lo = std::min(lo, x_[i] - x_[i - 1]);
  return lo / spacing_;
}

double DeformedGrid::max_stretch() const noexcept {
  double hi = 0.0;
  for (std::size_t i = 1; i < x_.size(); ++i) hi = std::max(hi, x_[i] - x_[i - 1]);
  return hi / spacing_;
}

namespace {

void require_matching(const DeformedGrid& grid, const GridFunction& m) {
  if (m.size() != grid.size()) {
    throw InvalidGrid("integrand has " + std::to_string(m.size()) +
                      " samples but the grid has " +
                      std::to_string(grid.size()));
  }
}

}  // namespace

ScanPair exp_scan(const DeformedGrid& grid, const GridFunction& m) {
  require_matching(grid, m);
  const std::size_t n = grid.size();
  const auto x = grid.x_nodes();

  // decay[i] = exp(x_{i-1} - x_i), shared by both sweeps.
  std::vector<double> decay(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) decay[i] = std::exp(x[i - 1] - x[i]);

  ScanPair out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  auto& left = out.left;
  auto& right = out.right;

  // Cell [s_{i-1}, s_i] carries the weight x_i - x_{i-1}, the exact integral
  // of x' over the cell.
  for (std::size_t i = 1; i < n; ++i) {
    const double half_cell = 0.5 * (x[i] - x[i - 1]);
    left[i] = decay[i] * left[i - 1] + half_cell * (decay[i] * m[i - 1] + m[i]);
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    const double half_cell = 0.5 * (x[i + 1] - x[i]);
    right[i] =
        decay[i + 1] * right[i + 1] + half_cell * (decay[i + 1] * m[i + 1] + m[i]);
  }
  return out;
}

GridFunction conv_G(const DeformedGrid& grid, const GridFunction& m) {
  return conv_G(grid, m, exp_scan(grid, m));
}

GridFunction conv_G(const DeformedGrid& grid, const GridFunction& m,
                    const ScanPair& scans) {
  require_matching(grid, m);
  GridFunction out = GridFunction::filled_like(m);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = 0.5 * (scans.left[i] + scans.right[i]);
  }
  return out;
}

GridFunction conv_Gprime(const DeformedGrid& grid, const GridFunction& m) {
  return conv_Gprime(grid, m, exp_scan(grid, m));
}

GridFunction conv_Gprime(const DeformedGrid& grid, const GridFunction& m,
                         const ScanPair& scans) {
  require_matching(grid, m);
  const std::size_t n = grid.size();
  const auto x = grid.x_nodes();
  GridFunction out = GridFunction::filled_like(m);
  for (std::size_t i = 0; i < n; ++i) {
    // Each scan includes node i's own half-cell; G'(0) = 0 removes both.
    const double own_left = i > 0 ? 0.5 * (x[i] - x[i - 1]) : 0.0;
    const double own_right = i + 1 < n ? 0.5 * (x[i + 1] - x[i]) : 0.0;
    out[i] = 0.5 * ((scans.right[i] - own_right * m[i]) -
                    (scans.left[i] - own_left * m[i]));
  }
  return out;
}

GridFunction conv_naive(const DeformedGrid& grid, const GridFunction& m,
                        KernelMode mode) {
  require_matching(grid, m);
  const std::size_t n = grid.size();
  const auto x = grid.x_nodes();
  std::vector<double> weight(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    const double half_cell = 0.5 * (x[j] - x[j - 1]);
    weight[j - 1] += half_cell;
    weight[j] += half_cell;
  }
  GridFunction out = GridFunction::filled_like(m);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double k = mode == KernelMode::G ? green(x[i] - x[j])
                                             : green_prime(x[i] - x[j]);
      acc += weight[j] * k * m[j];
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace peakflow
