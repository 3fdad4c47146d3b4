#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace peakflow {

/// Samples of a real function on the uniform grid s_i = origin + i * spacing.
struct GridFunction {
  std::vector<double> values;
  double origin = 0.0;
  double spacing = 1.0;

  GridFunction() = default;
  GridFunction(std::vector<double> v, double origin_, double spacing_)
      : values(std::move(v)), origin(origin_), spacing(spacing_) {}

  /// Same grid as `like`, every value set to `fill`.
  static GridFunction filled_like(const GridFunction& like, double fill = 0.0) {
    return {std::vector<double>(like.size(), fill), like.origin, like.spacing};
  }

  std::size_t size() const noexcept { return values.size(); }
  double node(std::size_t i) const noexcept {
    return origin + static_cast<double>(i) * spacing;
  }
  double& operator[](std::size_t i) noexcept { return values[i]; }
  double operator[](std::size_t i) const noexcept { return values[i]; }
  std::span<const double> view() const noexcept { return values; }

  bool same_grid(const GridFunction& other) const noexcept {
    return size() == other.size() && origin == other.origin &&
           spacing == other.spacing;
  }
};

}  // namespace peakflow
