#pragma once

#include "peakflow/grid_function.hpp"
#include "peakflow/kernel.hpp"
#include "peakflow/state.hpp"

namespace peakflow {

/// Time derivative of every Lagrangian unknown.
struct StateRate {
  GridFunction d_xi;
  GridFunction d_z;
  GridFunction d_w;
  GridFunction d_y;
};

/// M(z, w) = a z + b z^2 + c w^2, pointwise.
GridFunction m_fn(const GridFunction& z, const GridFunction& w,
                  const ModelParams& params);

/// N(z, w) = M(z, w) - w^2, pointwise.
GridFunction n_fn(const GridFunction& z, const GridFunction& w,
                  const ModelParams& params);

/// F1 = -int G'(x(s) - x(sigma)) M x'(sigma) dsigma.
GridFunction f1(const LagrangianState& state, const ModelParams& params);

/// F2 = -int G(x(s) - x(sigma)) M x'(sigma) dsigma + N(z, w).
GridFunction f2(const LagrangianState& state, const ModelParams& params);

/// (d_xi, d_z, d_w, d_y) = (z, F1, F2, w y). F1 and F2 share one scan.
StateRate vector_field(const LagrangianState& state, const ModelParams& params);

}  // namespace peakflow
