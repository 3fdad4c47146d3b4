#include "peakflow/dynamics.hpp"

#include "peakflow/errors.hpp"

namespace peakflow {

GridFunction m_fn(const GridFunction& z, const GridFunction& w,
                  const ModelParams& params) {
  if (!z.same_grid(w)) throw InvalidGrid("m_fn: z and w on different grids");
  GridFunction m = GridFunction::filled_like(z);
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = params.coeff_a * z[i] + params.coeff_b * z[i] * z[i] +
           params.coeff_c * w[i] * w[i];
  }
  return m;
}

GridFunction n_fn(const GridFunction& z, const GridFunction& w,
                  const ModelParams& params) {
  GridFunction n = m_fn(z, w, params);
  for (std::size_t i = 0; i < n.size(); ++i) n[i] -= w[i] * w[i];
  return n;
}

GridFunction f1(const LagrangianState& state, const ModelParams& params) {
  const DeformedGrid grid = to_deformed_grid(state);
  GridFunction out = conv_Gprime(grid, m_fn(state.z, state.w, params));
  for (double& v : out.values) v = -v;
  return out;
}

GridFunction f2(const LagrangianState& state, const ModelParams& params) {
  const DeformedGrid grid = to_deformed_grid(state);
  GridFunction out = conv_G(grid, m_fn(state.z, state.w, params));
  const GridFunction n = n_fn(state.z, state.w, params);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = n[i] - out[i];
  return out;
}

StateRate vector_field(const LagrangianState& state, const ModelParams& params) {
  const DeformedGrid grid = to_deformed_grid(state);
  const GridFunction m = m_fn(state.z, state.w, params);
  const ScanPair scans = exp_scan(grid, m);

  StateRate rate{state.z, conv_Gprime(grid, m, scans), conv_G(grid, m, scans),
                 GridFunction::filled_like(state.y)};
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double w = state.w[i];
    rate.d_z[i] = -rate.d_z[i];
    // N = M - w^2
    rate.d_w[i] = (m[i] - w * w) - rate.d_w[i];
    rate.d_y[i] = w * state.y[i];
  }
  return rate;
}

}  // namespace peakflow
