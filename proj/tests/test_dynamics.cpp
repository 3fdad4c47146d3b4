#include <doctest.h>

#include <cmath>

#include "peakflow/checks.hpp"
#include "peakflow/dynamics.hpp"
#include "peakflow/errors.hpp"

using namespace peakflow;

namespace {

// Measured once on the seeds below, then frozen with headroom.
constexpr double kLipschitzBound = 3.0;  // measured 2.13

GridFunction constant(double v) {
  return GridFunction(std::vector<double>(3, v), 0.0, 1.0);
}

LagrangianState zero_state(std::size_t cells) {
  return from_initial({[](double) { return 0.0; }, nullptr}, GridSpec{10.0, cells});
}

// max over nodes with |s| >= margin of |a - b|
double sup_away_from_origin(const LagrangianState& st, const GridFunction& a,
                            const GridFunction& b, double margin) {
  double m = 0.0;
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (std::abs(st.label(i)) >= margin) m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

double derivative_identity_residual(std::size_t cells) {
  const auto st = smooth_random_state(11, GridSpec{12.0, cells});
  const auto params = ModelParams::camassa_holm(0.0);
  const GridFunction d1 = centered_derivative(f1(st, params));
  const GridFunction g2 = f2(st, params);
  double r = 0.0;
  for (std::size_t i = 0; i < st.size(); ++i) {
    r = std::max(r, std::abs(d1[i] - (g2[i] + st.w[i] * st.w[i]) * st.y[i]));
  }
  return r;
}

}  // namespace

TEST_CASE("m_fn and n_fn pointwise values") {
  const auto ch = ModelParams::camassa_holm(0.0);
  const auto dp = ModelParams::degasperis_procesi();
  CHECK(m_fn(constant(0), constant(0), ch)[1] == 0.0);
  CHECK(m_fn(constant(2), constant(2), ch)[0] == 6.0);
  CHECK(m_fn(constant(2), constant(7), dp)[2] == 6.0);
  CHECK(n_fn(constant(0), constant(1), ch)[0] == -0.5);
  CHECK(n_fn(constant(0), constant(1), dp)[0] == -1.0);
  CHECK(n_fn(constant(1.5), constant(0), ch)[0] == m_fn(constant(1.5), constant(0), ch)[0]);
  // linear term: coeff_a = 2 kappa
  CHECK(m_fn(constant(1), constant(0), ModelParams::camassa_holm(0.5))[0] == 2.0);
  CHECK_THROWS_AS(m_fn(constant(1), GridFunction({1, 2}, 0, 1), ch), InvalidGrid);
}

TEST_CASE("zero state is an exact equilibrium") {
  const auto st = zero_state(128);
  for (const auto& params :
       {ModelParams::camassa_holm(0.0), ModelParams::degasperis_procesi()}) {
    const StateRate r = vector_field(st, params);
    for (std::size_t i = 0; i < st.size(); ++i) {
      CHECK(r.d_xi[i] == 0.0);
      CHECK(r.d_z[i] == 0.0);
      CHECK(r.d_w[i] == 0.0);
      CHECK(r.d_y[i] == 0.0);
    }
  }
  // kappa contributes nothing on zero data either
  const StateRate r = vector_field(st, ModelParams::camassa_holm(1.0));
  CHECK(norm_Linf(r.d_w) == 0.0);
}

TEST_CASE("peakon data satisfies f1 = (z - c) w") {
  const double c = 1.0;
  const auto st = from_initial(peakon_profile(c), GridSpec{40.0, 8192});
  for (const auto& params :
       {ModelParams::camassa_holm(0.0), ModelParams::degasperis_procesi()}) {
    const GridFunction got = f1(st, params);
    GridFunction expected = GridFunction::filled_like(st.z);
    for (std::size_t i = 0; i < st.size(); ++i) {
      expected[i] = (st.z[i] - c) * st.w[i];
    }
    // cross-check the fast path against the direct sum
    const DeformedGrid grid = to_deformed_grid(st);
    GridFunction naive = conv_naive(grid, m_fn(st.z, st.w, params), KernelMode::Gprime);
    for (auto& v : naive.values) v = -v;
    CHECK(norm_Linf(GridFunction{[&] {
      std::vector<double> d(st.size());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = got[i] - naive[i];
      return d;
    }(), 0.0, 1.0}) < 1e-10);
    // the identity holds to O(h) once the kink is a few cells away
    CHECK(sup_away_from_origin(st, got, expected, 0.05) < 2.0 * st.spacing());
    CHECK(std::abs(got[4096]) < 1e-12);
    const StateRate rate = vector_field(st, params);
    CHECK(rate.d_xi[100] == st.z[100]);
    CHECK(rate.d_z[100] == doctest::Approx(got[100]).epsilon(1e-14));
  }
}

TEST_CASE("f2 of a nonnegative bump is nonpositive off the bump") {
  const GridSpec spec{10.0, 400};
  auto st = from_initial({[](double s) {
                            return std::abs(s) < 1.0 ? std::pow(std::cos(M_PI * s / 2), 3)
                                                     : 0.0;
                          },
                          [](double) { return 0.0; }},
                         spec);
  const GridFunction g2 = f2(st, ModelParams::camassa_holm(0.0));
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (std::abs(st.label(i)) > 1.0) CHECK(g2[i] <= 0.0);
  }
}

TEST_CASE("parity on even data") {
  const auto st = from_initial(gaussian_profile(0.8, 1.2), GridSpec{10.0, 500});
  const auto params = ModelParams::camassa_holm(0.0);
  const GridFunction a = f1(st, params), b = f2(st, params);
  CHECK(std::abs(a[250]) < 1e-14);
  for (std::size_t k = 1; k <= 250; ++k) {
    CHECK(a[250 + k] == doctest::Approx(-a[250 - k]).epsilon(1e-12));
    CHECK(b[250 + k] == doctest::Approx(b[250 - k]).epsilon(1e-12));
  }
}

TEST_CASE("CH and DP agree up to the quadratic coefficient when w = 0") {
  auto st = from_initial(gaussian_profile(1.0, 1.0), GridSpec{10.0, 300});
  for (auto& v : st.w.values) v = 0.0;
  const auto ch = ModelParams::camassa_holm(0.0);
  const auto dp = ModelParams::degasperis_procesi();
  const GridFunction a1 = f1(st, ch), b1 = f1(st, dp);
  const GridFunction a2 = f2(st, ch), b2 = f2(st, dp);
  for (std::size_t i = 0; i < st.size(); ++i) {
    CHECK(b1[i] == doctest::Approx(1.5 * a1[i]).epsilon(1e-12));
    CHECK(b2[i] == doctest::Approx(1.5 * a2[i]).epsilon(1e-12));
  }
}

TEST_CASE("derivative identity converges under refinement") {
  const double r1 = derivative_identity_residual(600);
  const double r2 = derivative_identity_residual(1200);
  const double r3 = derivative_identity_residual(2400);
  CHECK(std::log2(r1 / r2) >= 1.0);
  CHECK(std::log2(r2 / r3) >= 1.0);
  CHECK(r3 < 1e-3);
}

TEST_CASE("vector field is Lipschitz on bounded sets") {
  // Surrogate norm on (xi, z, w, y): X for xi and z, Y for w and y.
  auto state_norm = [](const GridFunction& a, const GridFunction& b,
                       const GridFunction& c, const GridFunction& d) {
    return norm_X(a) + norm_X(b) + norm_Y(c) + norm_Y(d);
  };
  auto minus = [](const GridFunction& a, const GridFunction& b) {
    GridFunction d = a;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b[i];
    return d;
  };
  const GridSpec spec{12.0, 1200};
  const auto params = ModelParams::camassa_holm(0.0);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto a = smooth_random_state(seed, spec);
    auto b = a;
    std::mt19937_64 rng(seed + 100);
    const GridFunction dz = random_smooth(rng, a.z, 1e-3);
    const GridFunction dw = random_smooth(rng, a.z, 1e-3);
    for (std::size_t i = 0; i < b.size(); ++i) {
      b.z[i] += dz[i];
      b.w[i] += dw[i];
    }
    const StateRate ra = vector_field(a, params), rb = vector_field(b, params);
    const double num = state_norm(minus(ra.d_xi, rb.d_xi), minus(ra.d_z, rb.d_z),
                                  minus(ra.d_w, rb.d_w), minus(ra.d_y, rb.d_y));
    const double den = state_norm(minus(a.xi, b.xi), minus(a.z, b.z),
                                  minus(a.w, b.w), minus(a.y, b.y));
    worst = std::max(worst, num / den);
  }
  MESSAGE("measured Lipschitz ratio " << worst);
  CHECK(worst <= kLipschitzBound);
}
