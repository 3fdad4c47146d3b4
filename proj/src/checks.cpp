#include "peakflow/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "peakflow/diagnostics.hpp"
#include "peakflow/dynamics.hpp"
#include "peakflow/eulerian.hpp"

namespace peakflow {

DeformedGrid random_deformed_grid(std::mt19937_64& rng, std::size_t cells,
                                  double half_width, double jac_lo,
                                  double jac_hi) {
  std::uniform_real_distribution<double> jac(jac_lo, jac_hi);
  const std::size_t n = cells + 1;
  const double h = 2.0 * half_width / static_cast<double>(cells);
  std::vector<double> y(n), x(n);
  for (auto& v : y) v = jac(rng);
  x[0] = -half_width;
  for (std::size_t i = 1; i < n; ++i) x[i] = x[i - 1] + 0.5 * h * (y[i - 1] + y[i]);
  // Re-centre so that x stays near the label interval.
  const double shift = 0.5 * (x.front() + x.back());
  for (auto& v : x) v -= shift;
  return DeformedGrid(-half_width, h, std::move(x), std::move(y));
}

GridFunction random_smooth(std::mt19937_64& rng, const GridFunction& like,
                           double amplitude) {
  std::uniform_real_distribution<double> centre(-4.0, 4.0), width(0.5, 2.0),
      amp(-amplitude, amplitude);
  GridFunction f = GridFunction::filled_like(like);
  for (int k = 0; k < 3; ++k) {
    const double c = centre(rng), w = width(rng), a = amp(rng);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double r = (f.node(i) - c) / w;
      f[i] += a * std::exp(-r * r);
    }
  }
  return f;
}

LagrangianState smooth_random_state(std::uint64_t seed, const GridSpec& grid) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(-2.0, 2.0), width(0.7, 1.5),
      amp(-0.8, 0.8), disp(-0.25, 0.25);
  std::array<double, 3> c{}, wd{}, a{};
  for (int k = 0; k < 3; ++k) {
    c[k] = centre(rng);
    wd[k] = width(rng);
    a[k] = amp(rng);
  }
  const double xc = centre(rng), xa = disp(rng);
  // Displacement xi = xa exp(-(s - xc)^2); |xi'| <= 0.25 * sqrt(2/e) < 1.
  auto xi = [=](double s) { return xa * std::exp(-(s - xc) * (s - xc)); };
  auto dxi = [=](double s) { return -2.0 * (s - xc) * xi(s); };
  auto u = [=](double x) {
    double v = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double r = (x - c[k]) / wd[k];
      v += a[k] * std::exp(-r * r);
    }
    return v;
  };
  auto du = [=](double x) {
    double v = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double r = (x - c[k]) / wd[k];
      v += -2.0 * a[k] * r / wd[k] * std::exp(-r * r);
    }
    return v;
  };
  validate(grid);
  const std::size_t n = grid.nodes();
  GridFunction base(std::vector<double>(n), grid.origin(), grid.spacing());
  LagrangianState st{base, base, base, base, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double s = base.node(i);
    const double x = s + xi(s);
    st.xi[i] = xi(s);
    st.y[i] = 1.0 + dxi(s);
    // z = u(x(s)), w = u'(x(s)) keeps D_s z = w y exactly.
    st.z[i] = u(x);
    st.w[i] = du(x);
  }
  validate(st);
  return st;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

double sup_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

std::vector<CheckResult> run_invariant_checks(std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);

  {  // scan vs naive
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const DeformedGrid g = random_deformed_grid(rng, 512, 8.0, 0.2, 3.0);
      GridFunction like(std::vector<double>(g.size()), g.s_origin(), g.spacing());
      const GridFunction m = random_smooth(rng, like);
      worst = std::max(worst, sup_diff(conv_G(g, m), conv_naive(g, m, KernelMode::G)));
      worst = std::max(worst, sup_diff(conv_Gprime(g, m),
                                       conv_naive(g, m, KernelMode::Gprime)));
    }
    out.push_back({"kernel.scan_matches_naive", worst <= 1e-10,
                   "sup difference " + fmt(worst)});
  }

  {  // kernel domination
    bool ok = true;
    for (int trial = 0; trial < 5 && ok; ++trial) {
      const DeformedGrid g = random_deformed_grid(rng, 128, 5.0, 0.2, 3.0);
      const double rho = g.min_stretch();
      const auto x = g.x_nodes();
      for (std::size_t i = 0; i < g.size() && ok; ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
          if (green(x[i] - x[j]) >
              green(rho * (g.s_node(i) - g.s_node(j))) * (1.0 + 1e-14)) {
            ok = false;
            break;
          }
        }
      }
    }
    out.push_back({"kernel.domination", ok, "G(x_i - x_j) <= G(rho (s_i - s_j))"});
  }

  {  // linearity and positivity
    const DeformedGrid g = random_deformed_grid(rng, 1024, 10.0, 0.2, 3.0);
    GridFunction like(std::vector<double>(g.size()), g.s_origin(), g.spacing());
    const GridFunction m1 = random_smooth(rng, like), m2 = random_smooth(rng, like);
    GridFunction mix = GridFunction::filled_like(like);
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = 2.5 * m1[i] - 0.75 * m2[i];
    const GridFunction a = conv_G(g, m1), b = conv_G(g, m2), c = conv_G(g, mix);
    double lin = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      lin = std::max(lin, std::abs(c[i] - (2.5 * a[i] - 0.75 * b[i])));
    }
    out.push_back({"kernel.linearity", lin <= 1e-12, "residual " + fmt(lin)});
    GridFunction pos = m1;
    for (auto& v : pos.values) v = std::abs(v);
    const GridFunction p = conv_G(g, pos);
    const bool positive = std::all_of(p.values.begin(), p.values.end(),
                                      [](double v) { return v >= 0.0; });
    out.push_back({"kernel.positivity", positive, "m >= 0 implies G*m >= 0"});
  }

  {  // derivative identity under refinement
    std::vector<double> res;
    for (std::size_t cells : {1024u, 2048u, 4096u}) {
      const LagrangianState st = smooth_random_state(seed, {12.0, cells});
      const ModelParams p = ModelParams::camassa_holm(0.0);
      const GridFunction d = centered_derivative(f1(st, p));
      const GridFunction g2 = f2(st, p);
      double r = 0.0;
      for (std::size_t i = 1; i + 1 < d.size(); ++i) {
        r = std::max(r, std::abs(d[i] - (g2[i] + st.w[i] * st.w[i]) * st.y[i]));
      }
      res.push_back(r);
    }
    const double order = std::log2(res[1] / res[2]);
    out.push_back({"dynamics.derivative_identity", order >= 1.0,
                   "residuals " + fmt(res[0]) + ", " + fmt(res[1]) + ", " +
                       fmt(res[2]) + "; order " + fmt(order)});
  }

  {  // equilibrium
    GridSpec spec{10.0, 256};
    const LagrangianState zero =
        from_initial({[](double) { return 0.0; }, [](double) { return 0.0; }}, spec);
    const StateRate r = vector_field(zero, ModelParams::camassa_holm(0.0));
    const double m = std::max({norm_Linf(r.d_xi), norm_Linf(r.d_z),
                               norm_Linf(r.d_w), norm_Linf(r.d_y)});
    out.push_back({"dynamics.equilibrium", m == 0.0, "rate sup " + fmt(m)});
  }

  {  // inverse map monotone + Lipschitz sandwich
    const DeformedGrid g = random_deformed_grid(rng, 400, 6.0, 0.2, 3.0);
    const auto x = g.x_nodes();
    std::uniform_real_distribution<double> q(x.front(), x.back());
    std::vector<double> qs(500);
    for (auto& v : qs) v = q(rng);
    std::sort(qs.begin(), qs.end());
    const double lo = 1.0 / g.max_stretch(), hi = 1.0 / g.min_stretch();
    bool ok = true;
    for (std::size_t k = 1; k < qs.size(); ++k) {
      if (!(qs[k] > qs[k - 1])) continue;
      const double ratio =
          (inverse_map(g, qs[k]) - inverse_map(g, qs[k - 1])) / (qs[k] - qs[k - 1]);
      if (!(ratio > 0.0) || ratio < lo * (1 - 1e-9) || ratio > hi * (1 + 1e-9)) ok = false;
    }
    out.push_back({"eulerian.inverse_sandwich", ok,
                   "ds/dx within [" + fmt(lo) + ", " + fmt(hi) + "]"});
  }

  {  // decay weight: 0 <= phi' <= phi, and the kernel-weight bound
    bool mono = true;
    for (double theta : {0.1, 0.5, 0.9}) {
      for (double x = -5.0; x < 60.0; x += 0.01) {
        const double a = decay_weight(x, theta, 50), b = decay_weight(x + 0.01, theta, 50);
        const double d = (b - a) / 0.01;
        if (d < -1e-12 || d > b * (1 + 1e-9)) mono = false;
      }
    }
    out.push_back({"diagnostics.weight_monotone", mono, "0 <= phi' <= phi"});
    std::vector<double> xs;
    for (double x = -10.0; x <= 60.0; x += 0.5) xs.push_back(x);
    bool bound = true;
    double worst_margin = 1e300;
    for (int k = 1; k <= 9; ++k) {
      const double theta = 0.1 * k;
      for (int m : {10, 50}) {
        const double v = weight_kernel_bound_check(theta, m, xs);
        const double limit = 4.0 / (1.0 - theta);
        worst_margin = std::min(worst_margin, limit - v);
        if (v > limit + 1e-3) bound = false;
      }
    }
    out.push_back({"diagnostics.kernel_weight_bound", bound,
                   "smallest margin " + fmt(worst_margin)});
  }
  return out;
}

}  // namespace peakflow
