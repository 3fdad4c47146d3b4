#include <doctest.h>

#include <cmath>
#include <vector>

#include "peakflow/diagnostics.hpp"
#include "peakflow/errors.hpp"

using namespace peakflow;

namespace {

// phi_m(x) * integral of e^{-|x-y|} / phi_m(y), closed form for 0 <= x <= m.
double weight_kernel_closed_form(double theta, double m, double x) {
  const double left = std::exp(-x);
  const double inner_left = std::exp(-x) * std::expm1((1.0 - theta) * x) / (1.0 - theta);
  const double inner_right =
      std::exp(x) * (std::exp(-(1.0 + theta) * x) - std::exp(-(1.0 + theta) * m)) /
      (1.0 + theta);
  const double tail = std::exp(-theta * m) * std::exp(x - m);
  return std::exp(theta * x) * (left + inner_left + inner_right + tail);
}

// Plain midpoint sum, independent of the library's Gauss-Legendre panels.
double weight_kernel_brute(double theta, int m, double x) {
  const double step = 1e-4;
  double acc = 0.0;
  for (double y = x - 60.0 + 0.5 * step; y < x + 60.0; y += step) {
    acc += std::exp(-std::abs(x - y)) / decay_weight(y, theta, m);
  }
  return decay_weight(x, theta, m) * acc * step;
}

EulerianFields sampled(double origin, double h, std::size_t n, double (*u)(double),
                       double (*ux)(double)) {
  EulerianFields f{{origin, h, n}, std::vector<double>(n), std::vector<double>(n), 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    f.u[j] = u(f.axis.at(j));
    f.ux[j] = ux(f.axis.at(j));
  }
  return f;
}

}  // namespace

TEST_CASE("energy") {
  const auto zero = from_initial({[](double) { return 0.0; }, nullptr}, GridSpec{5.0, 40});
  CHECK(energy(zero) == 0.0);

  const auto peak = from_initial(peakon_profile(1.0), GridSpec{40.0, 8192});
  CHECK(std::abs(energy(peak) - 2.0) <= 1e-3);

  const auto gauss = from_initial(gaussian_profile(1.0, 1.0), GridSpec{40.0, 8192});
  const EulerianFields f = reconstruct(gauss, default_axis(gauss));
  std::vector<double> density(f.axis.count);
  for (std::size_t j = 0; j < density.size(); ++j) {
    density[j] = f.u[j] * f.u[j] + f.ux[j] * f.ux[j];
  }
  CHECK(std::abs(energy(gauss) - trapezoid(density, f.axis.spacing)) <= 1e-10);
  // integral of e^{-2x^2}(1 + 4x^2) is 2 sqrt(pi/2)
  CHECK(energy(gauss) == doctest::Approx(2.0 * std::sqrt(M_PI / 2.0)).epsilon(1e-12));

  auto stretched = gauss;
  for (auto& v : stretched.y.values) v = 2.0;
  CHECK(energy(stretched) == doctest::Approx(2.0 * energy(gauss)));
}

TEST_CASE("decay weight") {
  CHECK(decay_weight(-3.0, 0.5, 10) == 1.0);
  CHECK(decay_weight(0.0, 0.5, 10) == 1.0);
  CHECK(decay_weight(4.0, 0.5, 10) == doctest::Approx(std::exp(2.0)));
  CHECK(decay_weight(25.0, 0.5, 10) == doctest::Approx(std::exp(5.0)));
  // 0 <= phi' <= phi, checked by difference quotients
  for (double theta : {0.1, 0.5, 0.9}) {
    const double h = 1e-3;
    for (double x = -2.0; x < 12.0; x += h) {
      const double a = decay_weight(x, theta, 10), b = decay_weight(x + h, theta, 10);
      CHECK((b - a) / h >= 0.0);
      CHECK((b - a) / h <= b * (1 + 1e-9));
    }
  }
}

TEST_CASE("decay norm") {
  const auto zero = sampled(-5.0, 0.01, 1001, [](double) { return 0.0; },
                            [](double) { return 0.0; });
  CHECK(decay_norm(zero, 0.5, 50) == 0.0);
  // u = e^{-x} for x >= 0: phi (|u| + |ux|) = 2 e^{-x/2}, largest at 0
  const auto expo = sampled(0.0, 0.01, 2001, [](double x) { return std::exp(-x); },
                            [](double x) { return -std::exp(-x); });
  CHECK(decay_norm(expo, 0.5, 1000) == doctest::Approx(2.0).epsilon(1e-14));
  // only x >= 0 enters
  const auto left_only = sampled(-5.0, 0.01, 400, [](double) { return 7.0; },
                                 [](double) { return 0.0; });
  CHECK(decay_norm(left_only, 0.5, 10) == 0.0);
}

TEST_CASE("weight-kernel bound against independent quadrature") {
  for (double theta : {0.1, 0.5, 0.9}) {
    for (int m : {10, 50}) {
      for (double x : {0.0, 0.7, 3.0, 9.5}) {
        const std::vector<double> xs = {x};
        const double got = weight_kernel_bound_check(theta, m, xs);
        CHECK(got == doctest::Approx(weight_kernel_closed_form(theta, m, x)).epsilon(1e-10));
      }
      for (double x : {-4.0, 10.0 + m}) {
        const std::vector<double> xs = {x};
        CHECK(weight_kernel_bound_check(theta, m, xs) ==
              doctest::Approx(weight_kernel_brute(theta, m, x)).epsilon(1e-6));
      }
    }
  }
  const std::vector<double> origin = {0.0};
  CHECK(weight_kernel_bound_check(0.5, 50, origin) <= 8.0);
  // theta -> 0: the weight is flat and the integral is 2
  const std::vector<double> far_left = {-30.0};
  CHECK(weight_kernel_bound_check(1e-9, 50, far_left) == doctest::Approx(2.0).epsilon(1e-8));
  std::vector<double> sweep;
  for (double x = -5.0; x <= 60.0; x += 0.25) sweep.push_back(x);
  for (int k = 1; k <= 9; ++k) {
    const double theta = 0.1 * k;
    for (int m : {10, 50}) {
      CHECK(weight_kernel_bound_check(theta, m, sweep) <= 4.0 / (1.0 - theta) + 1e-3);
    }
  }
}

TEST_CASE("regularity probe") {
  const auto quad = sampled(-2.0, 0.01, 401, [](double x) { return x * x; },
                            [](double x) { return 2 * x; });
  // nodes -1..1 inclusive: 201 nodes, 199 second differences of exactly 2
  CHECK(regularity_probe(quad, -1.0, 1.0, 2) ==
        doctest::Approx(2.0 * std::sqrt(199 * 0.01)).epsilon(1e-6));
  CHECK(regularity_probe(quad, -1.0, 1.0, 3) < 1e-6);
  const auto cubic = sampled(-2.0, 0.01, 401, [](double x) { return x * x * x; },
                             [](double x) { return 3 * x * x; });
  CHECK(regularity_probe(cubic, 0.0, 1.0, 3) ==
        doctest::Approx(6.0 * std::sqrt(98 * 0.01)).epsilon(1e-5));
  CHECK_THROWS_AS(regularity_probe(quad, -3.0, 1.0, 2), OutOfRange);
  CHECK_THROWS_AS(regularity_probe(quad, 1.0, 0.0, 2), OutOfRange);
  CHECK_THROWS_AS(regularity_probe(quad, -1.0, 1.0, 4), Error);
}

TEST_CASE("kink probes grow under refinement") {
  std::vector<double> h2, h3;
  for (double h : {0.02, 0.01, 0.005}) {
    const auto n = static_cast<std::size_t>(std::lround(4.0 / h)) + 1;
    const auto f = sampled(-2.0, h, n, [](double x) { return std::exp(-std::abs(x)); },
                           [](double) { return 0.0; });
    h2.push_back(regularity_probe(f, -1.0, 1.0, 2));
    h3.push_back(regularity_probe(f, -1.0, 1.0, 3));
  }
  CHECK(h2[1] / h2[0] == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
  CHECK(h3[2] / h3[1] == doctest::Approx(std::pow(2.0, 1.5)).epsilon(0.05));
}

TEST_CASE("holder probe") {
  const auto lin = sampled(0.0, 0.1, 11, [](double x) { return x; },
                           [](double x) { return 3.0 * x; });
  // |3 dx| / dx^1 = 3
  CHECK(holder_probe(lin, 0.0, 1.0, 1.0) == doctest::Approx(3.0));
}

TEST_CASE("exact peakon and errors") {
  CHECK(exact_peakon(1.0, 1.0, 1.0) == 1.0);
  CHECK(exact_peakon(0.0, 2.0, 0.0) == 2.0);
  CHECK(exact_peakon_slope(1.0, 1.0, 1.0) == 0.0);
  CHECK(exact_peakon_slope(2.0, 1.0, 1.0) == doctest::Approx(-std::exp(-1.0)));
  CHECK(exact_peakon_slope(0.0, 1.0, 1.0) == doctest::Approx(std::exp(-1.0)));

  EulerianFields f{{-10.0, 0.01, 2001}, std::vector<double>(2001), std::vector<double>(2001), 0.5};
  for (std::size_t j = 0; j < f.axis.count; ++j) {
    f.u[j] = exact_peakon(f.axis.at(j), 1.5, 0.5);
    f.ux[j] = exact_peakon_slope(f.axis.at(j), 1.5, 0.5);
  }
  const PeakonError e = peakon_error(f, 1.5, 0.5);
  CHECK(e.l2 == 0.0);
  CHECK(e.h1 == 0.0);
  for (auto& v : f.u) v *= 1.01;
  const PeakonError e2 = peakon_error(f, 1.5, 0.5);
  CHECK(e2.l2_relative == doctest::Approx(0.01).epsilon(1e-9));
}

TEST_CASE("compute diagnostics fills every requested field") {
  const auto st = from_initial(peakon_profile(1.0), GridSpec{20.0, 2000});
  DiagnosticsPlan plan;
  plan.decay = {{0.9, 50}, {0.5, 10}};
  plan.peakon_speed = 1.0;
  plan.probes = {{"tip", -1.0, 1.0, 3}, {"side", -5.0, -1.0, 2}};
  const SnapshotRecord snap = make_snapshot(st, plan);
  const DiagnosticsRecord& d = snap.diagnostics;
  CHECK(d.time == 0.0);
  CHECK(d.min_jacobian == 1.0);
  CHECK(d.max_slope == doctest::Approx(1.0));
  CHECK(d.energy == doctest::Approx(2.0).epsilon(1e-3));
  REQUIRE(d.decay.size() == 2);
  CHECK(d.decay_norm.value() == d.decay[0].value);
  CHECK(d.decay[1].theta == 0.5);
  REQUIRE(d.peakon_l2_error.has_value());
  CHECK(*d.peakon_l2_error < 1e-12);
  REQUIRE(d.regularity_probes.size() == 2);
  CHECK(d.regularity_probes[0].id == "tip");
  CHECK(d.regularity_probes[0].x_left == -1.0);
  CHECK(d.regularity_probes[1].value > 0.0);
  CHECK(snap.fields.axis.count == 2001);
}
