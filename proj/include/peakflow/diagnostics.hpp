#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "peakflow/eulerian.hpp"
#include "peakflow/state.hpp"

namespace peakflow {

struct DecaySample {
  double theta = 0.0;
  int m = 0;
  double value = 0.0;
};

struct ProbeSample {
  std::string id;
  int order = 2;
  double x_left = 0.0;   // advected window at this time
  double x_right = 0.0;
  double value = 0.0;
};

/// Scalar diagnostics for one snapshot.
struct DiagnosticsRecord {
  double time = 0.0;
  double energy = 0.0;
  double min_jacobian = 1.0;
  double max_slope = 0.0;
  double constraint_residual = 0.0;
  std::optional<double> decay_norm;  // first requested (theta, m) pair
  std::vector<DecaySample> decay;
  std::optional<double> peakon_l2_error;  // relative to |u_exact|_2
  std::optional<double> peakon_h1_error;  // relative to |u_exact|_H1
  std::vector<ProbeSample> regularity_probes;
};

/// One time slice of Eulerian fields plus its diagnostics.
struct SnapshotRecord {
  double time = 0.0;
  EulerianFields fields;
  DiagnosticsRecord diagnostics;
};

/// A window [label_left, label_right] of initial positions that is carried
/// along characteristics, probed with a difference seminorm of `order`.
struct ProbeWindow {
  std::string id;
  double label_left = 0.0;
  double label_right = 0.0;
  int order = 2;
};

struct DecaySpec {
  double theta = 0.9;
  int m = 50;
};

/// What to evaluate at each snapshot.
struct DiagnosticsPlan {
  std::vector<DecaySpec> decay;
  std::optional<double> peakon_speed;  // compare against c e^{-|x-ct|}
  std::vector<ProbeWindow> probes;
};

/// int (u^2 + u_x^2) dx, evaluated in labels as trapz((z^2 + w^2) y).
double energy(const LagrangianState& state);

/// phi_m(x): 1 for x <= 0, e^{theta x} on (0, m], e^{theta m} beyond.
double decay_weight(double x, double theta, int m) noexcept;

/// sup over x >= 0 of phi_m(x) (|u| + |u_x|).
double decay_norm(const EulerianFields& fields, double theta, int m);

/// max over the sample points of phi_m(x) int e^{-|x-y|} / phi_m(y) dy, by
/// Gauss-Legendre quadrature on pieces split at 0, m and x.
double weight_kernel_bound_check(double theta, int m,
                                 std::span<const double> sample_xs);

/// Scaled L^2 norm of order-th differences of u over the axis nodes inside
/// [x_left, x_right]. order must be 2 or 3. Throws OutOfRange if the window
/// leaves the axis.
double regularity_probe(const EulerianFields& fields, double x_left,
                        double x_right, int order);

/// max |u_x(x_k) - u_x(x_j)| / |x_k - x_j|^theta over node pairs in the
/// window; a discrete Hoelder seminorm of the slope.
double holder_probe(const EulerianFields& fields, double x_left,
                    double x_right, double theta);

struct PeakonError {
  double l2 = 0.0;
  double h1 = 0.0;
  double l2_relative = 0.0;
  double h1_relative = 0.0;
};

double exact_peakon(double x, double c, double t) noexcept;
double exact_peakon_slope(double x, double c, double t) noexcept;

/// Discrete L^2 / H^1 distance between the fields and c e^{-|x - ct|}.
PeakonError peakon_error(const EulerianFields& fields, double c, double t);

/// Trapezoidal integral of samples on a uniform axis.
double trapezoid(std::span<const double> f, double spacing);

DiagnosticsRecord compute_diagnostics(const LagrangianState& state,
                                      const EulerianFields& fields,
                                      const DiagnosticsPlan& plan);

/// Reconstruct on the default axis and evaluate the plan.
SnapshotRecord make_snapshot(const LagrangianState& state,
                             const DiagnosticsPlan& plan);

}  // namespace peakflow
