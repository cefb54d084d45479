#ifndef TIPPING_DETERMINISTIC_HPP
#define TIPPING_DETERMINISTIC_HPP

#include <memory>

#include "tipping/ode.hpp"
#include "tipping/ramp_model.hpp"

namespace tipping {

enum class Regime { Tracking, Critical, Escape };

struct RegimeReport {
  Regime regime = Regime::Tracking;
  double epsilon = 0.0;
  double r = 0.0;
  Trajectory witness;
};

// Numerics shared by the orbit and classification routines.
struct OrbitOptions {
  double seed_offset = 1e-8;   // displacement along the saddle eigenvector
  double track_tol = 1e-3;     // closeness to the end state for Tracking
  double mu_end = 1.0 - 1e-3;  // where the ramp is considered finished
  double ode_rtol = 1e-10;
  double ode_atol = 1e-12;
  double blowup_cap = 1e6;
};

// Forward time profile x(t) on the unstable manifold of (y_s[0], mu=0)
// for the tanh-ramp prototype, time based so that mu(0) = mu_crit.
// Wraps the dense solution together with the ramp closed forms; this is
// the reference trajectory the density methods are centered on.
class OrbitFrame {
 public:
  OrbitFrame(RampParameters p, OdeSolution xu_solution);

  const RampParameters& params() const { return params_; }
  bool truncated() const { return solution_.truncated; }
  double t_min() const;
  double t_max() const;

  double lambda(double t) const { return lambda_of_t(t, params_); }
  double mu(double t) const { return mu_of_t(t, params_); }
  double x_u(double t) const;
  // c1(t) = -2 (x_u(t) + lambda(t)); equals twice the distance of the
  // co-moving well's companion critical point from the orbit.
  double c1(double t) const;

 private:
  RampParameters params_;
  OdeSolution solution_;
};

enum class ManifoldKind { UnstableOfSminus, StableOfUplus };

// Connecting orbit of the (x, mu) extended prototype system. The
// unstable-manifold orbit (escaping ones included, flagged truncated)
// integrates forward from S-; the stable-manifold orbit integrates
// backward from U+.
OdeSolution connecting_orbit_solution(const RampParameters& p,
                                      ManifoldKind which,
                                      const OrbitOptions& opts = {});
Trajectory connecting_orbit(const RampParameters& p, ManifoldKind which,
                            const std::vector<double>& sample_times,
                            const OrbitOptions& opts = {});
std::shared_ptr<OrbitFrame> make_orbit_frame(const RampParameters& p,
                                             const OrbitOptions& opts = {});

// Generic classification in (epsilon, r) for a scalar model and ramp
// shape: integrates from just above the start saddle and reports whether
// the state tracks to the shifted stable equilibrium or escapes.
RegimeReport classify_regime(double epsilon, double r, const ScalarModel& m,
                             const RampShape& shape,
                             const OrbitOptions& opts = {});
RegimeReport classify_regime(double epsilon, double r,
                             const OrbitOptions& opts = {});

// r_c = r0 + eps * sqrt(-r0 Gamma''(mu_crit) / (2 a0 a2)).
double critical_rate_asymptotic(const ScalarModel& m, const RampShape& shape,
                                double epsilon);

// Bisection of classify_regime over r in [r0, r0 + 4 eps].
double critical_rate_numeric(double epsilon, double tol, const ScalarModel& m,
                             const RampShape& shape,
                             const OrbitOptions& opts = {});
double critical_rate_numeric(double epsilon, double tol);

// Critical ramp speed in the (rho, lambda_max) parameterization.
double critical_rho_numeric(double lambda_max, double tol,
                            const OrbitOptions& opts = {});

struct SaddleNodeCrossings {
  double mu_lower = 0.0;
  double mu_upper = 0.0;
};
// Roots of r Gamma(mu) = r0; absent while r <= r0.
std::optional<SaddleNodeCrossings> saddle_node_crossings(double r,
                                                         const ScalarModel& m,
                                                         const RampShape& shape);
std::optional<SaddleNodeCrossings> saddle_node_crossings(double r);

struct C1Profile {
  Trajectory profile;
  double min_value = 0.0;
  double t_min = 0.0;  // time where the minimum is attained
};
C1Profile c1_profile(const OrbitFrame& frame,
                     const std::vector<double>& sample_times);
C1Profile c1_profile(double rho, double lambda_max,
                     const std::vector<double>& sample_times,
                     const OrbitOptions& opts = {});

// Two estimates of the largest usable ramp speed for the single-mode
// description: (a) the rho where min_t c1(t) = 0, and (b) the rho
// solving r = r0 + eps*c_r/2.
struct SpeedLimit {
  double rho_c1_zero = 0.0;
  double rho_half_expansion = 0.0;
};
SpeedLimit single_mode_speed_limit(double lambda_max, double tol,
                                   const OrbitOptions& opts = {});

struct RescalingConstants {
  double c_m = 0.0;
  double c_z = 0.0;
  double c_r = 0.0;
  double c_t = 0.0;
  double c_n = 0.0;
  double g2 = 0.0;  // -Gamma''(mu_crit)/2
};
RescalingConstants rescaling_constants(const ScalarModel& m,
                                       const RampShape& shape);

// Bounded orbit of z' = z^2 + r - mu^2 on [-mu_span, mu_span]. For r <= 1
// this is the tracking orbit with z ~ -|mu| at both ends (integrated
// forward from the left tail, where it attracts); for r > 1 it is the
// escape orbit z ~ +|mu| (integrated backward from the right tail).
Trajectory normal_form_orbit(double r, double mu_span = 15.0,
                             int n_samples = 3001, double ode_rtol = 1e-11);

// r where max_mu z(mu) crosses zero, found by bisection on (0, 1).
double normal_form_validity_threshold(double tol = 1e-3);

}  // namespace tipping

#endif
