#ifndef TIPPING_RAMP_MODEL_HPP
#define TIPPING_RAMP_MODEL_HPP

#include <array>
#include <functional>
#include <stdexcept>

namespace tipping {

// The same ramp is described by two parameter pairs:
//   (lambda_max, rho)  amplitude and speed knob of the tanh profile, and
//   (epsilon, r)       sharpness and maximal speed of the normalized ramp,
// related by epsilon = rho*lambda_max/4 and r = rho*lambda_max^2/4.
struct RampParameters {
  double lambda_max = 0.0;
  double rho = 0.0;
  double epsilon = 0.0;
  double r = 0.0;
  double mu_crit = 0.5;

  static RampParameters from_rho(double rho, double lambda_max);
  static RampParameters from_eps_r(double epsilon, double r);
};

struct ConvertedParameters {
  double epsilon;
  double r;
};
ConvertedParameters convert_parameters(double rho, double lambda_max);
// Inverse map; throws std::domain_error when epsilon == 0.
void convert_parameters_inverse(double epsilon, double r, double* rho,
                                double* lambda_max);

// lambda(t) = (lambda_max/2) (tanh(lambda_max rho t / 2) + 1).
double lambda_of_t(double t, const RampParameters& p);
// mu(t) = lambda(t)/lambda_max, anchored so mu(0) = 1/2.
double mu_of_t(double t, const RampParameters& p);
// Inverse of mu_of_t on (0,1).
double t_of_mu(double mu, const RampParameters& p);

// Normalized speed profile of the ramp: zero at both ends, positive
// inside, unique maximum of 1 at mu_crit.
struct RampShape {
  std::function<double(double)> gamma;
  std::function<double(double)> dgamma;
  std::function<double(double)> ddgamma;
  double mu_crit = 0.5;
};

// Gamma(mu) = 4 mu (1 - mu), the profile generated by the tanh ramp.
RampShape prototype_ramp();
// Throws std::domain_error outside [0,1].
double gamma_of_mu(double mu, const RampShape& shape);
// Golden-section search for the maximum of a unimodal profile; used to
// fill in mu_crit when a shape does not come with one.
double locate_mu_crit(const std::function<double(double)>& gamma,
                      double tol = 1e-12);

// Scalar drift with a saddle-node at (y0, r0) for y' = f(y) + b*r.
struct ScalarModel {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> ddf;
  double b = 1.0;
  double y0 = 0.0;
  double r0 = 1.0;
  double a0 = 1.0;  // = b for scalar states
  double a2 = 1.0;  // = f''(y0)/2
  // Optional closed forms; when absent, generic numeric paths are used.
  std::function<double(double)> antiderivative_f;  // F with F' = f
};

// f(y) = y^2 - 1: stable/unstable pair at -/+ sqrt(1 - q), saddle-node
// at q = 1, y = 0.
ScalarModel prototype_model();

struct BranchPair {
  double y_stable = 0.0;
  double y_unstable = 0.0;
  bool exists = false;
};

// Equilibria of y' = f(y) + b*q for the effective shift rate q >= 0.
// Generic models are solved by bracketed bisection refined with Newton
// steps to 1e-12; the prototype uses the closed form.
BranchPair equilibrium_branches(double q, const ScalarModel& m);

struct ExtendedEquilibrium {
  double x = 0.0;
  double mu = 0.0;
  int unstable_directions = 0;
  const char* name = "";
};

// The four equilibria of the (x, mu) extended system with their
// stability counts: S-, U- at mu=0 and S+, U+ at mu=1.
std::array<ExtendedEquilibrium, 4> extended_equilibria(const RampParameters& p,
                                                       const ScalarModel& m);

// Potential U_q(y) = -int f - q*b*y of the shifted scalar field, fixed by
// U_q(y0) = -q*b*y0 so different q values share a reference point.
double potential(double y, double q, const ScalarModel& m);

struct BarrierError : std::domain_error {
  using std::domain_error::domain_error;
};
// U_q(y_unstable) - U_q(y_stable); throws BarrierError once the branch
// pair has merged (q > r0).
double potential_barrier(double q, const ScalarModel& m);

// Stationary escape rate sqrt(alpha*beta)/(2 pi) exp(-dU0/D) across the
// unshifted barrier.
double kramers_rate(double D, const ScalarModel& m);

}  // namespace tipping

#endif
