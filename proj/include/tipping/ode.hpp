#ifndef TIPPING_ODE_HPP
#define TIPPING_ODE_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace tipping {

// Time series of a scalar quantity sampled on a strictly increasing grid.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> values;
  std::string label;
  bool truncated = false;  // stopped early at the blow-up cap
};

using OdeRhs =
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double blowup_cap = 1e6;   // |y_i| beyond this truncates the solution
  double max_step = 0.0;     // 0: no explicit bound
  long max_steps = 50'000'000;
  double initial_step = 0.0;  // 0: estimated from the first derivative
};

struct OdeStepUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One accepted step with the coefficients of the order-4 continuous
// extension, so the solution can be evaluated anywhere inside the step.
struct OdeStep {
  double t;  // left end
  double h;  // signed width
  std::vector<double> c1, c2, c3, c4, c5;
};

class OdeSolution {
 public:
  double t_start = 0.0;
  double t_end = 0.0;  // last time actually reached
  bool truncated = false;
  std::vector<OdeStep> steps;
  std::vector<double> y_final;

  // Dense evaluation; t is clamped to [t_start, t_end].
  void eval(double t, std::span<double> out) const;
  double eval_component(double t, size_t i) const;
  Trajectory sample_component(const std::vector<double>& times, size_t i,
                              const std::string& label) const;

 private:
  size_t locate(double t) const;
};

// Embedded Dormand-Prince 5(4) pair with PI-free standard step control.
// Integrates from t0 to t1 (either direction). If the state exceeds
// opts.blowup_cap the partial solution is returned with truncated=true;
// a step size underflow throws OdeStepUnderflow.
OdeSolution integrate_ode(const OdeRhs& rhs, std::span<const double> y0,
                          double t0, double t1, const OdeOptions& opts = {});

}  // namespace tipping

#endif
