#include "tipping/ramp_model.hpp"

#include <array>
#include <cmath>

namespace tipping {

namespace {
constexpr double kPi = 3.14159265358979323846;

double integrate_simpson(const std::function<double(double)>& f, double a,
                         double b, int panels = 512) {
  // Composite Simpson; panels kept even.
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}
}  // namespace

RampParameters RampParameters::from_rho(double rho, double lambda_max) {
  if (rho < 0.0 || lambda_max <= 0.0)
    throw std::domain_error("ramp: need rho >= 0 and lambda_max > 0");
  RampParameters p;
  p.rho = rho;
  p.lambda_max = lambda_max;
  p.epsilon = rho * lambda_max / 4.0;
  p.r = rho * lambda_max * lambda_max / 4.0;
  p.mu_crit = 0.5;
  return p;
}

RampParameters RampParameters::from_eps_r(double epsilon, double r) {
  if (epsilon <= 0.0 || r <= 0.0)
    throw std::domain_error("ramp: need epsilon > 0 and r > 0");
  RampParameters p;
  p.epsilon = epsilon;
  p.r = r;
  p.lambda_max = r / epsilon;
  p.rho = 4.0 * epsilon * epsilon / r;
  p.mu_crit = 0.5;
  return p;
}

ConvertedParameters convert_parameters(double rho, double lambda_max) {
  if (rho < 0.0 || lambda_max <= 0.0)
    throw std::domain_error("convert_parameters: invalid arguments");
  return {rho * lambda_max / 4.0, rho * lambda_max * lambda_max / 4.0};
}

void convert_parameters_inverse(double epsilon, double r, double* rho,
                                double* lambda_max) {
  if (epsilon == 0.0)
    throw std::domain_error("convert_parameters_inverse: epsilon = 0");
  *lambda_max = r / epsilon;
  *rho = 4.0 * epsilon * epsilon / r;
}

double lambda_of_t(double t, const RampParameters& p) {
  return 0.5 * p.lambda_max *
         (std::tanh(0.5 * p.lambda_max * p.rho * t) + 1.0);
}

double mu_of_t(double t, const RampParameters& p) {
  // Logistic form of the same profile, stable for large |t|.
  return 1.0 / (1.0 + std::exp(-4.0 * p.epsilon * t));
}

double t_of_mu(double mu, const RampParameters& p) {
  if (mu <= 0.0 || mu >= 1.0)
    throw std::domain_error("t_of_mu: need mu in (0,1)");
  return std::log(mu / (1.0 - mu)) / (4.0 * p.epsilon);
}

RampShape prototype_ramp() {
  RampShape s;
  s.gamma = [](double mu) { return 4.0 * mu * (1.0 - mu); };
  s.dgamma = [](double mu) { return 4.0 - 8.0 * mu; };
  s.ddgamma = [](double) { return -8.0; };
  s.mu_crit = 0.5;
  return s;
}

double gamma_of_mu(double mu, const RampShape& shape) {
  if (mu < 0.0 || mu > 1.0)
    throw std::domain_error("gamma_of_mu: mu outside [0,1]");
  return shape.gamma(mu);
}

double locate_mu_crit(const std::function<double(double)>& gamma, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 1.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = gamma(c), fd = gamma(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = gamma(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = gamma(d);
    }
  }
  return 0.5 * (a + b);
}

ScalarModel prototype_model() {
  ScalarModel m;
  m.f = [](double y) { return y * y - 1.0; };
  m.df = [](double y) { return 2.0 * y; };
  m.ddf = [](double) { return 2.0; };
  m.b = 1.0;
  m.y0 = 0.0;
  m.r0 = 1.0;
  m.a0 = 1.0;
  m.a2 = 1.0;
  m.antiderivative_f = [](double y) { return y * y * y / 3.0 - y; };
  return m;
}

namespace {

bool is_prototype(const ScalarModel& m) {
  // Cheap structural check so the closed form is used when it applies.
  return m.y0 == 0.0 && m.r0 == 1.0 && m.b == 1.0 && m.f && m.f(0.0) == -1.0 &&
         m.f(2.0) == 3.0 && m.f(-2.0) == 3.0;
}

// Root of g on [lo, hi] with g(lo), g(hi) of opposite sign: bisection with
// Newton refinement once the bracket is tight.
double solve_bracketed(const std::function<double(double)>& g,
                       const std::function<double(double)>& dg, double lo,
                       double hi, double tol) {
  double flo = g(lo), fhi = g(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0)
    throw std::runtime_error("solve_bracketed: no sign change");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fmid = g(mid);
    if (fmid == 0.0 || hi - lo < tol) {
      // Newton polish from the midpoint.
      double x = mid;
      for (int k = 0; k < 8; ++k) {
        double d = dg(x);
        if (d == 0.0) break;
        double step = g(x) / d;
        x -= step;
        if (x < lo - tol || x > hi + tol) {
          x = mid;
          break;
        }
        if (std::abs(step) < tol * 1e-3) break;
      }
      return x;
    }
    if (flo * fmid < 0.0) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

BranchPair equilibrium_branches(double q, const ScalarModel& m) {
  if (q < 0.0) throw std::domain_error("equilibrium_branches: q < 0");
  BranchPair out;
  if (q > m.r0) return out;  // merged and gone
  if (is_prototype(m)) {
    double s = std::sqrt(1.0 - q);
    out.y_stable = -s;
    out.y_unstable = s;
    out.exists = true;
    return out;
  }
  auto g = [&](double y) { return m.f(y) + m.b * q; };
  if (q == m.r0) {
    out.y_stable = out.y_unstable = m.y0;
    out.exists = true;
    return out;
  }
  // The pair straddles y0; widen outward until both signs are bracketed.
  const double tol = 1e-12;
  const double gmid = g(m.y0);
  double width = std::sqrt(std::max((m.r0 - q) * m.a0 / m.a2, 1e-30));
  double lo = m.y0 - 2.0 * width, hi = m.y0 + 2.0 * width;
  for (int it = 0; it < 60 && g(lo) * gmid >= 0.0; ++it)
    lo = m.y0 - (m.y0 - lo) * 2.0;
  for (int it = 0; it < 60 && g(hi) * gmid >= 0.0; ++it)
    hi = m.y0 + (hi - m.y0) * 2.0;
  out.y_stable = solve_bracketed(g, m.df, lo, m.y0, tol);
  out.y_unstable = solve_bracketed(g, m.df, m.y0, hi, tol);
  if (out.y_stable > out.y_unstable) std::swap(out.y_stable, out.y_unstable);
  out.exists = true;
  return out;
}

std::array<ExtendedEquilibrium, 4> extended_equilibria(const RampParameters& p,
                                                       const ScalarModel& m) {
  BranchPair base = equilibrium_branches(0.0, m);
  if (!base.exists)
    throw std::runtime_error("extended_equilibria: no base branches");
  const double shift = p.r / p.epsilon;  // = lambda_max
  return {{{base.y_stable, 0.0, 1, "S-"},
           {base.y_unstable, 0.0, 2, "U-"},
           {base.y_stable - shift * m.b, 1.0, 0, "S+"},
           {base.y_unstable - shift * m.b, 1.0, 1, "U+"}}};
}

double potential(double y, double q, const ScalarModel& m) {
  double F;
  if (m.antiderivative_f) {
    F = m.antiderivative_f(y) - m.antiderivative_f(m.y0);
  } else {
    F = integrate_simpson(m.f, m.y0, y);
  }
  return -F - q * m.b * (y - m.y0);
}

double potential_barrier(double q, const ScalarModel& m) {
  BranchPair b = equilibrium_branches(q, m);
  if (!b.exists)
    throw BarrierError("potential_barrier: no branch pair at q > r0");
  return potential(b.y_unstable, q, m) - potential(b.y_stable, q, m);
}

double kramers_rate(double D, const ScalarModel& m) {
  if (D <= 0.0) throw std::domain_error("kramers_rate: D <= 0");
  BranchPair b = equilibrium_branches(0.0, m);
  if (!b.exists) throw std::runtime_error("kramers_rate: no branches at q=0");
  const double alpha = -m.df(b.y_stable);  // U'' at the well
  const double beta = m.df(b.y_unstable);  // -U'' at the barrier top
  const double dU0 = potential_barrier(0.0, m);
  return std::sqrt(alpha * beta) / (2.0 * kPi) * std::exp(-dU0 / D);
}

}  // namespace tipping
