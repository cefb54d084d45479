#include "tipping/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tipping {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
// Difference between the 5th order weights and the embedded 4th order ones.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense output weights (Hairer-Norsett-Wanner continuous extension).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

size_t OdeSolution::locate(double t) const {
  const bool fwd = t_end >= t_start;
  size_t lo = 0, hi = steps.size() - 1;
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    double right = steps[mid].t + steps[mid].h;
    if (fwd ? (t <= right) : (t >= right))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

void OdeSolution::eval(double t, std::span<double> out) const {
  if (steps.empty()) throw std::runtime_error("ode: empty solution");
  const bool fwd = t_end >= t_start;
  t = fwd ? std::clamp(t, t_start, t_end) : std::clamp(t, t_end, t_start);
  const OdeStep& s = steps[locate(t)];
  const double th = (t - s.t) / s.h;
  const double th1 = 1.0 - th;
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = s.c1[i] +
             th * (s.c2[i] + th1 * (s.c3[i] + th * (s.c4[i] + th1 * s.c5[i])));
}

double OdeSolution::eval_component(double t, size_t i) const {
  std::vector<double> buf(y_final.size());
  eval(t, buf);
  return buf[i];
}

Trajectory OdeSolution::sample_component(const std::vector<double>& times,
                                         size_t i,
                                         const std::string& label) const {
  Trajectory tr;
  tr.times = times;
  tr.values.reserve(times.size());
  tr.label = label;
  tr.truncated = truncated;
  for (double t : times) tr.values.push_back(eval_component(t, i));
  return tr;
}

OdeSolution integrate_ode(const OdeRhs& rhs, std::span<const double> y0,
                          double t0, double t1, const OdeOptions& opts) {
  if (t1 == t0) throw std::invalid_argument("ode: empty time interval");
  const size_t n = y0.size();
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);

  std::vector<double> y(y0.begin(), y0.end());
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  std::vector<double> ytmp(n), ynew(n), err(n);

  OdeSolution sol;
  sol.t_start = t0;
  double t = t0;
  rhs(t, y, k1);
  if (!all_finite(k1)) throw std::runtime_error("ode: non-finite initial derivative");

  double h;
  if (opts.initial_step > 0.0) {
    h = opts.initial_step;
  } else {
    // Crude but safe: scale so the first explicit Euler move is small.
    double d0 = max_abs(y) + opts.atol;
    double d1v = max_abs(k1) + opts.atol;
    h = std::min(span, 0.01 * d0 / d1v);
    h = std::min(std::max(h, 1e-10 * span), span);
  }
  if (opts.max_step > 0.0) h = std::min(h, opts.max_step);

  long steps_taken = 0;
  const double hmin_floor =
      16.0 * std::numeric_limits<double>::epsilon() * span;

  while (dir * (t1 - t) > 0.0) {
    if (++steps_taken > opts.max_steps)
      throw std::runtime_error("ode: step budget exhausted");
    h = std::min(h, std::abs(t1 - t));
    const double hs = dir * h;

    auto stage = [&](std::vector<double>& out, double frac,
                     std::initializer_list<std::pair<double, const std::vector<double>*>> terms) {
      for (size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (const auto& [w, k] : terms) acc += w * (*k)[i];
        ytmp[i] = y[i] + hs * acc;
      }
      rhs(t + frac * hs, ytmp, out);
    };

    stage(k2, c2, {{a21, &k1}});
    stage(k3, c3, {{a31, &k1}, {a32, &k2}});
    stage(k4, c4, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    stage(k5, c5, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    stage(k6, 1.0, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    for (size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                             b5 * k5[i] + b6 * k6[i]);
    rhs(t + hs, ynew, k7);

    double err_norm = 0.0;
    bool finite = all_finite(ynew) && all_finite(k7);
    if (finite) {
      for (size_t i = 0; i < n; ++i) {
        err[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                       e6 * k6[i] + e7 * k7[i]);
        double sc = opts.atol +
                    opts.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        double r = err[i] / sc;
        err_norm += r * r;
      }
      err_norm = std::sqrt(err_norm / n);
    }

    if (!finite || err_norm > 1.0) {
      // Rejected; if the state is already enormous treat it as blow-up.
      if (!finite && max_abs(y) > 0.01 * opts.blowup_cap) {
        sol.truncated = true;
        break;
      }
      double fac = finite ? std::max(0.2, 0.9 * std::pow(err_norm, -0.25)) : 0.2;
      h *= fac;
      if (h < hmin_floor) {
        if (max_abs(y) > 0.01 * opts.blowup_cap) {
          sol.truncated = true;
          break;
        }
        throw OdeStepUnderflow("ode: step size underflow at t=" +
                               std::to_string(t));
      }
      continue;
    }

    // Accepted: store the dense-output polynomial for this step.
    OdeStep st;
    st.t = t;
    st.h = hs;
    st.c1.resize(n);
    st.c2.resize(n);
    st.c3.resize(n);
    st.c4.resize(n);
    st.c5.resize(n);
    for (size_t i = 0; i < n; ++i) {
      const double dy = ynew[i] - y[i];
      const double bspl = hs * k1[i] - dy;
      st.c1[i] = y[i];
      st.c2[i] = dy;
      st.c3[i] = bspl;
      st.c4[i] = dy - hs * k7[i] - bspl;
      st.c5[i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                       d6 * k6[i] + d7 * k7[i]);
    }
    sol.steps.push_back(std::move(st));

    t += hs;
    y.swap(ynew);
    k1.swap(k7);  // first-same-as-last

    if (max_abs(y) > opts.blowup_cap) {
      sol.truncated = true;
      break;
    }

    double fac = err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
    h *= std::clamp(fac, 0.2, 5.0);
    if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
  }

  sol.t_end = t;
  sol.y_final = y;
  if (sol.steps.empty())
    throw std::runtime_error("ode: no steps accepted");
  return sol;
}

}  // namespace tipping
