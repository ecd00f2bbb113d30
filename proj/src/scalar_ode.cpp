#include "mdw/scalar_ode.hpp"

#include <algorithm>
#include <cmath>

namespace mdw {

namespace {

/// Dormand-Prince 5(4) on a scalar RHS with step control.
template <typename F>
Real rk45_segment(const F& rhs, Real y, Real t0, Real t1, Real rtol, Real atol,
                  const std::function<void(Real, Real)>& observe) {
  static constexpr Real c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  Real t = t0;
  Real h = std::min(t1 - t0, 0.05);
  while (t < t1) {
    h = std::min(h, t1 - t);
    const Real k1 = rhs(t, y);
    const Real k2 = rhs(t + c2 * h, y + h * (k1 / 5));
    const Real k3 = rhs(t + c3 * h, y + h * (3 * k1 / 40 + 9 * k2 / 40));
    const Real k4 = rhs(t + c4 * h, y + h * (44 * k1 / 45 - 56 * k2 / 15 + 32 * k3 / 9));
    const Real k5 = rhs(t + c5 * h, y + h * (19372 * k1 / 6561 - 25360 * k2 / 2187 +
                                             64448 * k3 / 6561 - 212 * k4 / 729));
    const Real k6 = rhs(t + h, y + h * (9017 * k1 / 3168 - 355 * k2 / 33 + 46732 * k3 / 5247 +
                                        49 * k4 / 176 - 5103 * k5 / 18656));
    const Real y5 = y + h * (35 * k1 / 384 + 500 * k3 / 1113 + 125 * k4 / 192 -
                             2187 * k5 / 6784 + 11 * k6 / 84);
    const Real k7 = rhs(t + h, y5);
    const Real y4 = y + h * (5179 * k1 / 57600 + 7571 * k3 / 16695 + 393 * k4 / 640 -
                             92097 * k5 / 339200 + 187 * k6 / 2100 + k7 / 40);
    const Real err = std::abs(y5 - y4);
    const Real tol = atol + rtol * std::max(std::abs(y), std::abs(y5));
    if (err <= tol || h <= 1e-12) {
      t += h;
      y = y5;
      if (observe) observe(t, y);
    }
    const Real factor = (err > 0) ? 0.9 * std::pow(tol / err, 0.2) : 2.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }
  return y;
}

}  // namespace

ScalarTrajectory ode_simulate(const ScalarModel& model, Real y_tau, Real tau, Real T,
                              Real sample_dt) {
  const VectorMeasure win = model.forcing.window(tau, T);
  auto rhs = [&](Real t, Real y) { return y - y * y * y + model.base + win.density_at(t)[0]; };

  ScalarTrajectory traj;
  traj.t.push_back(tau);
  traj.y.push_back(y_tau);
  Real y = y_tau;
  const Vec h0 = win.atom_at(tau);
  if (h0[0] != 0.0) {
    y += h0[0];
    traj.t.push_back(tau);
    traj.y.push_back(y);
  }

  // segment boundaries: sample grid plus atom times
  std::vector<Real> cuts;
  const long n = std::max<long>(1, std::lround((T - tau) / sample_dt));
  for (long i = 1; i <= n; ++i) cuts.push_back(tau + (T - tau) * i / n);
  for (const auto& at : win.atoms())
    if (at.t > tau && at.t <= T) cuts.push_back(at.t);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  Real t_prev = tau;
  for (Real tc : cuts) {
    if (tc > t_prev)
      y = rk45_segment(rhs, y, t_prev, tc, model.rtol, model.atol, nullptr);
    traj.t.push_back(tc);
    traj.y.push_back(y);
    const Vec h = win.atom_at(tc);
    if (h[0] != 0.0 && tc > tau) {
      y += h[0];
      traj.t.push_back(tc);
      traj.y.push_back(y);
    }
    t_prev = tc;
  }
  return traj;
}

Interval pullback_section(const ScalarModel& model, Real horizon, Real y_lo, Real y_hi,
                          int n_ics) {
  Interval out{1e300, -1e300};
  for (int i = 0; i < n_ics; ++i) {
    const Real y0 = y_lo + (y_hi - y_lo) * i / std::max(1, n_ics - 1);
    const auto traj = ode_simulate(model, y0, -horizon, 0.0, 0.1);
    out.lo = std::min(out.lo, traj.final_y());
    out.hi = std::max(out.hi, traj.final_y());
  }
  return out;
}

KernelAttractorReport kernel_vs_attractor(const ScalarModel& model,
                                          const std::vector<Real>& hull_shifts,
                                          const std::vector<Real>& start_times, Real run_length,
                                          Real y_lo, Real y_hi, int n_ics,
                                          const std::vector<Real>& horizons) {
  KernelAttractorReport rep;
  rep.attractor = {1e300, -1e300};
  // forward sweep: post-transient range over start times and ICs
  for (Real tau : start_times) {
    for (int i = 0; i < n_ics; ++i) {
      const Real y0 = y_lo + (y_hi - y_lo) * i / std::max(1, n_ics - 1);
      const auto traj = ode_simulate(model, y0, tau, tau + run_length, 0.02);
      const Real t_settle = tau + 0.6 * run_length;
      for (std::size_t j = 0; j < traj.t.size(); ++j) {
        if (traj.t[j] < t_settle) continue;
        rep.attractor.lo = std::min(rep.attractor.lo, traj.y[j]);
        rep.attractor.hi = std::max(rep.attractor.hi, traj.y[j]);
      }
    }
  }
  // kernel union: pullback sections along hull samples + limit members
  rep.kernel_union = {1e300, -1e300};
  std::vector<GlobalMeasure> members = hull_samples(model.forcing, hull_shifts, true);
  for (const auto& z : members) {
    ScalarModel m = model;
    m.forcing = z;
    const Interval sec = pullback_section(m, horizons.back(), y_lo, y_hi, n_ics);
    rep.kernel_union.lo = std::min(rep.kernel_union.lo, sec.lo);
    rep.kernel_union.hi = std::max(rep.kernel_union.hi, sec.hi);
  }
  rep.gap_hi = rep.attractor.hi - rep.kernel_union.hi;
  return rep;
}

}  // namespace mdw
