#include "mdw/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace mdw {

std::vector<Real> Trajectory::times() const {
  std::vector<Real> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.t);
  return out;
}

std::vector<Real> Trajectory::energies() const {
  std::vector<Real> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.energy_e);
  return out;
}

std::vector<Real> Trajectory::l12_norms() const {
  std::vector<Real> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.l12);
  return out;
}

StatePair strang_step(const ModeGrid& g, const LinearPropagator& prop, const Nonlinearity& nl,
                      const StatePair& xi, Real t0, Real dt, const VectorMeasure& segment) {
  // an atom sitting exactly at t0 belongs to this step (the first Duhamel
  // half covers [t0, t0 + dt/2)); one at t0 + dt belongs to the next step
  for (const auto& at : segment.atoms())
    if (at.t > t0 && at.t < t0 + dt)
      throw std::logic_error("strang_step: interior atom in segment");
  const Real tm = t0 + 0.5 * dt;
  StatePair mid = prop.duhamel(xi, segment, t0, tm);
  mid.v -= dt * apply_f(g, nl, mid.u);
  return prop.duhamel(mid, segment, tm, t0 + dt);
}

namespace {

std::vector<Real> build_schedule(Real tau, Real T, long n, const std::vector<Atom>& atoms) {
  std::vector<Real> times;
  for (long i = 0; i <= n; ++i) times.push_back(tau + (T - tau) * i / n);
  for (const auto& at : atoms)
    if (at.t > tau && at.t < T) times.push_back(at.t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  times.back() = T;
  return times;
}

}  // namespace

Trajectory simulate(const ModeGrid& g, const LinearPropagator& prop, const Nonlinearity& nl,
                    StatePair xi_tau, Real tau, Real T, const GlobalMeasure& mu, Real dt,
                    const SimOptions& opt) {
  if (!(T > tau) || !(dt > 0)) throw std::invalid_argument("simulate: bad time window");
  if (dt > opt.max_dt) throw std::invalid_argument("simulate: dt exceeds the configured maximum");
  const VectorMeasure win = mu.window(tau, T);
  const long n_steps = std::max<long>(1, std::lround((T - tau) / dt));
  Trajectory traj;
  traj.tau = tau;
  traj.T = T;
  traj.dt = (T - tau) / n_steps;
  traj.gamma = prop.gamma();

  auto record = [&](Real t, const StatePair& st, const std::optional<StatePair>& post, long k) {
    Sample s;
    s.t = t;
    s.state = st;
    s.post = post;
    s.energy_e = energy_norm(g, st);
    if (opt.record_l12 && (k % opt.sample_stride == 0 || post.has_value()))
      s.l12 = norm_lp(g, st.u, 12.0);
    traj.samples.push_back(std::move(s));
  };

  // Atom kicks are owned by the step's Duhamel half (atoms in [t0, t0+dt/2)
  // enter the linear flow exactly at t0), so the driver only records the
  // pre/post pair at atom times and never applies a kick itself.
  StatePair xi = xi_tau;
  {
    const Vec h0 = win.atom_at(tau);
    if (h0.lpNorm<Eigen::Infinity>() != 0.0) {
      StatePair post = xi;
      post.v += h0;
      record(tau, xi, post, 0);
    } else {
      record(tau, xi, std::nullopt, 0);
    }
  }

  const std::vector<Real> sched = build_schedule(tau, T, n_steps, win.atoms());
  for (std::size_t i = 0; i + 1 < sched.size(); ++i) {
    const Real t0 = sched[i], t1 = sched[i + 1];
    xi = strang_step(g, prop, nl, xi, t0, t1 - t0, win);
    const Real e = energy_norm(g, xi);
    if (!(e < opt.energy_ceiling)) {
      traj.blew_up = true;
      record(t1, xi, std::nullopt, static_cast<long>(i + 1));
      throw BlowUpError(t1, e, traj.samples[traj.samples.size() - 2]);
    }
    // the sample at t1 is the left limit; an atom at t1 (whether interior to
    // the run or exactly at T) shows up as a recorded post-kick state
    const Vec h = win.atom_at(t1);
    if (h.lpNorm<Eigen::Infinity>() != 0.0) {
      StatePair post = xi;
      post.v += h;
      record(t1, xi, post, static_cast<long>(i + 1));
    } else {
      record(t1, xi, std::nullopt, static_cast<long>(i + 1));
    }
  }
  return traj;
}

Real default_delta(Real gamma) { return std::min(gamma / 4.0, 1.0 / (4.0 + gamma)); }

Real perturbed_energy(const ModeGrid& g, const Nonlinearity& nl, const StatePair& xi, Real gamma,
                      Real delta) {
  return 0.5 * energy_norm_sq(g, xi) + 0.5 * delta * gamma * xi.u.squaredNorm() +
         delta * xi.v.dot(xi.u) + potential_energy(g, nl, xi.u);
}

Real b_form_value(const ModeGrid& g, const StatePair& xi, Real gamma, Real delta) {
  const Real nv2 = xi.v.squaredNorm();
  const Real nu2 = xi.u.squaredNorm();
  const Real grad2 = norm_hs(g, xi.u, 1.0) * norm_hs(g, xi.u, 1.0) - nu2;  // ||grad u||^2
  return (gamma - 1.5 * delta) * nv2 - delta * delta * xi.v.dot(xi.u) +
         (0.5 * delta - 0.5 * gamma * delta * delta) * nu2 + 0.5 * delta * grad2;
}

Real b_form_min_eigenvalue(Real gamma, Real delta) {
  Mat2 M;
  M << gamma - 1.5 * delta, -0.5 * delta * delta, -0.5 * delta * delta,
      0.5 * delta - 0.5 * gamma * delta * delta;
  Eigen::SelfAdjointEigenSolver<Mat2> es(M);
  return es.eigenvalues().minCoeff();
}

EnergyLedger ledger(const ModeGrid& g, const Nonlinearity& nl, const Trajectory& traj,
                    const GlobalMeasure& mu, Real delta) {
  EnergyLedger led;
  led.delta = delta > 0 ? delta : default_delta(traj.gamma);
  led.min_B_eigenvalue = b_form_min_eigenvalue(traj.gamma, led.delta);
  const Real gamma = traj.gamma;
  const VectorMeasure win = mu.window(traj.tau, traj.T);

  const auto& ss = traj.samples;
  std::vector<Real> E(ss.size());
  std::vector<Real> E_post(ss.size());
  for (std::size_t i = 0; i < ss.size(); ++i) {
    E[i] = nonlinear_energy(g, nl, ss[i].state);
    E_post[i] = ss[i].post ? nonlinear_energy(g, nl, *ss[i].post) : E[i];
    led.perturbed_energy.push_back(perturbed_energy(g, nl, ss[i].state, gamma, led.delta));
    led.b_form.push_back(b_form_value(g, ss[i].state, gamma, led.delta));
  }

  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (ss[i].post) {  // kick row: exact algebraic energy jump
      const Vec h = ss[i].post->v - ss[i].state.v;
      LedgerRow row;
      row.t0 = row.t1 = ss[i].t;
      row.dE = E_post[i] - E[i];
      row.dissipation = 0;
      row.density_work = 0;
      row.atom_work = 0.5 * (ss[i].post->v + ss[i].state.v).dot(h);
      row.residual = row.dE - row.atom_work;
      led.max_atom_residual = std::max(led.max_atom_residual, std::abs(row.residual));
      led.rows.push_back(row);
    }
    if (i + 1 == ss.size()) break;
    const Real t0 = ss[i].t, t1 = ss[i + 1].t;
    const Real dt = t1 - t0;
    if (dt <= 0) continue;
    const StatePair& from = ss[i].post ? *ss[i].post : ss[i].state;
    const StatePair& to = ss[i + 1].state;
    LedgerRow row;
    row.t0 = t0;
    row.t1 = t1;
    row.dE = E[i + 1] - E_post[i];
    row.dissipation = -gamma * 0.5 * dt * (from.v.squaredNorm() + to.v.squaredNorm());
    row.density_work =
        0.5 * dt * (from.v.dot(win.density_at(t0)) + to.v.dot(win.density_at(t1)));
    row.atom_work = 0;
    row.residual = row.dE - row.dissipation - row.density_work;
    led.rows.push_back(row);
  }
  for (const auto& r : led.rows) {
    led.total_residual += r.residual;
    led.residual_l1 += std::abs(r.residual);
  }
  return led;
}

DependenceReport continuous_dependence(const ModeGrid& g, const Trajectory& t1,
                                       const Trajectory& t2) {
  if (t1.samples.size() != t2.samples.size())
    throw std::invalid_argument("continuous_dependence: sample schedules differ");
  DependenceReport rep;
  const Real d0 = energy_norm(g, t1.samples[0].state - t2.samples[0].state);
  Real integral = 0;
  Real prev_t = t1.samples[0].t;
  Real prev_integrand = 1.0 + std::pow(t1.samples[0].l12, 4) + std::pow(t2.samples[0].l12, 4);
  for (std::size_t i = 0; i < t1.samples.size(); ++i) {
    const Real t = t1.samples[i].t;
    const Real integrand = 1.0 + std::pow(t1.samples[i].l12, 4) + std::pow(t2.samples[i].l12, 4);
    integral += 0.5 * (t - prev_t) * (prev_integrand + integrand);
    prev_t = t;
    prev_integrand = integrand;
    const Real sep = energy_norm(g, t1.samples[i].state - t2.samples[i].state);
    rep.times.push_back(t);
    rep.separation.push_back(sep);
    if (d0 > 0 && sep > d0 && integral > 1e-12)
      rep.fitted_constant = std::max(rep.fitted_constant, std::log(sep / d0) / integral);
  }
  rep.bounded = rep.fitted_constant <= 100.0;
  return rep;
}

std::vector<Real> window_strichartz_series(const Trajectory& traj) {
  std::vector<Real> out;
  const auto& ss = traj.samples;
  if (ss.size() < 3) return out;
  // uniform sub-schedule: keep samples on the base grid, skip atom inserts
  const Real dt = traj.dt;
  std::vector<Real> t, l12;
  for (const auto& s : ss) {
    const Real frac = (s.t - traj.tau) / dt;
    if (std::abs(frac - std::round(frac)) > 1e-9) continue;
    if (!t.empty() && !(s.t > t.back())) continue;
    t.push_back(s.t);
    l12.push_back(s.l12);
  }
  for (Real w0 = traj.tau; w0 + 1.0 <= traj.T + 1e-9; w0 += 1.0) {
    std::vector<Real> vals;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] >= w0 - 1e-12 && t[i] <= w0 + 1.0 + 1e-12) vals.push_back(l12[i]);
    if (vals.size() >= 3) out.push_back(strichartz_window(vals, dt));
  }
  return out;
}

DissipativityReport dissipativity_scan(const ModeGrid& g, const LinearPropagator& prop,
                                       const Nonlinearity& nl,
                                       const std::vector<StatePair>& initial_states,
                                       const GlobalMeasure& mu, Real tau, Real T, Real dt,
                                       Real transient, unsigned threads) {
  DissipativityReport rep;
  const std::size_t n = initial_states.size();
  std::vector<Trajectory> trajs(n);
  std::vector<std::exception_ptr> errs(n);
  parallel_for(n, threads, [&](std::size_t i) {
    try {
      LinearPropagator local(g, prop.gamma());  // per-thread block cache
      trajs[i] = simulate(g, local, nl, initial_states[i], tau, T, mu, dt);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  });
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  std::vector<Real> all_windows;
  for (std::size_t i = 0; i < n; ++i) {
    Real sup = 0;
    for (const auto& s : trajs[i].samples)
      if (s.t >= transient) sup = std::max(sup, s.energy_e);
    rep.final_sup_energy.push_back(sup);
    auto wins = window_strichartz_series(trajs[i]);
    const std::size_t skip = static_cast<std::size_t>(std::max(0.0, transient - tau));
    for (std::size_t w = skip; w < wins.size(); ++w) all_windows.push_back(wins[w]);
  }
  const Real rmax = *std::max_element(rep.final_sup_energy.begin(), rep.final_sup_energy.end());
  const Real rmin = *std::min_element(rep.final_sup_energy.begin(), rep.final_sup_energy.end());
  rep.absorbing_radius = 1.1 * rmax;
  rep.spread = rmax - rmin;
  // absorption time: the moment after the last exceedance of the ball; the
  // no-exit flag asks that every member is absorbed before the transient cut
  for (std::size_t i = 0; i < n; ++i) {
    Real entry = tau;
    for (const auto& s : trajs[i].samples)
      if (s.energy_e > rep.absorbing_radius) entry = s.t;
    rep.entry_times.push_back(entry);
    if (entry > transient) rep.no_exit = false;
  }
  if (!all_windows.empty()) {
    std::vector<Real> sorted = all_windows;
    std::sort(sorted.begin(), sorted.end());
    rep.strichartz_max = sorted.back();
    rep.strichartz_median = sorted[sorted.size() / 2];
  }
  return rep;
}

}  // namespace mdw
