#ifndef MDW_TESTS_ORACLE_HPP
#define MDW_TESTS_ORACLE_HPP

// Test-only reference machinery, independent of the library's solution paths:
// a Cash-Karp adaptive integrator for the per-mode oscillator ODEs and dense
// midpoint-rule quadrature for measure integrals.

#include <cmath>
#include <functional>
#include <vector>

#include "mdw/measure.hpp"
#include "mdw/nonlinearity.hpp"

namespace oracle {

using mdw::Real;
using mdw::Vec;

/// Adaptive Cash-Karp RK45 for u'' + gamma u' + lambda u = forcing(t).
/// Atom kicks are applied between segments by the caller.
inline void oscillator_rk45(Real lambda, Real gamma, const std::function<Real(Real)>& forcing,
                            Real& u, Real& v, Real t0, Real t1, Real tol) {
  Real t = t0;
  Real h = std::min(1e-3, t1 - t0);
  auto f = [&](Real tt, Real uu, Real vv, Real& du, Real& dv) {
    du = vv;
    dv = -gamma * vv - lambda * uu + forcing(tt);
  };
  while (t < t1) {
    h = std::min(h, t1 - t);
    Real k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v, k5u, k5v, k6u, k6v;
    f(t, u, v, k1u, k1v);
    f(t + h / 5, u + h * k1u / 5, v + h * k1v / 5, k2u, k2v);
    f(t + 3 * h / 10, u + h * (3 * k1u + 9 * k2u) / 40, v + h * (3 * k1v + 9 * k2v) / 40, k3u,
      k3v);
    f(t + 3 * h / 5, u + h * (3 * k1u / 10 - 9 * k2u / 10 + 6 * k3u / 5),
      v + h * (3 * k1v / 10 - 9 * k2v / 10 + 6 * k3v / 5), k4u, k4v);
    f(t + h, u + h * (-11 * k1u / 54 + 5 * k2u / 2 - 70 * k3u / 27 + 35 * k4u / 27),
      v + h * (-11 * k1v / 54 + 5 * k2v / 2 - 70 * k3v / 27 + 35 * k4v / 27), k5u, k5v);
    f(t + 7 * h / 8,
      u + h * (1631 * k1u / 55296 + 175 * k2u / 512 + 575 * k3u / 13824 +
               44275 * k4u / 110592 + 253 * k5u / 4096),
      v + h * (1631 * k1v / 55296 + 175 * k2v / 512 + 575 * k3v / 13824 +
               44275 * k4v / 110592 + 253 * k5v / 4096),
      k6u, k6v);
    const Real u5 = u + h * (37 * k1u / 378 + 250 * k3u / 621 + 125 * k4u / 594 +
                             512 * k6u / 1771);
    const Real v5 = v + h * (37 * k1v / 378 + 250 * k3v / 621 + 125 * k4v / 594 +
                             512 * k6v / 1771);
    const Real u4 = u + h * (2825 * k1u / 27648 + 18575 * k3u / 48384 + 13525 * k4u / 55296 +
                             277 * k5u / 14336 + k6u / 4);
    const Real v4 = v + h * (2825 * k1v / 27648 + 18575 * k3v / 48384 + 13525 * k4v / 55296 +
                             277 * k5v / 14336 + k6v / 4);
    const Real err = std::abs(u5 - u4) + std::abs(v5 - v4);
    const Real scale = tol * (1.0 + std::abs(u5) + std::abs(v5));
    if (err <= scale || h <= 1e-13) {
      t += h;
      u = u5;
      v = v5;
    }
    const Real factor = err > 0 ? 0.9 * std::pow(scale / err, 0.2) : 2.0;
    h *= std::min(4.0, std::max(0.2, factor));
  }
}

/// Reference solution of the measure-driven linear wave system on a grid:
/// per-dof Cash-Karp between atoms, literal velocity kicks at atoms in
/// [tau, t), density evaluated through the measure's own interpolant.
inline mdw::StatePair linear_reference(const mdw::ModeGrid& g, Real gamma,
                                       const mdw::StatePair& xi0, const mdw::VectorMeasure& mu,
                                       Real tau, Real t_end, Real tol) {
  mdw::StatePair out = mdw::StatePair::zero(g);
  std::vector<Real> cuts{tau, t_end};
  for (const auto& at : mu.atoms())
    if (at.t > tau && at.t < t_end) cuts.push_back(at.t);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (long j = 0; j < g.n_dof(); ++j) {
    Real u = xi0.u[j], v = xi0.v[j];
    v += mu.atom_at(tau)[j];
    auto forcing = [&](Real tt) { return mu.density_at(tt)[j]; };
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      oscillator_rk45(g.lambda()[j], gamma, forcing, u, v, cuts[c], cuts[c + 1], tol);
      if (cuts[c + 1] < t_end) v += mu.atom_at(cuts[c + 1])[j];
    }
    out.u[j] = u;
    out.v[j] = v;
  }
  return out;
}

/// High-resolution midpoint rule for scalar integrals (quadrature oracle).
inline Real midpoint_integral(const std::function<Real(Real)>& f, Real a, Real b, long n) {
  Real s = 0;
  for (long i = 0; i < n; ++i) s += f(a + (b - a) * (i + 0.5) / n);
  return s * (b - a) / n;
}

/// Method-of-lines reference for the full nonlinear system: classical RK4 on
///   u' = v,  v' = -gamma v - lambda u - f(u) + rho(t)
/// with a fixed fine step. Independent of the exact-flow splitting path.
inline mdw::StatePair nonlinear_rk4_reference(const mdw::ModeGrid& g,
                                              const mdw::Nonlinearity& nl, Real gamma,
                                              mdw::StatePair xi, const mdw::VectorMeasure& mu,
                                              Real tau, Real T, long n_steps) {
  using mdw::StatePair;
  using mdw::Vec;
  const mdw::Arr lam = g.lambda();
  auto rhs = [&](Real t, const StatePair& y) {
    StatePair d;
    d.u = y.v;
    d.v = (-gamma * y.v.array() - lam * y.u.array()).matrix() - mdw::apply_f(g, nl, y.u) +
          mu.density_at(t);
    return d;
  };
  xi.v += mu.atom_at(tau);
  const Real h = (T - tau) / n_steps;
  for (long i = 0; i < n_steps; ++i) {
    const Real t = tau + i * h;
    const StatePair k1 = rhs(t, xi);
    const StatePair k2 = rhs(t + h / 2, xi + k1 * (h / 2));
    const StatePair k3 = rhs(t + h / 2, xi + k2 * (h / 2));
    const StatePair k4 = rhs(t + h, xi + k3 * h);
    xi = xi + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    // atoms kick between steps (the schedule must align with atom times)
    const Real t1 = tau + (i + 1) * h;
    if (t1 < T) xi.v += mu.atom_at(t1);
  }
  return xi;
}

}  // namespace oracle

#endif
