#ifndef MDW_FIELDS_HPP
#define MDW_FIELDS_HPP

#include <cmath>

#include "mdw/grid.hpp"

namespace mdw {

/// Energy-space element xi = (u, du/dt), both in the grid's coefficient basis.
struct StatePair {
  Vec u;
  Vec v;

  static StatePair zero(const ModeGrid& g) {
    return {Vec::Zero(g.n_dof()), Vec::Zero(g.n_dof())};
  }
  StatePair operator+(const StatePair& o) const { return {u + o.u, v + o.v}; }
  StatePair operator-(const StatePair& o) const { return {u - o.u, v - o.v}; }
  StatePair operator*(Real c) const { return {u * c, v * c}; }
};

/// H^{alpha,2} norm via the Bessel multiplier on coefficients.
inline Real norm_hs(const ModeGrid& g, const Vec& u, Real alpha) {
  if (alpha == 0.0) return u.norm();
  return std::sqrt((g.lambda().pow(alpha) * u.array().square()).sum());
}

inline Real norm_l2(const Vec& u) { return u.norm(); }

/// Grid-quadrature L^p norm (p = inf means max on the padded grid).
inline Real norm_lp(const ModeGrid& g, const Vec& u, Real p) {
  return g.grid_lp(g.to_grid(u), p);
}

/// H^{alpha,p} norm: multiplier in coefficient space, then grid L^p.
inline Real norm_hap(const ModeGrid& g, const Vec& u, Real alpha, Real p) {
  if (p == 2.0) return norm_hs(g, u, alpha);
  Vec w = (g.lambda().pow(alpha / 2.0) * u.array()).matrix();
  return g.grid_lp(g.to_grid(w), p);
}

/// Squared E^alpha norm: ||u||_{H^{1+alpha}}^2 + ||v||_{H^alpha}^2.
inline Real energy_norm_sq(const ModeGrid& g, const StatePair& xi, Real alpha = 0.0) {
  const Real a = norm_hs(g, xi.u, 1.0 + alpha);
  const Real b = norm_hs(g, xi.v, alpha);
  return a * a + b * b;
}

inline Real energy_norm(const ModeGrid& g, const StatePair& xi, Real alpha = 0.0) {
  return std::sqrt(energy_norm_sq(g, xi, alpha));
}

/// Weak-norm H x H^{-1} of the pair, used for weak-topology diagnostics.
inline Real weak_norm(const ModeGrid& g, const StatePair& xi) {
  const Real a = xi.u.norm();
  const Real b = norm_hs(g, xi.v, -1.0);
  return std::sqrt(a * a + b * b);
}

/// Orthoprojector P_{n'} keeping wavevectors with max_i |k_i| <= n'/2 and its
/// complement; P + Q reconstructs exactly and the split is orthogonal in
/// every H^alpha inner product (the basis is shared).
struct ProjectionSplit {
  StatePair head;
  StatePair tail;
};

inline ProjectionSplit project(const ModeGrid& g, const StatePair& xi, int n_prime) {
  const int kcut = n_prime / 2;
  ProjectionSplit out{StatePair::zero(g), StatePair::zero(g)};
  const auto& kk = g.dof_wavevector();
  for (long j = 0; j < g.n_dof(); ++j) {
    const bool keep = std::abs(kk[j][0]) <= kcut && std::abs(kk[j][1]) <= kcut &&
                      std::abs(kk[j][2]) <= kcut;
    StatePair& dst = keep ? out.head : out.tail;
    dst.u[j] = xi.u[j];
    dst.v[j] = xi.v[j];
  }
  return out;
}

/// Scale a state to a prescribed E-norm (no-op for the zero state).
inline StatePair scaled_to_energy(const ModeGrid& g, const StatePair& xi, Real target) {
  const Real e = energy_norm(g, xi);
  if (e == 0.0) return xi;
  return xi * (target / e);
}

/// Random smooth field: coefficients ~ N(0,1) * lambda^{-decay/2}, giving an
/// H^s-regular sample for s < decay - d/2 in the usual sense.
inline Vec random_field(const ModeGrid& g, Rng& rng, Real decay) {
  Vec u(g.n_dof());
  for (long j = 0; j < g.n_dof(); ++j)
    u[j] = rng.normal() * std::pow(g.lambda()[j], -0.5 * decay);
  return u;
}

}  // namespace mdw

#endif
