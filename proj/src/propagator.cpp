#include "mdw/propagator.hpp"

#include <cmath>
#include <cstring>

#include "mdw/quadrature.hpp"

namespace mdw {

OscKernel osc_kernel(Real q, Real t) {
  const Real x = q * t * t;
  if (std::abs(x) < 1e-6) {
    // c = sum (-x)^m / (2m)!,  s = t * sum (-x)^m / (2m+1)!
    Real c = 1.0, s = 1.0, term_c = 1.0, term_s = 1.0;
    for (int m = 1; m <= 5; ++m) {
      term_c *= -x / ((2 * m - 1) * (2 * m));
      term_s *= -x / ((2 * m) * (2 * m + 1));
      c += term_c;
      s += term_s;
    }
    return {c, t * s};
  }
  if (q > 0) {
    const Real w = std::sqrt(q);
    return {std::cos(w * t), std::sin(w * t) / w};
  }
  const Real w = std::sqrt(-q);
  return {std::cosh(w * t), std::sinh(w * t) / w};
}

Mat2 mode_block(Real lambda, Real gamma, Real t) {
  if (t < 0) throw std::domain_error("mode_block: t must be >= 0");
  const Real q = lambda - 0.25 * gamma * gamma;
  const auto [c, s] = osc_kernel(q, t);
  const Real e = std::exp(-0.5 * gamma * t);
  Mat2 B;
  B << e * (c + 0.5 * gamma * s), e * s, -lambda * e * s, e * (c - 0.5 * gamma * s);
  return B;
}

Real decay_rate(Real gamma) {
  if (gamma <= 2.0) return 0.5 * gamma;
  return 0.5 * (gamma - std::sqrt(gamma * gamma - 4.0));
}

LinearPropagator::LinearPropagator(const ModeGrid& grid, Real gamma)
    : grid_(&grid), gamma_(gamma) {
  if (gamma < 0) throw std::domain_error("LinearPropagator: gamma >= 0");
  const Real lmax = grid.lambda().maxCoeff();
  osc_panel_ = std::min(1.0, 2.0 * M_PI / std::sqrt(lmax));
}

const LinearPropagator::BlockSet& LinearPropagator::blocks(Real t) const {
  std::uint64_t key;
  static_assert(sizeof(key) == sizeof(t));
  std::memcpy(&key, &t, sizeof(key));
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const long n = grid_->n_dof();
  BlockSet B{Arr(n), Arr(n), Arr(n), Arr(n)};
  const Arr& lam = grid_->lambda();
  const Real e = std::exp(-0.5 * gamma_ * t);
  for (long j = 0; j < n; ++j) {
    const auto [c, s] = osc_kernel(lam[j] - 0.25 * gamma_ * gamma_, t);
    B.b00[j] = e * (c + 0.5 * gamma_ * s);
    B.b01[j] = e * s;
    B.b10[j] = -lam[j] * e * s;
    B.b11[j] = e * (c - 0.5 * gamma_ * s);
  }
  if (cache_.size() > 4096) cache_.clear();
  return cache_.emplace(key, std::move(B)).first->second;
}

void LinearPropagator::apply_blocks(const BlockSet& B, StatePair& xi) const {
  const Arr u = xi.u.array(), v = xi.v.array();
  xi.u = (B.b00 * u + B.b01 * v).matrix();
  xi.v = (B.b10 * u + B.b11 * v).matrix();
}

void LinearPropagator::add_kick(const BlockSet& B, const Vec& h, StatePair& xi) const {
  xi.u += (B.b01 * h.array()).matrix();
  xi.v += (B.b11 * h.array()).matrix();
}

StatePair LinearPropagator::propagate_homogeneous(const StatePair& xi, Real t) const {
  if (t < 0) throw std::domain_error("propagate_homogeneous: t >= 0");
  StatePair out = xi;
  if (t == 0.0) return out;
  apply_blocks(blocks(t), out);
  return out;
}

StatePair LinearPropagator::duhamel(const StatePair& xi_tau, const VectorMeasure& mu, Real tau,
                                    Real t) const {
  if (mu.dim() != grid_->n_dof()) throw std::invalid_argument("duhamel: measure/grid dim mismatch");
  if (t < tau) throw std::domain_error("duhamel: t >= tau required");
  StatePair out = propagate_homogeneous(xi_tau, t - tau);
  for (const auto& at : mu.atoms()) {
    if (at.t < tau || at.t >= t) continue;  // left-limit: atom at t excluded
    add_kick(blocks(t - at.t), at.h, out);
  }
  if (mu.has_density()) {
    const auto& knots = mu.knots();
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
      const Real lo = std::max(tau, knots[j]);
      const Real hi = std::min(t, knots[j + 1]);
      if (hi <= lo) continue;
      const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / osc_panel_)));
      const Real plen = (hi - lo) / panels;
      for (int p = 0; p < panels; ++p) {
        const Real pa = lo + p * plen;
        const Real c = pa + 0.5 * plen, hw = 0.5 * plen;
        for (int i = 0; i < 8; ++i) {
          const Real s = c + hw * Gauss8::nodes[i];
          const Vec rho = mu.density_at(s);
          const Real w = hw * Gauss8::weights[i];
          const BlockSet& B = blocks(t - s);
          out.u += w * (B.b01 * rho.array()).matrix();
          out.v += w * (B.b11 * rho.array()).matrix();
        }
      }
    }
  }
  return out;
}

LinearDiagnostics linear_diagnostics(const LinearPropagator& prop, const VectorMeasure& mu,
                                     Real tau, const std::vector<Real>& times,
                                     const std::vector<Real>& energies,
                                     const std::vector<Real>& window_strichartz,
                                     Real xi_tau_norm) {
  LinearDiagnostics rep;
  const Real d = prop.slowest_decay();
  // incremental convolution int e^{-d (t-s)} |mu|(ds) on the sample schedule
  Real conv = mu.atom_at(tau).norm();
  Real prev_t = tau;
  std::size_t atom_ix = 0;
  const auto& atoms = mu.atoms();
  std::vector<Real> log_t, log_e;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Real t = times[i];
    const Real dt = t - prev_t;
    if (dt > 0) {
      conv *= std::exp(-d * dt);
      const Real m0 = mu.density_at(prev_t).norm(), m1 = mu.density_at(t).norm();
      conv += 0.5 * dt * (m0 * std::exp(-d * dt) + m1);
      while (atom_ix < atoms.size() && atoms[atom_ix].t <= t) {
        if (atoms[atom_ix].t > prev_t)
          conv += atoms[atom_ix].h.norm() * std::exp(-d * (t - atoms[atom_ix].t));
        ++atom_ix;
      }
    }
    const Real majorant = xi_tau_norm * std::exp(-d * (t - tau)) + conv;
    rep.majorant.push_back(majorant);
    if (majorant > 1e-14)
      rep.fitted_energy_constant = std::max(rep.fitted_energy_constant, energies[i] / majorant);
    else if (energies[i] > 1e-12)
      rep.majorant_finite = false;
    if (energies[i] > 1e-300) {
      log_t.push_back(t);
      log_e.push_back(std::log(energies[i]));
    }
    prev_t = t;
  }
  if (log_t.size() >= 2) rep.fitted_decay_slope = -ls_slope(log_t, log_e);
  const Real tv = mu.total_variation();
  for (Real w : window_strichartz)
    rep.fitted_strichartz_constant =
        std::max(rep.fitted_strichartz_constant, w / std::max(1e-14, xi_tau_norm + tv));
  return rep;
}

}  // namespace mdw
