#ifndef MDW_PROPAGATOR_HPP
#define MDW_PROPAGATOR_HPP

#include <unordered_map>

#include "mdw/fields.hpp"
#include "mdw/measure.hpp"

namespace mdw {

/// cos/sin pair of the damped oscillator kernel: with q = lambda - gamma^2/4,
///   c(t) = cos(sqrt(q) t)            (cosh for q < 0)
///   s(t) = sin(sqrt(q) t)/sqrt(q)    (sinh/sqrt(-q) for q < 0, t at q = 0)
/// evaluated by series when |q| t^2 is small to avoid cancellation.
struct OscKernel {
  Real c;
  Real s;
};
OscKernel osc_kernel(Real q, Real t);

/// Exact 2x2 matrix exponential of [[0, 1], [-lambda, -gamma]] at time t:
/// the per-mode solution operator of w'' + gamma w' + lambda w = 0.
Mat2 mode_block(Real lambda, Real gamma, Real t);

/// Slowest per-mode decay rate over lambda >= 1: gamma/2 when gamma <= 2,
/// otherwise the slow overdamped root (gamma - sqrt(gamma^2 - 4))/2.
Real decay_rate(Real gamma);

/// Per-mode solution operator of d^2_t w + gamma d_t w + (1 - Laplace) w = mu
/// on a fixed grid, plus the measure Duhamel formula. Immutable after
/// construction except for the internal block cache (guarded value cache
/// keyed on the exact time step; concurrent use across threads should clone).
class LinearPropagator {
 public:
  LinearPropagator(const ModeGrid& grid, Real gamma);

  const ModeGrid& grid() const { return *grid_; }
  Real gamma() const { return gamma_; }
  Real slowest_decay() const { return decay_rate(gamma_); }

  /// S(t) xi by per-dof blocks.
  StatePair propagate_homogeneous(const StatePair& xi, Real t) const;

  /// xi(t) = S(t-tau) xi_tau + sum_{atoms in [tau, t)} S(t-s)(0, h)
  ///        + int_tau^t S(t-s)(0, rho(s)) ds  (left-limit convention).
  /// The density integral uses Gauss-Legendre 8 panels split at density
  /// breakpoints and at the per-mode oscillation scale min(1, 2 pi / sqrt(lambda_max)).
  StatePair duhamel(const StatePair& xi_tau, const VectorMeasure& mu, Real tau, Real t) const;

  /// mu({t}); the velocity of duhamel jumps by exactly this across t.
  Vec jump_report(const VectorMeasure& mu, Real t) const { return mu.atom_at(t); }

 private:
  const ModeGrid* grid_;
  Real gamma_;
  Real osc_panel_;  // min(1, 2 pi / sqrt(lambda_max))

  struct BlockSet {
    Arr b00, b01, b10, b11;
  };
  const BlockSet& blocks(Real t) const;
  mutable std::unordered_map<std::uint64_t, BlockSet> cache_;

  void apply_blocks(const BlockSet& B, StatePair& xi) const;
  void add_kick(const BlockSet& B, const Vec& h, StatePair& xi) const;
};

/// Report of the linear diagnostics against the energy bound
///   ||xi(t)||_E <= C (||xi_tau|| e^{-d* (t-tau)} + int e^{-d*(t-s)} |mu|(ds))
/// and the window Strichartz bound C (||xi_tau|| + TV).
struct LinearDiagnostics {
  Real fitted_energy_constant = 0.0;     // max over samples of ratio lhs/majorant
  Real fitted_strichartz_constant = 0.0; // max over windows of ratio
  Real fitted_decay_slope = 0.0;         // homogeneous log-energy slope when mu = 0
  bool majorant_finite = true;
  std::vector<Real> majorant;            // per-sample ||xi_tau|| e^{-d t} + conv term
};

/// Samples must be (t_i, ||xi(t_i)||_E) on a uniform schedule; window
/// Strichartz values are optional (empty list skips that fit).
LinearDiagnostics linear_diagnostics(const LinearPropagator& prop, const VectorMeasure& mu,
                                     Real tau, const std::vector<Real>& times,
                                     const std::vector<Real>& energies,
                                     const std::vector<Real>& window_strichartz,
                                     Real xi_tau_norm);

}  // namespace mdw

#endif
