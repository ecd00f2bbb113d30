#ifndef MDW_DYNAMICS_HPP
#define MDW_DYNAMICS_HPP

#include <optional>

#include "mdw/global_measure.hpp"
#include "mdw/nonlinearity.hpp"
#include "mdw/propagator.hpp"
#include "mdw/strichartz.hpp"

namespace mdw {

struct Sample {
  Real t;
  StatePair state;                  // left limit at atom times
  std::optional<StatePair> post;    // post-kick state, present at atom times
  Real l12 = 0.0;                   // ||u||_{L^12} (0 when norm recording is off)
  Real energy_e = 0.0;              // ||xi||_E
};

struct Trajectory {
  Real tau = 0, T = 0, dt = 0;
  Real gamma = 0;
  std::vector<Sample> samples;
  bool blew_up = false;

  const StatePair& final_state() const { return samples.back().state; }
  std::vector<Real> times() const;
  std::vector<Real> energies() const;
  std::vector<Real> l12_norms() const;
};

/// Raised when the energy ceiling trips; carries the last valid sample.
struct BlowUpError : std::runtime_error {
  BlowUpError(Real t, Real energy, Sample last)
      : std::runtime_error("solver blow-up at t = " + std::to_string(t) +
                           " (energy " + std::to_string(energy) + ")"),
        time(t), energy(energy), last_valid(std::move(last)) {}
  Real time;
  Real energy;
  Sample last_valid;
};

struct SimOptions {
  Real energy_ceiling = 1e6;
  Real max_dt = 0.5;      // requested dt above this is a precondition error
  bool record_l12 = true;
  int sample_stride = 1;  // heavy norms recorded every stride-th step
};

/// One Strang step around the exact linear flow: L(dt/2) N(dt) L(dt/2) where
/// L is the measure Duhamel on the half step (density included) and N is the
/// velocity kick v -= dt f(u) at frozen u. The forcing segment must contain
/// no atoms interior to (t0, t0+dt); the driver splits steps at atoms.
StatePair strang_step(const ModeGrid& g, const LinearPropagator& prop, const Nonlinearity& nl,
                      const StatePair& xi, Real t0, Real dt, const VectorMeasure& segment);

/// Integrate the quintic equation on [tau, T] with measure forcing. Steps are
/// split exactly at atom times; kicks v += mu({t}) are applied between the
/// recorded left-limit and post-kick samples. An atom at tau kicks the
/// initial velocity (recorded as the post state of the first sample).
Trajectory simulate(const ModeGrid& g, const LinearPropagator& prop, const Nonlinearity& nl,
                    StatePair xi_tau, Real tau, Real T, const GlobalMeasure& mu, Real dt,
                    const SimOptions& opt = {});

/// Itemised energy balance per sample interval:
///   dE = -gamma int ||v||^2 + int (v, rho) dt + sum (1/2 (v+ + v-), h).
struct LedgerRow {
  Real t0, t1;
  Real dE;
  Real dissipation;   // -gamma int ||v||^2
  Real density_work;  // int (v, rho)
  Real atom_work;     // (1/2 (v+ + v-), h) rows have t0 == t1
  Real residual;      // dE - (dissipation + density_work + atom_work)
};

struct EnergyLedger {
  std::vector<LedgerRow> rows;
  Real total_residual = 0;         // signed sum over rows
  Real residual_l1 = 0;            // sum of |row residual|, the refinement metric
  Real max_atom_residual = 0;      // worst |residual| over kick rows
  // Perturbed functional diagnostics (delta-coupled energy and the quadratic
  // form B); B is positive definite for small delta = delta(gamma).
  Real delta = 0;
  Real min_B_eigenvalue = 0;       // of the 2x2 coefficient matrix
  std::vector<Real> perturbed_energy;  // E_delta(xi) per sample
  std::vector<Real> b_form;            // B(xi) per sample
};

/// delta default min(gamma/4, 1/(4+gamma)); pass delta <= 0 to use it.
EnergyLedger ledger(const ModeGrid& g, const Nonlinearity& nl, const Trajectory& traj,
                    const GlobalMeasure& mu, Real delta = 0.0);

/// Perturbed energy E_delta = 1/2||xi||_E^2 + (delta gamma/2)||u||^2
///                  + delta (v, u) + (F(u), 1).
Real perturbed_energy(const ModeGrid& g, const Nonlinearity& nl, const StatePair& xi, Real gamma,
                      Real delta);
/// Quadratic form B of the delta-multiplier identity.
Real b_form_value(const ModeGrid& g, const StatePair& xi, Real gamma, Real delta);
/// Smallest eigenvalue of the 2x2 coefficient matrix of B on (||v||, ||u||_H).
Real b_form_min_eigenvalue(Real gamma, Real delta);
Real default_delta(Real gamma);

struct DependenceReport {
  Real fitted_constant = 0;   // smallest C covering all samples
  bool bounded = true;        // false when no C <= 100 fits
  std::vector<Real> times;
  std::vector<Real> separation;
};

/// Continuous-dependence check: ||xi1 - xi2||(t) against the Gronwall bound
/// exp(C int (1 + ||u1||^4_{L12} + ||u2||^4_{L12})) ||xi1(0) - xi2(0)||.
DependenceReport continuous_dependence(const ModeGrid& g, const Trajectory& t1,
                                       const Trajectory& t2);

struct DissipativityReport {
  std::vector<Real> final_sup_energy;     // per ensemble member, post-transient sup
  Real absorbing_radius = 0;              // 1.1 x max of the above
  std::vector<Real> entry_times;          // first entry into the ball
  bool no_exit = true;                    // never leaves after entry
  Real strichartz_max = 0, strichartz_median = 0;
  Real spread = 0;                        // max-min of post-transient sups
};

DissipativityReport dissipativity_scan(const ModeGrid& g, const LinearPropagator& prop,
                                       const Nonlinearity& nl,
                                       const std::vector<StatePair>& initial_states,
                                       const GlobalMeasure& mu, Real tau, Real T, Real dt,
                                       Real transient, unsigned threads = 1);

/// Window Strichartz norms over [t, t+1] for every whole window in the run.
std::vector<Real> window_strichartz_series(const Trajectory& traj);

}  // namespace mdw

#endif
