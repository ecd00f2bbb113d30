#ifndef MDW_SCALAR_ODE_HPP
#define MDW_SCALAR_ODE_HPP

#include "mdw/global_measure.hpp"

namespace mdw {

/// Scalar reference model y' = y - y^3 + base + z(t) where z is a dim-1
/// forcing (typically the arctan profile with optional spike pairs). Atoms of
/// z kick y directly; the a.c. part is integrated with adaptive RK45.
struct ScalarModel {
  Real base = -3.0;
  GlobalMeasure forcing = GlobalMeasure::zero(1);
  Real rtol = 1e-9;
  Real atol = 1e-11;
};

struct ScalarTrajectory {
  std::vector<Real> t;
  std::vector<Real> y;  // left limits at atom times; kicks recorded as a new point
  Real final_y() const { return y.back(); }
};

ScalarTrajectory ode_simulate(const ScalarModel& model, Real y_tau, Real tau, Real T,
                              Real sample_dt = 0.05);

/// Pullback estimate of the time-zero kernel section for one hull member:
/// evolve an IC grid on [y_lo, y_hi] from tau = -horizon to 0, return the
/// interval hull of the images.
struct Interval {
  Real lo = 0, hi = 0;
};

Interval pullback_section(const ScalarModel& model, Real horizon, Real y_lo, Real y_hi,
                          int n_ics);

struct KernelAttractorReport {
  Interval attractor;     // forward sweep estimate of A_un
  Interval kernel_union;  // union of pullback sections over hull samples
  Real gap_hi = 0;        // attractor.hi - kernel_union.hi
};

/// Forward sweep over start times and ICs (attractor estimate, spikes
/// included in the sampling) against pullback sections along hull members
/// (interior shifts keep their spike trains, the weak-star limit members are
/// the spike-free constants).
KernelAttractorReport kernel_vs_attractor(const ScalarModel& model,
                                          const std::vector<Real>& hull_shifts,
                                          const std::vector<Real>& start_times, Real run_length,
                                          Real y_lo, Real y_hi, int n_ics,
                                          const std::vector<Real>& horizons);

}  // namespace mdw

#endif
