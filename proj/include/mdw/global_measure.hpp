#ifndef MDW_GLOBAL_MEASURE_HPP
#define MDW_GLOBAL_MEASURE_HPP

#include <memory>
#include <variant>
#include <vector>

#include "mdw/measure.hpp"

namespace mdw {

/// Whole-line forcing tiled from a template on [0, period): atoms and density
/// repeat with the given period.
struct PeriodicTemplate {
  Real period = 1.0;
  std::vector<Atom> atoms;          // times in [0, period)
  std::vector<Real> knots;          // density breakpoints in [0, period]
  std::vector<Vec> nodes;           // same count as knots; wraps continuously
  int dim = 1;
};

/// Train of unit-mass bumps/atom pairs at epochs t = start + k * spacing.
/// Two variants:
///   rotating_modes: a.c. bump of width width0/k valued in coefficient
///     direction e_{k mod dim} (weakly non-atomic, its variation is not);
///   cancelling_pairs: atom pair (+mass, -mass) separated by sep0/k, the
///     scalar shift-vanishing example and the ODE perturbation.
struct SpikeTrain {
  enum class Kind { rotating_modes, cancelling_pairs };
  Kind kind = Kind::cancelling_pairs;
  Real start = 1.0;
  Real spacing = 1.0;
  Real mass = 0.5;
  Real width0 = 1.0;   // bump width at epoch k is width0 / k (rotating_modes)
  Real sep0 = 1.0;     // pair separation at epoch k is sep0 / k (cancelling_pairs)
  int dim = 1;
  int max_epoch = 1 << 20;
};

/// Scalar profile c0 + c1 * (2/pi) * atan(t) (optionally plus a spike train);
/// its hull limits are the constants c0 - c1 and c0 + c1 without spikes.
struct AsymptoticProfile {
  Real c0 = 0.0;
  Real c1 = 3.0;
  bool with_spikes = false;
  SpikeTrain spikes;       // used when with_spikes
  Real sample_dt = 0.05;   // density sampling step for windows
};

/// A fixed measure on a declared window; requests outside it are an error.
struct ExplicitWindow {
  std::shared_ptr<const VectorMeasure> mu;
};

/// Shift-and-window view of a whole-line forcing family. Windowing after a
/// shift equals windowing the shifted interval by construction (no
/// resampling): window(tau, T) materialises the base on [tau+s, T+s] and
/// translates times back by the accumulated shift s.
class GlobalMeasure {
 public:
  using Family = std::variant<PeriodicTemplate, SpikeTrain, AsymptoticProfile, ExplicitWindow>;

  GlobalMeasure(Family family, Real shift = 0.0) : family_(std::move(family)), shift_(shift) {}

  static GlobalMeasure zero(int dim);

  int dim() const;
  Real shift_amount() const { return shift_; }
  const Family& family() const { return family_; }

  /// (T(s) g): time shift composes additively.
  GlobalMeasure shift(Real s) const { return GlobalMeasure(family_, shift_ + s); }

  /// Restriction to the closed window [tau, T] as a concrete VectorMeasure.
  VectorMeasure window(Real tau, Real T) const;

  /// sup over sampled unit windows of the total variation (M_b norm estimate).
  Real mb_norm_estimate(Real t_lo, Real t_hi) const;

  /// Hull endpoint members (weak-star limits of extreme shifts); empty for
  /// families whose hull is sampled by shifts alone.
  std::vector<GlobalMeasure> limit_members() const;

 private:
  Family family_;
  Real shift_ = 0.0;
};

/// Empirical weak-non-atomicity modulus: max over the sampled shifts s of
/// |(mu([s, s+h]), psi)|.
Real wna_modulus(const GlobalMeasure& g, const Vec& psi, Real h,
                 const std::vector<Real>& shifts);

struct WnaReport {
  std::vector<Real> window_sizes;
  std::vector<Real> modulus;
  bool empirically_non_atomic = false;  // modulus(2^-10) < ratio_threshold * modulus(1)
};

/// Sweeps h = 1, 1/2, ..., 2^-10 and applies the scale-free ratio test.
WnaReport wna_scan(const GlobalMeasure& g, const Vec& psi, const std::vector<Real>& shifts,
                   Real ratio_threshold = 0.01);

/// Finitely sampled hull: the base together with its shifted copies and the
/// family's limit members.
std::vector<GlobalMeasure> hull_samples(const GlobalMeasure& g, const std::vector<Real>& shifts,
                                        bool include_limits = true);

/// max over a finite test family of |int (phi, mu1(dt)) - int (phi, mu2(dt))|.
Real weak_star_distance(const VectorMeasure& mu1, const VectorMeasure& mu2,
                        const std::vector<std::function<Vec(Real)>>& tests);

/// Default test family: time hat functions on `n_hats` centres times the
/// first `n_modes` coefficient directions.
std::vector<std::function<Vec(Real)>> default_test_family(Real a, Real b, int dim,
                                                          int n_hats = 8, int n_modes = 8);

}  // namespace mdw

#endif
