#ifndef MDW_MEASURE_HPP
#define MDW_MEASURE_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mdw/types.hpp"

namespace mdw {

/// One point mass: value `h` sitting at time `t`.
struct Atom {
  Real t;
  Vec h;
};

/// H-valued Borel measure of finite total variation on a finite window,
/// represented as a sorted atom list plus a continuous piecewise-linear
/// density (breakpoints `knots` with node values `nodes`). The
/// singular-continuous part is identically zero by representation. Values
/// live in a fixed coefficient basis; interoperating measures must share the
/// coefficient dimension. Immutable after construction.
class VectorMeasure {
 public:
  VectorMeasure(Real a, Real b, int dim, std::vector<Atom> atoms,
                std::vector<Real> knots, std::vector<Vec> nodes);

  static VectorMeasure zero(Real a, Real b, int dim);
  static VectorMeasure atomic(Real a, Real b, int dim, std::vector<Atom> atoms);
  static VectorMeasure with_density(Real a, Real b, int dim,
                                    std::vector<Real> knots, std::vector<Vec> nodes);

  Real a() const { return a_; }
  Real b() const { return b_; }
  int dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Real>& knots() const { return knots_; }
  const std::vector<Vec>& nodes() const { return nodes_; }
  bool has_density() const { return !knots_.empty(); }
  bool is_atomic() const { return knots_.empty(); }

  /// Density value at time t (zero vector when no density is present).
  Vec density_at(Real t) const;

  /// mu({t}); zero vector when no atom sits at t.
  Vec atom_at(Real t) const;

  /// Left-continuous distribution function: mu([a,t)) for t < b, mu([a,b]) at b.
  Vec distribution(Real t) const;

  /// Interval value for all four bracket conventions; [t,t] closed = atom at t.
  Vec interval_value(Real s, Real t, bool left_closed, bool right_closed) const;

  /// Total variation |mu|([a,b]) = sum of atom norms + integral of the
  /// density norm. Exact (trapezoid with zero-crossing split) on collinear
  /// segments, adaptive quadrature otherwise.
  Real total_variation() const;

  /// Integral of (f(t), mu(dt)) over the closed window, f continuous.
  Real integrate_against(const std::function<Vec(Real)>& f, Real quad_tol = 1e-13) const;

  /// Restriction to the closed sub-window [s, t] (density clipped with
  /// interpolated end nodes, atoms with s <= t_k <= t kept).
  VectorMeasure restrict(Real s, Real t) const;

  /// Same measure re-expressed with extra density breakpoints inserted.
  VectorMeasure refined(const std::vector<Real>& extra_knots) const;

  /// Time translation: (shifted by s)(A) = mu(A + s), window moves to [a-s, b-s].
  VectorMeasure shifted(Real s) const;

  VectorMeasure operator+(const VectorMeasure& other) const;
  VectorMeasure operator*(Real c) const;
  VectorMeasure operator-(const VectorMeasure& other) const { return *this + other * (-1.0); }

  /// Q_N mu: zeroes the first n_low coefficients of every atom and density node.
  VectorMeasure project_tail(int n_low) const;
  /// P_N mu: keeps only the first n_low coefficients.
  VectorMeasure project_head(int n_low) const;

  /// Purely atomic approximant on a uniform grid: the absolutely continuous
  /// part becomes atoms mu_ac([t_k, t_{k+1})) at the left grid points, the
  /// atomic part is kept verbatim.
  VectorMeasure delta_approximation(int n) const;

  /// Purely absolutely continuous approximant with kernel width 1/n; each atom
  /// is smeared over a hat supported on [t_k, t_k + 1/n] (clipped at b) so the
  /// distribution function converges at every t in [a,b), jump points included.
  VectorMeasure mollify(int n) const;

 private:
  Real a_, b_;
  int dim_;
  std::vector<Atom> atoms_;
  std::vector<Real> knots_;
  std::vector<Vec> nodes_;

  // primitive(t) = sum_{t_k < t} h_k + int_a^t rho(s) ds  (no endpoint special case)
  Vec primitive(Real t) const;
  Vec density_integral(Real s, Real t) const;  // exact on the pw-linear density
  friend class DistributionFunction;
};

/// View of Phi_mu with partition-variation helpers.
class DistributionFunction {
 public:
  explicit DistributionFunction(const VectorMeasure& mu) : mu_(&mu) {}
  Vec operator()(Real t) const { return mu_->distribution(t); }
  /// sum_j ||Phi(t_j) - Phi(t_{j-1})|| over a partition of [a,b].
  Real variation_on(const std::vector<Real>& partition) const;
  /// Variation over the dyadic partition with 2^level cells, atoms inserted.
  Real dyadic_variation(int level) const;

 private:
  const VectorMeasure* mu_;
};

/// Polar decomposition mu = rho_mu d|mu|: scalar variation measure plus the
/// unit direction field, both exact callables; |mu| can be materialised as a
/// dim-1 VectorMeasure on a sampling grid for downstream consumers.
struct PolarDecomposition {
  std::vector<Real> atom_times;
  std::vector<Real> atom_masses;        // |mu| atoms
  std::vector<Vec> atom_directions;     // h_k / ||h_k||
  std::function<Real(Real)> density_magnitude;  // ||rho(t)||_H
  std::function<Vec(Real)> direction;           // rho(t)/||rho(t)||, 0 where rho=0
  /// Reconstructed value of mu on [s,t] closed via int rho d|mu|.
  Vec reconstruct(Real s, Real t, Real quad_tol = 1e-13) const;
  int dim = 0;
  Real a = 0, b = 0;
};

PolarDecomposition polar_decompose(const VectorMeasure& mu);

/// TV(mu - approximation): kind "space" uses the head projection P_n, kind
/// "time" uses mollify(n). Decrease in n evidences space/time regularity.
enum class RegularityKind { space, time };
Real regularity_gap(const VectorMeasure& mu, RegularityKind kind, int n);

/// omega(h) table for a family of purely a.c. measures: max over the family
/// and over sliding windows of length h of the window variation.
std::vector<Real> equi_integrability_modulus(const std::vector<VectorMeasure>& family,
                                             const std::vector<Real>& window_sizes,
                                             int scan_points = 200);

}  // namespace mdw

#endif
