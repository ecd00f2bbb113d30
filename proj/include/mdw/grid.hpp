#ifndef MDW_GRID_HPP
#define MDW_GRID_HPP

#include <array>
#include <complex>
#include <vector>

#include "mdw/types.hpp"

namespace mdw {

/// Truncated Fourier representation of real fields on the d-torus (-pi,pi)^d,
/// d in {1,3}. Retained wavenumbers satisfy |k_i| <= K with K = N/2 - 1, so a
/// padded physical grid of M = padding*N points per axis (padding >= 3)
/// evaluates the quintic term alias-free and integrates u^6 exactly.
///
/// Real fields are carried as coefficient vectors ("dof") over an orthonormal
/// real basis: index 0 is the mean mode, then (cos, sin) pairs ordered by
/// increasing |k|^2. The Euclidean norm of the dof vector equals the L^2 norm
/// of the field; the operator 1 - Laplace is the diagonal lambda = 1 + |k|^2.
class ModeGrid {
 public:
  ModeGrid(int dim, int n, int padding = 3);

  int dim() const { return dim_; }
  int n() const { return n_; }
  int padding() const { return padding_; }
  int k_max() const { return kmax_; }
  int modes_per_axis() const { return n_axis_; }
  int grid_per_axis() const { return m_; }
  long n_dof() const { return n_dof_; }
  long n_grid() const { return n_grid_; }
  Real cell_volume() const { return cellvol_; }
  Real volume() const { return volume_; }

  /// lambda_j = 1 + |k(j)|^2 for every dof slot.
  const Arr& lambda() const { return lambda_; }

  /// Wavevector of the dof's representative mode.
  const std::vector<std::array<int, 3>>& dof_wavevector() const { return dof_k_; }

  /// Synthesis: dof coefficients -> real values on the padded grid.
  Vec to_grid(const Vec& dof) const;
  /// Analysis with truncation to the retained mode set.
  Vec from_grid(const Vec& grid_vals) const;

  /// L^p norm of a grid sample with the cell-volume quadrature weight.
  Real grid_lp(const Vec& grid_vals, Real p) const;

  /// dof index of the pure cosine/sine mode with wavevector k; -1 when not
  /// retained. Convenience for building fields mode by mode.
  int cos_dof(int kx, int ky = 0, int kz = 0) const;
  int sin_dof(int kx, int ky = 0, int kz = 0) const;

 private:
  int dim_, n_, padding_, kmax_, n_axis_, m_;
  long n_dof_, n_grid_;
  Real cellvol_, volume_;
  Arr lambda_;
  std::vector<std::array<int, 3>> dof_k_;

  // dof <-> complex mode cube maps (representative pairing with conjugate symmetry)
  struct PairMap {
    long cube_plus;   // flat cube index of +k
    long cube_minus;  // flat cube index of -k
    int dof_cos;      // -1 for the zero mode (handled separately)
    int dof_sin;
  };
  std::vector<PairMap> pairs_;
  long zero_cube_ = 0;

  CMat axis_synthesis_;  // m_ x n_axis_: E(x_j, k) = exp(i k x_j)
  CMat axis_analysis_;   // n_axis_ x m_: (1/m_) E^H

  CVec dof_to_cube(const Vec& dof) const;
  Vec cube_to_dof(const CVec& cube) const;
};

}  // namespace mdw

#endif
