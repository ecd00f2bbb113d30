#include "mdw/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mdw {

namespace {
using Cplx = std::complex<Real>;
}

ModeGrid::ModeGrid(int dim, int n, int padding) : dim_(dim), n_(n), padding_(padding) {
  if (dim != 1 && dim != 3) throw std::invalid_argument("ModeGrid: dim must be 1 or 3");
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("ModeGrid: n must be even and >= 4");
  if (padding < 3) throw std::invalid_argument("ModeGrid: padding >= 3 needed for the quintic term");
  kmax_ = n / 2 - 1;
  n_axis_ = 2 * kmax_ + 1;
  m_ = padding * n;
  n_grid_ = 1;
  long n_modes = 1;
  for (int a = 0; a < dim_; ++a) {
    n_grid_ *= m_;
    n_modes *= n_axis_;
  }
  n_dof_ = n_modes;
  volume_ = std::pow(2.0 * M_PI, dim_);
  cellvol_ = volume_ / static_cast<Real>(n_grid_);

  // enumerate modes; cube axis index i maps to wavenumber k = i - kmax_
  auto cube_index = [&](int kx, int ky, int kz) -> long {
    long idx = kx + kmax_;
    if (dim_ == 3) idx += static_cast<long>(n_axis_) * ((ky + kmax_) + static_cast<long>(n_axis_) * (kz + kmax_));
    return idx;
  };
  struct ModeRec {
    int kx, ky, kz;
    long norm2;
  };
  std::vector<ModeRec> reps;  // representatives of +/- pairs, zero excluded
  const int kzlo = dim_ == 3 ? -kmax_ : 0, kzhi = dim_ == 3 ? kmax_ : 0;
  const int kylo = kzlo, kyhi = kzhi;
  for (int kz = kzlo; kz <= kzhi; ++kz)
    for (int ky = kylo; ky <= kyhi; ++ky)
      for (int kx = -kmax_; kx <= kmax_; ++kx) {
        const bool positive = (kz > 0) || (kz == 0 && ky > 0) || (kz == 0 && ky == 0 && kx > 0);
        if (positive)
          reps.push_back({kx, ky, kz, static_cast<long>(kx) * kx + static_cast<long>(ky) * ky +
                                          static_cast<long>(kz) * kz});
      }
  std::stable_sort(reps.begin(), reps.end(), [](const ModeRec& a, const ModeRec& b) {
    if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
    if (a.kz != b.kz) return a.kz < b.kz;
    if (a.ky != b.ky) return a.ky < b.ky;
    return a.kx < b.kx;
  });

  lambda_.resize(n_dof_);
  dof_k_.resize(n_dof_);
  zero_cube_ = cube_index(0, 0, 0);
  lambda_[0] = 1.0;
  dof_k_[0] = {0, 0, 0};
  pairs_.reserve(reps.size());
  int slot = 1;
  for (const auto& r : reps) {
    PairMap pm;
    pm.cube_plus = cube_index(r.kx, r.ky, r.kz);
    pm.cube_minus = cube_index(-r.kx, -r.ky, -r.kz);
    pm.dof_cos = slot;
    pm.dof_sin = slot + 1;
    lambda_[slot] = lambda_[slot + 1] = 1.0 + static_cast<Real>(r.norm2);
    dof_k_[slot] = dof_k_[slot + 1] = {r.kx, r.ky, r.kz};
    pairs_.push_back(pm);
    slot += 2;
  }
  if (slot != n_dof_) throw std::logic_error("ModeGrid: mode enumeration mismatch");

  // per-axis synthesis E(x_j, k) = exp(i k x_j) on x_j = -pi + 2 pi j / m
  axis_synthesis_.resize(m_, n_axis_);
  for (int j = 0; j < m_; ++j) {
    const Real x = -M_PI + 2.0 * M_PI * j / m_;
    for (int ki = 0; ki < n_axis_; ++ki) {
      const int k = ki - kmax_;
      axis_synthesis_(j, ki) = Cplx(std::cos(k * x), std::sin(k * x));
    }
  }
  axis_analysis_ = axis_synthesis_.adjoint() / static_cast<Real>(m_);
}

CVec ModeGrid::dof_to_cube(const Vec& dof) const {
  const Real v = volume_;
  CVec cube = CVec::Zero(n_dof_);
  cube[zero_cube_] = Cplx(dof[0] / std::sqrt(v), 0.0);
  const Real scale = 1.0 / std::sqrt(2.0 * v);
  for (const auto& pm : pairs_) {
    const Cplx up(dof[pm.dof_cos] * scale, -dof[pm.dof_sin] * scale);
    cube[pm.cube_plus] = up;
    cube[pm.cube_minus] = std::conj(up);
  }
  return cube;
}

Vec ModeGrid::cube_to_dof(const CVec& cube) const {
  const Real v = volume_;
  Vec dof(n_dof_);
  dof[0] = cube[zero_cube_].real() * std::sqrt(v);
  const Real scale = std::sqrt(2.0 * v);
  for (const auto& pm : pairs_) {
    dof[pm.dof_cos] = cube[pm.cube_plus].real() * scale;
    dof[pm.dof_sin] = -cube[pm.cube_plus].imag() * scale;
  }
  return dof;
}

Vec ModeGrid::to_grid(const Vec& dof) const {
  if (dof.size() != n_dof_) throw std::invalid_argument("to_grid: dof size mismatch");
  const CVec cube = dof_to_cube(dof);
  if (dim_ == 1) {
    CVec g = axis_synthesis_ * cube;
    return g.real();
  }
  const int na = n_axis_, m = m_;
  // axis 0: (na, na, na) -> (m, na, na)
  CMat a0 = Eigen::Map<const CMat>(cube.data(), na, static_cast<long>(na) * na);
  CMat g1 = axis_synthesis_ * a0;  // m x na^2
  // axis 1: slabs of (m, na) -> (m, m) per kz
  CMat g2(static_cast<long>(m) * m, na);
  for (int kz = 0; kz < na; ++kz) {
    Eigen::Map<const CMat> slab(g1.data() + static_cast<long>(m) * na * kz, m, na);
    Eigen::Map<CMat> out(g2.data() + static_cast<long>(m) * m * kz, m, m);
    out = slab * axis_synthesis_.transpose();
  }
  // axis 2: (m*m, na) -> (m*m, m)
  CMat g3 = g2 * axis_synthesis_.transpose();
  return Eigen::Map<const CVec>(g3.data(), n_grid_).real();
}

Vec ModeGrid::from_grid(const Vec& grid_vals) const {
  if (grid_vals.size() != n_grid_) throw std::invalid_argument("from_grid: grid size mismatch");
  if (dim_ == 1) {
    CVec g = grid_vals.cast<Cplx>();
    CVec cube = axis_analysis_ * g;
    return cube_to_dof(cube);
  }
  const int na = n_axis_, m = m_;
  CVec g = grid_vals.cast<Cplx>();
  // axis 0: (m, m, m) -> (na, m, m)
  CMat a0 = Eigen::Map<const CMat>(g.data(), m, static_cast<long>(m) * m);
  CMat c1 = axis_analysis_ * a0;  // na x m^2
  // axis 1: slabs (na, m) -> (na, na) per z
  CMat c2(static_cast<long>(na) * na, m);
  for (int z = 0; z < m; ++z) {
    Eigen::Map<const CMat> slab(c1.data() + static_cast<long>(na) * m * z, na, m);
    Eigen::Map<CMat> out(c2.data() + static_cast<long>(na) * na * z, na, na);
    out = slab * axis_analysis_.transpose();
  }
  // axis 2
  CMat c3 = c2 * axis_analysis_.transpose();
  return cube_to_dof(Eigen::Map<const CVec>(c3.data(), n_dof_));
}

Real ModeGrid::grid_lp(const Vec& grid_vals, Real p) const {
  if (std::isinf(p)) return grid_vals.cwiseAbs().maxCoeff();
  const Real s = grid_vals.array().abs().pow(p).sum() * cellvol_;
  return std::pow(s, 1.0 / p);
}

int ModeGrid::cos_dof(int kx, int ky, int kz) const {
  for (const auto& pm : pairs_) {
    const auto& k = dof_k_[pm.dof_cos];
    if (k[0] == kx && k[1] == ky && k[2] == kz) return pm.dof_cos;
  }
  if (kx == 0 && ky == 0 && kz == 0) return 0;
  return -1;
}

int ModeGrid::sin_dof(int kx, int ky, int kz) const {
  for (const auto& pm : pairs_) {
    const auto& k = dof_k_[pm.dof_sin];
    if (k[0] == kx && k[1] == ky && k[2] == kz) return pm.dof_sin;
  }
  return -1;
}

}  // namespace mdw
