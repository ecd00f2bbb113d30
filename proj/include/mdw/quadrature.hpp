#ifndef MDW_QUADRATURE_HPP
#define MDW_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <functional>

#include "mdw/types.hpp"

namespace mdw {

/// 8-point Gauss-Legendre rule on [-1, 1].
struct Gauss8 {
  static constexpr std::array<Real, 8> nodes = {
      -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
      -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
      0.7966664774136267,  0.9602898564975363};
  static constexpr std::array<Real, 8> weights = {
      0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
      0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
      0.2223810344533745, 0.1012285362903763};
};

/// Fixed Gauss-Legendre-8 on [a, b].
template <typename F>
Real gauss8(const F& f, Real a, Real b) {
  const Real c = 0.5 * (a + b), h = 0.5 * (b - a);
  Real s = 0;
  for (int i = 0; i < 8; ++i) s += Gauss8::weights[i] * f(c + h * Gauss8::nodes[i]);
  return h * s;
}

namespace detail {
template <typename F>
Real adaptive_gauss_rec(const F& f, Real a, Real b, Real whole, Real tol, int depth) {
  const Real m = 0.5 * (a + b);
  const Real left = gauss8(f, a, m);
  const Real right = gauss8(f, m, b);
  const Real split = left + right;
  if (depth <= 0 || std::abs(split - whole) <= tol * (1.0 + std::abs(split)))
    return split;
  return adaptive_gauss_rec(f, a, m, left, 0.5 * tol, depth - 1) +
         adaptive_gauss_rec(f, m, b, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

/// Adaptive Gauss-Legendre with interval-halving error control.
template <typename F>
Real adaptive_gauss(const F& f, Real a, Real b, Real tol = 1e-13, int max_depth = 40) {
  if (!(b > a)) return 0.0;
  return detail::adaptive_gauss_rec(f, a, b, gauss8(f, a, b), tol, max_depth);
}

/// Composite Simpson on uniformly spaced samples; an even tail interval is
/// handled by the 3/8 rule so any count >= 3 works.
inline Real simpson_uniform(const std::vector<Real>& y, Real dt) {
  const std::size_t n = y.size();
  if (n < 3) throw std::invalid_argument("simpson_uniform: need at least 3 samples");
  std::size_t m = n - 1;  // interval count
  Real s = 0;
  std::size_t i = 0;
  if (m % 2 == 1) {  // peel three intervals with Simpson 3/8
    if (m < 3) throw std::invalid_argument("simpson_uniform: need at least 3 intervals for odd count");
    s += dt * 3.0 / 8.0 * (y[0] + 3 * y[1] + 3 * y[2] + y[3]);
    i = 3;
  }
  for (; i + 2 <= n - 1; i += 2) s += dt / 3.0 * (y[i] + 4 * y[i + 1] + y[i + 2]);
  return s;
}

/// Least-squares slope of y against x.
inline Real ls_slope(const std::vector<Real>& x, const std::vector<Real>& y) {
  const std::size_t n = x.size();
  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const Real d = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / d;
}

}  // namespace mdw

#endif
