#ifndef MDW_NONLINEARITY_HPP
#define MDW_NONLINEARITY_HPP

#include <string>

#include "mdw/fields.hpp"

namespace mdw {

/// Nonlinearity f(u) = u^5 + h(u) with a registered sub-quintic h:
///   none:  h = 0
///   cubic: h(u) = lambda u^3
///   sine:  h(u) = sin(u)
/// All satisfy |h''| <= C(1+|u|^q), q < 3, h(0) = 0.
struct Nonlinearity {
  enum class H { none, cubic, sine };
  H h = H::none;
  Real lambda = 0.0;

  static Nonlinearity quintic() { return {H::none, 0.0}; }
  static Nonlinearity quintic_cubic(Real lam) { return {H::cubic, lam}; }
  static Nonlinearity quintic_sine() { return {H::sine, 0.0}; }
  static Nonlinearity parse(const std::string& family, Real lam);

  Real f(Real u) const {
    const Real u2 = u * u;
    Real val = u2 * u2 * u;
    if (h == H::cubic) val += lambda * u2 * u;
    else if (h == H::sine) val += std::sin(u);
    return val;
  }
  Real fprime(Real u) const {
    const Real u2 = u * u;
    Real val = 5.0 * u2 * u2;
    if (h == H::cubic) val += 3.0 * lambda * u2;
    else if (h == H::sine) val += std::cos(u);
    return val;
  }
  /// F(u) = int_0^u f
  Real antiderivative(Real u) const {
    const Real u2 = u * u;
    Real val = u2 * u2 * u2 / 6.0;
    if (h == H::cubic) val += lambda * u2 * u2 / 4.0;
    else if (h == H::sine) val += 1.0 - std::cos(u);
    return val;
  }
};

/// Dealiased evaluation of f(u): synthesis on the padded grid, pointwise f,
/// analysis with truncation. Exact for the quintic and cubic parts when
/// padding >= 3; sin(u) is dealiased to the same padding.
Vec apply_f(const ModeGrid& g, const Nonlinearity& nl, const Vec& u);

/// Same with the shifted nonlinearity f_L(u) = f(u) + L u.
Vec apply_f_shifted(const ModeGrid& g, const Nonlinearity& nl, Real L, const Vec& u);

/// (F(u), 1) on the padded grid.
Real potential_energy(const ModeGrid& g, const Nonlinearity& nl, const Vec& u);

/// Nonlinear energy 1/2 ||xi||_E^2 + (F(u), 1).
Real nonlinear_energy(const ModeGrid& g, const Nonlinearity& nl, const StatePair& xi);

/// Grid values of f(u_vals) etc. for callers that already hold grid samples.
Vec pointwise_f(const Nonlinearity& nl, const Vec& grid_vals);

/// Smallest L on {0, 1, 2, 4, ...} with F_L >= 0 and f_L(u) u - F_L(u) >= 0
/// sampled on |u| <= u_max (F_L(u) = F(u) + L u^2 / 2).
Real coercivity_shift(const Nonlinearity& nl, Real u_max = 20.0, int samples = 4001);

}  // namespace mdw

#endif
