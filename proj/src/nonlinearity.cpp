#include "mdw/nonlinearity.hpp"

#include <stdexcept>

namespace mdw {

Nonlinearity Nonlinearity::parse(const std::string& family, Real lam) {
  if (family == "quintic") return quintic();
  if (family == "quintic_cubic") return quintic_cubic(lam);
  if (family == "quintic_sine") return quintic_sine();
  throw std::invalid_argument("Nonlinearity::parse: unknown family '" + family + "'");
}

Vec pointwise_f(const Nonlinearity& nl, const Vec& grid_vals) {
  Vec out(grid_vals.size());
  for (long i = 0; i < grid_vals.size(); ++i) out[i] = nl.f(grid_vals[i]);
  return out;
}

Vec apply_f(const ModeGrid& g, const Nonlinearity& nl, const Vec& u) {
  return g.from_grid(pointwise_f(nl, g.to_grid(u)));
}

Vec apply_f_shifted(const ModeGrid& g, const Nonlinearity& nl, Real L, const Vec& u) {
  Vec out = apply_f(g, nl, u);
  if (L != 0.0) out += L * u;
  return out;
}

Real potential_energy(const ModeGrid& g, const Nonlinearity& nl, const Vec& u) {
  const Vec vals = g.to_grid(u);
  Real s = 0;
  for (long i = 0; i < vals.size(); ++i) s += nl.antiderivative(vals[i]);
  return s * g.cell_volume();
}

Real nonlinear_energy(const ModeGrid& g, const Nonlinearity& nl, const StatePair& xi) {
  return 0.5 * energy_norm_sq(g, xi) + potential_energy(g, nl, xi.u);
}

Real coercivity_shift(const Nonlinearity& nl, Real u_max, int samples) {
  for (Real L : {0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
    bool ok = true;
    for (int i = 0; i < samples && ok; ++i) {
      const Real u = -u_max + 2.0 * u_max * i / (samples - 1);
      const Real FL = nl.antiderivative(u) + 0.5 * L * u * u;
      const Real fLu = (nl.f(u) + L * u) * u;
      ok = FL >= 0.0 && fLu - FL >= 0.0;
    }
    if (ok) return L;
  }
  throw std::runtime_error("coercivity_shift: no L on the scan grid makes F_L coercive");
}

}  // namespace mdw
