#include "mdw/global_measure.hpp"

#include <algorithm>
#include <cmath>

namespace mdw {

namespace {

Vec unit(int dim, int i) {
  Vec v = Vec::Zero(dim);
  v[i] = 1.0;
  return v;
}

/// Window of a periodic template on the absolute interval [lo, hi].
VectorMeasure window_periodic(const PeriodicTemplate& p, Real lo, Real hi) {
  const Real P = p.period;
  std::vector<Atom> atoms;
  const long k0 = static_cast<long>(std::floor(lo / P)) - 1;
  const long k1 = static_cast<long>(std::ceil(hi / P)) + 1;
  for (long k = k0; k <= k1; ++k)
    for (const auto& at : p.atoms) {
      const Real t = at.t + k * P;
      if (t >= lo && t <= hi) atoms.push_back({t, at.h});
    }
  std::vector<Real> knots;
  std::vector<Vec> nodes;
  if (!p.knots.empty()) {
    auto density = [&](Real t) {
      Real phase = std::fmod(t, P);
      if (phase < 0) phase += P;
      // linear interpolation on the template, wrapping the last segment
      const auto it = std::upper_bound(p.knots.begin(), p.knots.end(), phase);
      const std::size_t j = static_cast<std::size_t>(it - p.knots.begin());
      if (j == 0) return p.nodes.front();
      if (j >= p.knots.size()) {
        const Real t0 = p.knots.back(), t1 = P + p.knots.front();
        if (t1 <= t0) return p.nodes.back();
        const Real s = (phase - t0) / (t1 - t0);
        return Vec((1.0 - s) * p.nodes.back() + s * p.nodes.front());
      }
      const Real t0 = p.knots[j - 1], t1 = p.knots[j];
      const Real s = (phase - t0) / (t1 - t0);
      return Vec((1.0 - s) * p.nodes[j - 1] + s * p.nodes[j]);
    };
    knots.push_back(lo);
    for (long k = k0; k <= k1; ++k)
      for (Real tk : p.knots) {
        const Real t = tk + k * P;
        if (t > lo && t < hi) knots.push_back(t);
      }
    knots.push_back(hi);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    nodes.reserve(knots.size());
    for (Real t : knots) nodes.push_back(density(t));
  }
  return VectorMeasure(lo, hi, p.dim, std::move(atoms), std::move(knots), std::move(nodes));
}

VectorMeasure window_spikes(const SpikeTrain& sp, Real lo, Real hi) {
  std::vector<Atom> atoms;
  std::vector<Real> knots{lo, hi};
  std::vector<Vec> nodes{Vec::Zero(sp.dim), Vec::Zero(sp.dim)};
  bool any_density = false;
  const long kmin = std::max<long>(1, static_cast<long>(std::floor((lo - sp.start) / sp.spacing)) - 1);
  const long kmax = std::min<long>(sp.max_epoch,
                                   static_cast<long>(std::ceil((hi - sp.start) / sp.spacing)) + 1);
  std::vector<Real> extra;
  for (long k = kmin; k <= kmax; ++k) {
    const Real t0 = sp.start + k * sp.spacing;
    if (sp.kind == SpikeTrain::Kind::cancelling_pairs) {
      const Real sep = sp.sep0 / static_cast<Real>(k);
      if (t0 >= lo && t0 <= hi) atoms.push_back({t0, sp.mass * unit(sp.dim, 0)});
      if (t0 + sep >= lo && t0 + sep <= hi) atoms.push_back({t0 + sep, -sp.mass * unit(sp.dim, 0)});
    } else {
      const Real w = sp.width0 / static_cast<Real>(k);
      const Real mid = t0 + 0.5 * w;
      // mass-sp.mass hat on [t0, t0 + w], clipped by the window
      if (t0 < hi && t0 + w > lo) {
        any_density = true;
        for (Real t : {t0, mid, t0 + w})
          if (t > lo && t < hi) extra.push_back(t);
      }
    }
  }
  if (any_density) {
    knots.insert(knots.end(), extra.begin(), extra.end());
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    nodes.assign(knots.size(), Vec::Zero(sp.dim));
    for (long k = kmin; k <= kmax; ++k) {
      const Real t0 = sp.start + k * sp.spacing;
      const Real w = sp.width0 / static_cast<Real>(k);
      const Real mid = t0 + 0.5 * w;
      const Real peak = 2.0 * sp.mass / w;
      const int mode = static_cast<int>(k % sp.dim);
      for (std::size_t j = 0; j < knots.size(); ++j) {
        const Real t = knots[j];
        Real val = 0;
        if (t > t0 && t < mid) val = peak * (t - t0) / (mid - t0);
        else if (t == mid) val = peak;
        else if (t > mid && t < t0 + w) val = peak * (t0 + w - t) / (t0 + w - mid);
        if (val != 0) nodes[j][mode] += val;
      }
    }
  }
  return VectorMeasure(lo, hi, sp.dim, std::move(atoms), std::move(knots), std::move(nodes));
}

VectorMeasure window_profile(const AsymptoticProfile& pr, Real lo, Real hi) {
  auto value = [&](Real t) { return pr.c0 + pr.c1 * (2.0 / M_PI) * std::atan(t); };
  std::vector<Real> knots;
  const int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / pr.sample_dt)) + 1);
  for (int i = 0; i < n; ++i) knots.push_back(lo + (hi - lo) * i / (n - 1));
  std::vector<Vec> nodes;
  nodes.reserve(knots.size());
  for (Real t : knots) {
    Vec v(1);
    v[0] = value(t);
    nodes.push_back(v);
  }
  VectorMeasure base(lo, hi, 1, {}, std::move(knots), std::move(nodes));
  if (!pr.with_spikes) return base;
  return base + window_spikes(pr.spikes, lo, hi);
}

}  // namespace

GlobalMeasure GlobalMeasure::zero(int dim) {
  PeriodicTemplate p;
  p.period = 1.0;
  p.dim = dim;
  return GlobalMeasure(Family(std::move(p)));
}

int GlobalMeasure::dim() const {
  return std::visit(
      [](const auto& f) -> int {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PeriodicTemplate>) return f.dim;
        else if constexpr (std::is_same_v<T, SpikeTrain>) return f.dim;
        else if constexpr (std::is_same_v<T, AsymptoticProfile>) return 1;
        else return f.mu->dim();
      },
      family_);
}

VectorMeasure GlobalMeasure::window(Real tau, Real T) const {
  if (!(T > tau)) throw std::domain_error("GlobalMeasure::window: need T > tau");
  const Real lo = tau + shift_, hi = T + shift_;
  VectorMeasure shifted_window = std::visit(
      [&](const auto& f) -> VectorMeasure {
        using Ty = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<Ty, PeriodicTemplate>) return window_periodic(f, lo, hi);
        else if constexpr (std::is_same_v<Ty, SpikeTrain>) return window_spikes(f, lo, hi);
        else if constexpr (std::is_same_v<Ty, AsymptoticProfile>) return window_profile(f, lo, hi);
        else {
          if (lo < f.mu->a() || hi > f.mu->b())
            throw std::domain_error("GlobalMeasure::window: outside declared support");
          return f.mu->restrict(lo, hi);
        }
      },
      family_);
  return shifted_window.shifted(shift_);
}

Real GlobalMeasure::mb_norm_estimate(Real t_lo, Real t_hi) const {
  Real best = 0;
  for (Real t = t_lo; t + 1.0 <= t_hi + 1e-12; t += 0.5)
    best = std::max(best, window(t, t + 1.0).total_variation());
  return best;
}

std::vector<GlobalMeasure> GlobalMeasure::limit_members() const {
  if (const auto* pr = std::get_if<AsymptoticProfile>(&family_)) {
    AsymptoticProfile lo = *pr, hi = *pr;
    lo.c1 = 0;
    lo.c0 = pr->c0 - pr->c1;
    lo.with_spikes = false;
    hi.c1 = 0;
    hi.c0 = pr->c0 + pr->c1;
    hi.with_spikes = false;
    return {GlobalMeasure(Family(lo)), GlobalMeasure(Family(hi))};
  }
  return {};
}

Real wna_modulus(const GlobalMeasure& g, const Vec& psi, Real h, const std::vector<Real>& shifts) {
  if (!(h > 0)) throw std::domain_error("wna_modulus: need h > 0");
  Real m = 0;
  for (Real s : shifts) {
    const VectorMeasure win = g.window(s, s + h);
    m = std::max(m, std::abs(win.interval_value(s, s + h, true, true).dot(psi)));
  }
  return m;
}

WnaReport wna_scan(const GlobalMeasure& g, const Vec& psi, const std::vector<Real>& shifts,
                   Real ratio_threshold) {
  WnaReport rep;
  for (int j = 0; j <= 10; ++j) {
    const Real h = std::pow(2.0, -j);
    rep.window_sizes.push_back(h);
    rep.modulus.push_back(wna_modulus(g, psi, h, shifts));
  }
  rep.empirically_non_atomic =
      rep.modulus.back() < ratio_threshold * std::max(rep.modulus.front(), 1e-300);
  return rep;
}

std::vector<GlobalMeasure> hull_samples(const GlobalMeasure& g, const std::vector<Real>& shifts,
                                        bool include_limits) {
  std::vector<GlobalMeasure> out;
  for (Real s : shifts) out.push_back(g.shift(s));
  if (include_limits)
    for (auto& m : g.limit_members()) out.push_back(m);
  return out;
}

Real weak_star_distance(const VectorMeasure& mu1, const VectorMeasure& mu2,
                        const std::vector<std::function<Vec(Real)>>& tests) {
  Real d = 0;
  for (const auto& phi : tests)
    d = std::max(d, std::abs(mu1.integrate_against(phi) - mu2.integrate_against(phi)));
  return d;
}

std::vector<std::function<Vec(Real)>> default_test_family(Real a, Real b, int dim, int n_hats,
                                                          int n_modes) {
  std::vector<std::function<Vec(Real)>> fam;
  const int nm = std::min(dim, n_modes);
  for (int i = 0; i < n_hats; ++i) {
    const Real c = a + (b - a) * (i + 0.5) / n_hats;
    const Real w = (b - a) / n_hats;
    for (int m = 0; m < nm; ++m) {
      fam.push_back([c, w, m, dim](Real t) {
        Vec v = Vec::Zero(dim);
        v[m] = std::max(0.0, 1.0 - std::abs(t - c) / w);
        return v;
      });
    }
  }
  return fam;
}

}  // namespace mdw
