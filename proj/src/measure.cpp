#include "mdw/measure.hpp"

#include <algorithm>
#include <cmath>

#include "mdw/quadrature.hpp"

namespace mdw {

namespace {

bool nearly_zero(const Vec& v) { return v.lpNorm<Eigen::Infinity>() == 0.0; }

/// Exact integral of ||(1-s) p + s q|| over the segment [t0, t1] mapped to
/// s in [0,1]. Collinear node pairs reduce to |alpha + s beta| which is
/// integrated exactly with a zero-crossing split; otherwise the integrand is
/// smooth and strictly positive, so adaptive quadrature converges fast.
Real segment_norm_integral(const Vec& p, const Vec& q, Real t0, Real t1) {
  const Real len = t1 - t0;
  if (len <= 0) return 0.0;
  const Real np = p.norm(), nq = q.norm();
  if (np == 0.0 && nq == 0.0) return 0.0;
  // collinear (includes either endpoint zero): q = c p or p = c q
  const Vec& base = (np >= nq) ? p : q;
  const Real nb = std::max(np, nq);
  const Real alpha = p.dot(base) / nb;  // signed magnitudes along base
  const Real beta = q.dot(base) / nb;
  const bool collinear = (p - alpha / nb * base).norm() <= 1e-14 * nb &&
                         (q - beta / nb * base).norm() <= 1e-14 * nb;
  if (collinear) {
    // |(1-s) alpha + s beta| piecewise linear in s
    if (alpha * beta >= 0.0) return 0.5 * (std::abs(alpha) + std::abs(beta)) * len;
    const Real s0 = alpha / (alpha - beta);  // zero crossing in (0,1)
    return 0.5 * (std::abs(alpha) * s0 + std::abs(beta) * (1.0 - s0)) * len;
  }
  auto f = [&](Real t) {
    const Real s = (t - t0) / len;
    return ((1.0 - s) * p + s * q).norm();
  };
  return adaptive_gauss(f, t0, t1, 1e-14);
}

}  // namespace

VectorMeasure::VectorMeasure(Real a, Real b, int dim, std::vector<Atom> atoms,
                             std::vector<Real> knots, std::vector<Vec> nodes)
    : a_(a), b_(b), dim_(dim) {
  if (!(b > a)) throw std::invalid_argument("VectorMeasure: need b > a");
  if (dim <= 0) throw std::invalid_argument("VectorMeasure: dim must be positive");
  if (knots.size() != nodes.size())
    throw std::invalid_argument("VectorMeasure: knot/node count mismatch");
  if (!knots.empty()) {
    if (knots.size() < 2) throw std::invalid_argument("VectorMeasure: density needs >= 2 knots");
    if (std::abs(knots.front() - a) > 0 || std::abs(knots.back() - b) > 0)
      throw std::invalid_argument("VectorMeasure: density must span [a,b]");
    for (std::size_t i = 1; i < knots.size(); ++i)
      if (!(knots[i] > knots[i - 1]))
        throw std::invalid_argument("VectorMeasure: knots must increase strictly");
    for (const auto& v : nodes)
      if (v.size() != dim) throw std::invalid_argument("VectorMeasure: node dim mismatch");
    bool all_zero = true;
    for (const auto& v : nodes) all_zero = all_zero && nearly_zero(v);
    if (!all_zero) {
      knots_ = std::move(knots);
      nodes_ = std::move(nodes);
    }
  }
  // sort atoms, merge simultaneous ones by vector addition, drop zeros
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.t < y.t; });
  for (auto& at : atoms) {
    if (at.h.size() != dim) throw std::invalid_argument("VectorMeasure: atom dim mismatch");
    if (at.t < a || at.t > b) throw std::invalid_argument("VectorMeasure: atom outside window");
    if (!atoms_.empty() && atoms_.back().t == at.t)
      atoms_.back().h += at.h;
    else
      atoms_.push_back(std::move(at));
  }
  atoms_.erase(std::remove_if(atoms_.begin(), atoms_.end(),
                              [](const Atom& x) { return nearly_zero(x.h); }),
               atoms_.end());
}

VectorMeasure VectorMeasure::zero(Real a, Real b, int dim) {
  return VectorMeasure(a, b, dim, {}, {}, {});
}

VectorMeasure VectorMeasure::atomic(Real a, Real b, int dim, std::vector<Atom> atoms) {
  return VectorMeasure(a, b, dim, std::move(atoms), {}, {});
}

VectorMeasure VectorMeasure::with_density(Real a, Real b, int dim, std::vector<Real> knots,
                                          std::vector<Vec> nodes) {
  return VectorMeasure(a, b, dim, {}, std::move(knots), std::move(nodes));
}

Vec VectorMeasure::density_at(Real t) const {
  if (knots_.empty()) return Vec::Zero(dim_);
  if (t <= knots_.front()) return nodes_.front();
  if (t >= knots_.back()) return nodes_.back();
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - knots_.begin());
  const Real t0 = knots_[j - 1], t1 = knots_[j];
  const Real s = (t - t0) / (t1 - t0);
  return (1.0 - s) * nodes_[j - 1] + s * nodes_[j];
}

Vec VectorMeasure::atom_at(Real t) const {
  for (const auto& at : atoms_)
    if (at.t == t) return at.h;
  return Vec::Zero(dim_);
}

Vec VectorMeasure::density_integral(Real s, Real t) const {
  Vec acc = Vec::Zero(dim_);
  if (knots_.empty() || t <= s) return acc;
  s = std::max(s, a_);
  t = std::min(t, b_);
  // walk the segments, trapezoid is exact on each clipped piece
  for (std::size_t j = 0; j + 1 < knots_.size(); ++j) {
    const Real t0 = knots_[j], t1 = knots_[j + 1];
    const Real lo = std::max(s, t0), hi = std::min(t, t1);
    if (hi <= lo) continue;
    const Real seg = t1 - t0;
    const Real s0 = (lo - t0) / seg, s1 = (hi - t0) / seg;
    const Vec vlo = (1.0 - s0) * nodes_[j] + s0 * nodes_[j + 1];
    const Vec vhi = (1.0 - s1) * nodes_[j] + s1 * nodes_[j + 1];
    acc += 0.5 * (hi - lo) * (vlo + vhi);
  }
  return acc;
}

Vec VectorMeasure::primitive(Real t) const {
  Vec acc = density_integral(a_, t);
  for (const auto& at : atoms_) {
    if (at.t < t) acc += at.h;
    else break;
  }
  return acc;
}

Vec VectorMeasure::distribution(Real t) const {
  if (t < a_ || t > b_) throw std::domain_error("distribution: t outside [a,b]");
  Vec v = primitive(t);
  if (t == b_) v += atom_at(b_);
  return v;
}

Vec VectorMeasure::interval_value(Real s, Real t, bool left_closed, bool right_closed) const {
  if (s > t) throw std::domain_error("interval_value: need s <= t");
  if (s < a_ || t > b_) throw std::domain_error("interval_value: window outside [a,b]");
  if (s == t)  // [t,t] is the point mass, the other three brackets are empty
    return (left_closed && right_closed) ? atom_at(t) : Vec(Vec::Zero(dim_));
  Vec v = primitive(t) - primitive(s);  // [s, t)
  if (!left_closed) v -= atom_at(s);
  if (right_closed) v += atom_at(t);
  return v;
}

Real VectorMeasure::total_variation() const {
  Real tv = 0;
  for (const auto& at : atoms_) tv += at.h.norm();
  for (std::size_t j = 0; j + 1 < knots_.size(); ++j)
    tv += segment_norm_integral(nodes_[j], nodes_[j + 1], knots_[j], knots_[j + 1]);
  return tv;
}

Real VectorMeasure::integrate_against(const std::function<Vec(Real)>& f, Real quad_tol) const {
  Real acc = 0;
  for (const auto& at : atoms_) acc += f(at.t).dot(at.h);
  for (std::size_t j = 0; j + 1 < knots_.size(); ++j) {
    const Real t0 = knots_[j], t1 = knots_[j + 1];
    const Vec& p = nodes_[j];
    const Vec& q = nodes_[j + 1];
    auto g = [&](Real t) {
      const Real s = (t - t0) / (t1 - t0);
      return f(t).dot((1.0 - s) * p + s * q);
    };
    acc += adaptive_gauss(g, t0, t1, quad_tol);
  }
  return acc;
}

VectorMeasure VectorMeasure::restrict(Real s, Real t) const {
  if (s < a_ || t > b_ || s >= t) throw std::domain_error("restrict: bad sub-window");
  std::vector<Atom> atoms;
  for (const auto& at : atoms_)
    if (at.t >= s && at.t <= t) atoms.push_back(at);
  std::vector<Real> knots;
  std::vector<Vec> nodes;
  if (!knots_.empty()) {
    knots.push_back(s);
    nodes.push_back(density_at(s));
    for (std::size_t j = 0; j < knots_.size(); ++j)
      if (knots_[j] > s && knots_[j] < t) {
        knots.push_back(knots_[j]);
        nodes.push_back(nodes_[j]);
      }
    knots.push_back(t);
    nodes.push_back(density_at(t));
  }
  return VectorMeasure(s, t, dim_, std::move(atoms), std::move(knots), std::move(nodes));
}

VectorMeasure VectorMeasure::refined(const std::vector<Real>& extra_knots) const {
  if (knots_.empty()) return *this;
  std::vector<Real> knots = knots_;
  for (Real t : extra_knots)
    if (t > a_ && t < b_) knots.push_back(t);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  std::vector<Vec> nodes;
  nodes.reserve(knots.size());
  for (Real t : knots) nodes.push_back(density_at(t));
  return VectorMeasure(a_, b_, dim_, atoms_, std::move(knots), std::move(nodes));
}

VectorMeasure VectorMeasure::shifted(Real s) const {
  std::vector<Atom> atoms = atoms_;
  for (auto& at : atoms) at.t -= s;
  std::vector<Real> knots = knots_;
  for (auto& t : knots) t -= s;
  return VectorMeasure(a_ - s, b_ - s, dim_, std::move(atoms), std::move(knots), nodes_);
}

VectorMeasure VectorMeasure::operator+(const VectorMeasure& other) const {
  if (other.dim_ != dim_ || other.a_ != a_ || other.b_ != b_)
    throw std::invalid_argument("VectorMeasure+: window/dim mismatch");
  std::vector<Atom> atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  std::vector<Real> knots;
  std::vector<Vec> nodes;
  if (!knots_.empty() || !other.knots_.empty()) {
    knots = knots_;
    knots.insert(knots.end(), other.knots_.begin(), other.knots_.end());
    if (knots_.empty() || other.knots_.empty()) {
      knots.push_back(a_);
      knots.push_back(b_);
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    nodes.reserve(knots.size());
    for (Real t : knots) nodes.push_back(density_at(t) + other.density_at(t));
  }
  return VectorMeasure(a_, b_, dim_, std::move(atoms), std::move(knots), std::move(nodes));
}

VectorMeasure VectorMeasure::operator*(Real c) const {
  std::vector<Atom> atoms = atoms_;
  for (auto& at : atoms) at.h *= c;
  std::vector<Vec> nodes = nodes_;
  for (auto& v : nodes) v *= c;
  return VectorMeasure(a_, b_, dim_, std::move(atoms), knots_, std::move(nodes));
}

VectorMeasure VectorMeasure::project_tail(int n_low) const {
  if (n_low < 0 || n_low > dim_) throw std::domain_error("project_tail: bad cutoff");
  auto zap = [&](Vec v) {
    v.head(n_low).setZero();
    return v;
  };
  std::vector<Atom> atoms = atoms_;
  for (auto& at : atoms) at.h = zap(at.h);
  std::vector<Vec> nodes = nodes_;
  for (auto& v : nodes) v = zap(v);
  return VectorMeasure(a_, b_, dim_, std::move(atoms), knots_, std::move(nodes));
}

VectorMeasure VectorMeasure::project_head(int n_low) const {
  if (n_low < 0 || n_low > dim_) throw std::domain_error("project_head: bad cutoff");
  auto zap = [&](Vec v) {
    v.tail(dim_ - n_low).setZero();
    return v;
  };
  std::vector<Atom> atoms = atoms_;
  for (auto& at : atoms) at.h = zap(at.h);
  std::vector<Vec> nodes = nodes_;
  for (auto& v : nodes) v = zap(v);
  return VectorMeasure(a_, b_, dim_, std::move(atoms), knots_, std::move(nodes));
}

VectorMeasure VectorMeasure::delta_approximation(int n) const {
  if (n < 1) throw std::domain_error("delta_approximation: need n >= 1");
  std::vector<Atom> atoms = atoms_;  // atomic part kept verbatim
  const Real h = (b_ - a_) / n;
  for (int k = 0; k < n; ++k) {
    const Real t0 = a_ + k * h;
    const Real t1 = (k + 1 == n) ? b_ : a_ + (k + 1) * h;
    Vec cell = density_integral(t0, t1);
    if (!nearly_zero(cell)) atoms.push_back({t0, std::move(cell)});
  }
  return VectorMeasure(a_, b_, dim_, std::move(atoms), {}, {});
}

VectorMeasure VectorMeasure::mollify(int n) const {
  if (n < 1) throw std::domain_error("mollify: need n >= 1");
  const Real w = std::min(1.0 / n, b_ - a_);
  VectorMeasure out(a_, b_, dim_, {}, knots_, nodes_);
  for (const auto& at : atoms_) {
    // Unit-mass hat trailing the atom: support [t_k, t_k + w] squeezed at b,
    // so Phi_n(t) -> Phi(t) holds at every t in [a,b), jump points included.
    // An atom sitting exactly at b has no room on the right and is smeared
    // from the left instead (its jump only enters Phi at t = b anyway).
    Real lo, hi;
    if (at.t < b_) {
      lo = at.t;
      hi = at.t + std::min(w, b_ - at.t);
    } else {
      lo = b_ - w;
      hi = b_;
    }
    const Real mid = 0.5 * (lo + hi);
    const Real peak = 2.0 / (hi - lo);
    const Vec z = Vec::Zero(dim_);
    std::vector<Real> knots{a_, lo, mid, hi, b_};
    std::vector<Vec> nodes{z, z, peak * at.h, z, z};
    std::vector<Real> ck;
    std::vector<Vec> cn;
    for (std::size_t i = 0; i < knots.size(); ++i) {
      if (!ck.empty() && knots[i] <= ck.back()) continue;
      ck.push_back(knots[i]);
      cn.push_back(nodes[i]);
    }
    out = out + VectorMeasure(a_, b_, dim_, {}, std::move(ck), std::move(cn));
  }
  return out;
}

Real DistributionFunction::variation_on(const std::vector<Real>& partition) const {
  Real s = 0;
  for (std::size_t i = 1; i < partition.size(); ++i)
    s += ((*this)(partition[i]) - (*this)(partition[i - 1])).norm();
  return s;
}

Real DistributionFunction::dyadic_variation(int level) const {
  const Real a = mu_->a(), b = mu_->b();
  std::vector<Real> pts;
  const int n = 1 << level;
  for (int i = 0; i <= n; ++i) pts.push_back(a + (b - a) * i / n);
  for (const auto& at : mu_->atoms()) {
    pts.push_back(at.t);
    if (at.t + 1e-9 * (b - a) < b) pts.push_back(at.t + 1e-9 * (b - a));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return variation_on(pts);
}

PolarDecomposition polar_decompose(const VectorMeasure& mu) {
  if (mu.total_variation() <= 0.0)
    throw std::domain_error("polar_decompose: zero measure has no polar factorisation");
  PolarDecomposition pd;
  pd.dim = mu.dim();
  pd.a = mu.a();
  pd.b = mu.b();
  for (const auto& at : mu.atoms()) {
    pd.atom_times.push_back(at.t);
    pd.atom_masses.push_back(at.h.norm());
    pd.atom_directions.push_back(at.h / at.h.norm());
  }
  const VectorMeasure* m = &mu;
  pd.density_magnitude = [m](Real t) { return m->density_at(t).norm(); };
  pd.direction = [m](Real t) {
    Vec v = m->density_at(t);
    const Real n = v.norm();
    return n > 0 ? Vec(v / n) : Vec(Vec::Zero(v.size()));
  };
  return pd;
}

Vec PolarDecomposition::reconstruct(Real s, Real t, Real quad_tol) const {
  Vec acc = Vec::Zero(dim);
  for (std::size_t k = 0; k < atom_times.size(); ++k)
    if (atom_times[k] >= s && atom_times[k] <= t) acc += atom_masses[k] * atom_directions[k];
  for (int i = 0; i < dim; ++i) {
    auto g = [&](Real x) { return direction(x)[i] * density_magnitude(x); };
    acc[i] += adaptive_gauss(g, s, t, quad_tol);
  }
  return acc;
}

Real regularity_gap(const VectorMeasure& mu, RegularityKind kind, int n) {
  if (kind == RegularityKind::space) return (mu - mu.project_head(n)).total_variation();
  return (mu - mu.mollify(n)).total_variation();
}

std::vector<Real> equi_integrability_modulus(const std::vector<VectorMeasure>& family,
                                             const std::vector<Real>& window_sizes,
                                             int scan_points) {
  for (const auto& m : family)
    if (!m.atoms().empty())
      throw std::invalid_argument("equi_integrability_modulus: atomic input");
  std::vector<Real> out;
  out.reserve(window_sizes.size());
  for (Real h : window_sizes) {
    Real omega = 0;
    for (const auto& m : family) {
      const Real a = m.a(), b = m.b();
      const Real span = b - a;
      const Real hh = std::min(h, span);
      for (int i = 0; i < scan_points; ++i) {
        const Real s = a + (span - hh) * i / std::max(1, scan_points - 1);
        omega = std::max(omega, m.restrict(s, s + hh).total_variation());
      }
    }
    out.push_back(omega);
  }
  return out;
}

}  // namespace mdw
