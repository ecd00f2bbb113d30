#include <doctest.h>

#include <cmath>

#include "mdw/propagator.hpp"
#include "mdw/quadrature.hpp"
#include "oracle.hpp"

using namespace mdw;

TEST_SUITE_BEGIN("propagator");

TEST_CASE("mode block: pinned values") {
  // t = 0 is the identity; negative times are out of contract
  CHECK((mode_block(7.3, 1.1, 0.0) - Mat2::Identity()).norm() == 0.0);
  CHECK_THROWS_AS(mode_block(1.0, 1.0, -0.5), std::domain_error);

  // gamma = 0, lambda = 1, t = pi/2: pure quarter rotation
  const Mat2 rot = mode_block(1.0, 0.0, M_PI / 2);
  Mat2 expected;
  expected << 0, 1, -1, 0;
  CHECK((rot - expected).norm() < 1e-15);

  // critically damped gamma = 2, lambda = 1: w(t) = e^{-t}(1+t) from (1, 0)
  const Mat2 crit = mode_block(1.0, 2.0, 1.0);
  CHECK(crit(0, 0) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
  CHECK(crit(1, 0) == doctest::Approx(-std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("mode block: finite-difference ODE residual over random draws") {
  // fourth-order central stencils at step 1e-4 keep the truncation floor
  // below the target across the full lambda range
  Rng rng(2024);
  Real worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Real lam = rng.uniform(1.0, 1e4);
    const Real gam = rng.uniform(0.0, 10.0);
    const Real t = rng.uniform(0.1, 5.0);
    const Real e = 1e-4;
    const Real wm2 = mode_block(lam, gam, t - 2 * e)(0, 0);
    const Real wm1 = mode_block(lam, gam, t - e)(0, 0);
    const Real w0 = mode_block(lam, gam, t)(0, 0);
    const Real wp1 = mode_block(lam, gam, t + e)(0, 0);
    const Real wp2 = mode_block(lam, gam, t + 2 * e)(0, 0);
    const Real wp = (wm2 - 8 * wm1 + 8 * wp1 - wp2) / (12 * e);
    const Real wpp = (-wm2 + 16 * wm1 - 30 * w0 + 16 * wp1 - wp2) / (12 * e * e);
    worst = std::max(worst, std::abs(wpp + gam * wp + lam * w0) / (lam + gam + 1));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("mode block: kernel identity and branch continuity") {
  Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    const Real q = rng.uniform(-25.0, 25.0);
    const Real t = rng.uniform(0.0, 5.0);
    const auto [c, s] = osc_kernel(q, t);
    // cos^2 + q sin^2/q = 1 in both trig and hyperbolic branches
    CHECK(std::abs(c * c + q * s * s - 1.0) < 1e-11 * (1 + c * c));
  }
  // continuity across the series/closed-form switch at |q| t^2 = 1e-6:
  // evaluate just below and just above the boundary at matched q so the true
  // change is negligible and any gap is a branch mismatch
  const Real t = 1.7;
  for (Real sign : {1.0, -1.0}) {
    const Real q_lo = sign * 1e-6 * (1 - 1e-9) / (t * t);  // series side
    const Real q_hi = sign * 1e-6 * (1 + 1e-9) / (t * t);  // closed-form side
    const auto a = osc_kernel(q_lo, t);
    const auto b = osc_kernel(q_hi, t);
    CHECK(std::abs(a.c - b.c) < 1e-10);
    CHECK(std::abs(a.s - b.s) < 1e-10);
  }
}

TEST_CASE("mode block: semigroup law in the energy scaling") {
  Rng rng(4);
  Real worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Real lam = rng.uniform(1.0, 1e4);
    const Real gam = rng.uniform(0.0, 10.0);
    const Real t = rng.uniform(0.0, 5.0);
    const Real s = rng.uniform(0.0, 5.0);
    Mat2 D = Mat2::Identity();
    D(0, 0) = std::sqrt(lam);
    Mat2 Dinv = Mat2::Identity();
    Dinv(0, 0) = 1.0 / std::sqrt(lam);
    const Mat2 lhs = D * mode_block(lam, gam, t + s) * Dinv;
    const Mat2 rhs = (D * mode_block(lam, gam, t) * Dinv) * (D * mode_block(lam, gam, s) * Dinv);
    worst = std::max(worst, (lhs - rhs).norm());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("decay rate: slow overdamped root above gamma = 2") {
  CHECK(decay_rate(1.0) == doctest::Approx(0.5));
  CHECK(decay_rate(2.0) == doctest::Approx(1.0));
  CHECK(decay_rate(10.0) == doctest::Approx(0.10102051443364424).epsilon(1e-12));
}

TEST_CASE("homogeneous propagation") {
  ModeGrid g(1, 16, 3);
  Rng rng(8);
  const StatePair xi{random_field(g, rng, 1.5), random_field(g, rng, 0.5)};

  LinearPropagator p0(g, 0.0);
  CHECK(energy_norm(g, p0.propagate_homogeneous(xi, 0.0) - xi) == 0.0);
  // gamma = 0 conserves each per-mode quadratic energy lambda u^2 + v^2
  const StatePair rolled = p0.propagate_homogeneous(xi, 2.37);
  for (long j = 0; j < g.n_dof(); ++j) {
    const Real lam = g.lambda()[j];
    const Real e0 = lam * xi.u[j] * xi.u[j] + xi.v[j] * xi.v[j];
    const Real e1 = lam * rolled.u[j] * rolled.u[j] + rolled.v[j] * rolled.v[j];
    CHECK(std::abs(e1 - e0) <= 1e-12 * (e0 + 1e-30));
  }

  // gamma = 1: fitted log-energy slope at least gamma/2 - 0.02
  LinearPropagator p1(g, 1.0);
  std::vector<Real> ts, le;
  for (int i = 0; i <= 200; ++i) {
    const Real t = 20.0 * i / 200;
    ts.push_back(t);
    le.push_back(std::log(energy_norm(g, p1.propagate_homogeneous(xi, t))));
  }
  const Real slope = -ls_slope(ts, le);
  CHECK(slope >= 0.5 - 0.02);
}

TEST_CASE("duhamel: atoms and trivial cases") {
  ModeGrid g(1, 16, 3);
  LinearPropagator prop(g, 0.7);
  Rng rng(12);
  const StatePair xi{random_field(g, rng, 1.5), random_field(g, rng, 0.5)};
  const int dim = static_cast<int>(g.n_dof());

  // mu = 0 reduces to the homogeneous flow
  const VectorMeasure zero = VectorMeasure::zero(0, 1, dim);
  CHECK(energy_norm(g, prop.duhamel(xi, zero, 0, 1) - prop.propagate_homogeneous(xi, 1.0)) == 0.0);

  // single atom: S(t - tau) xi + S(t - s0)(0, h)
  const Vec h = random_field(g, rng, 1.0);
  const Real s0 = 0.4;
  const VectorMeasure one = VectorMeasure::atomic(0, 1, dim, {{s0, h}});
  const StatePair got = prop.duhamel(xi, one, 0, 1);
  StatePair kicked = StatePair::zero(g);
  kicked.v = h;
  const StatePair expect =
      prop.propagate_homogeneous(xi, 1.0) + prop.propagate_homogeneous(kicked, 1.0 - s0);
  CHECK(energy_norm(g, got - expect) < 1e-13 * energy_norm(g, expect));

  // left-limit convention: an atom exactly at t is excluded
  const VectorMeasure at_end = VectorMeasure::atomic(0, 1, dim, {{1.0, h}});
  CHECK(energy_norm(g, prop.duhamel(xi, at_end, 0, 1) - prop.propagate_homogeneous(xi, 1.0)) ==
        0.0);

  // measures must live on the same coefficient grid
  const VectorMeasure wrong_dim = VectorMeasure::zero(0, 1, dim + 1);
  CHECK_THROWS_AS(prop.duhamel(xi, wrong_dim, 0, 1), std::invalid_argument);
}

TEST_CASE("duhamel: two-sided jump via direct left/right evaluation") {
  ModeGrid g(1, 16, 3);
  LinearPropagator prop(g, 1.3);
  Rng rng(21);
  Real worst = 0;
  for (int i = 0; i < 20; ++i) {
    const StatePair xi{random_field(g, rng, 1.5), random_field(g, rng, 0.5)};
    const Vec h = random_field(g, rng, 1.0);
    const Real ta = rng.uniform(0.2, 0.8);
    const VectorMeasure mu = VectorMeasure::atomic(0, 1, static_cast<int>(g.n_dof()), {{ta, h}});
    const Vec v_minus = prop.duhamel(xi, mu, 0, ta).v;
    const Vec v_plus = prop.duhamel(xi, mu, 0, std::nextafter(ta, 1.0)).v;
    worst = std::max(worst, ((v_plus - v_minus) - h).norm() / h.norm());
    CHECK((prop.jump_report(mu, ta) - h).norm() == 0.0);
    CHECK(prop.jump_report(mu, 0.3 * ta).norm() == 0.0);
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("duhamel: smooth density against the adaptive oscillator reference") {
  ModeGrid g(1, 8, 3);
  const Real gamma = 0.5;
  LinearPropagator prop(g, gamma);
  const int dim = static_cast<int>(g.n_dof());
  std::vector<Real> knots;
  std::vector<Vec> nodes;
  const int nk = 40;
  for (int i = 0; i <= nk; ++i) {
    const Real t = i / Real(nk);
    knots.push_back(t);
    Vec v(dim);
    for (int j = 0; j < dim; ++j) v[j] = std::sin(2 * M_PI * t + 0.7 * j) / (1.0 + j);
    nodes.push_back(v);
  }
  const VectorMeasure mu(0, 1, dim, {}, knots, nodes);
  Rng rng(31);
  const StatePair xi{random_field(g, rng, 1.5), random_field(g, rng, 0.5)};
  const StatePair got = prop.duhamel(xi, mu, 0, 1);
  const StatePair ref = oracle::linear_reference(g, gamma, xi, mu, 0, 1, 1e-12);
  CHECK(energy_norm(g, got - ref) <= 1e-8 * energy_norm(g, ref));
}

TEST_CASE("duhamel: linearity in the measure") {
  ModeGrid g(1, 8, 3);
  LinearPropagator prop(g, 0.9);
  const int dim = static_cast<int>(g.n_dof());
  Rng rng(41);
  const StatePair xi{random_field(g, rng, 1.5), random_field(g, rng, 0.5)};
  const VectorMeasure mu1 =
      VectorMeasure::atomic(0, 1, dim, {{0.3, random_field(g, rng, 1.0)}});
  std::vector<Real> knots{0.0, 0.5, 1.0};
  std::vector<Vec> nodes{random_field(g, rng, 1.0), random_field(g, rng, 1.0),
                         random_field(g, rng, 1.0)};
  const VectorMeasure mu2(0, 1, dim, {}, knots, nodes);
  const StatePair sum = prop.duhamel(xi, mu1 + mu2, 0, 1);
  const StatePair split =
      prop.duhamel(xi, mu1, 0, 1) + prop.duhamel(StatePair::zero(g), mu2, 0, 1);
  CHECK(energy_norm(g, sum - split) <= 1e-13 * energy_norm(g, sum));
}

TEST_CASE("duhamel: mollified and delta-approximated measures converge") {
  ModeGrid g(1, 8, 3);
  LinearPropagator prop(g, 0.5);
  const int dim = static_cast<int>(g.n_dof());
  Rng rng(51);
  // atoms plus density, so both approximation routes are exercised
  std::vector<Atom> atoms{{0.35, random_field(g, rng, 1.0)}};
  std::vector<Real> knots{0.0, 0.5, 1.0};
  std::vector<Vec> nodes{random_field(g, rng, 1.0), random_field(g, rng, 1.0),
                         random_field(g, rng, 1.0)};
  const VectorMeasure mu(0, 1, dim, atoms, knots, nodes);
  const StatePair xi{random_field(g, rng, 1.5), random_field(g, rng, 0.5)};
  const StatePair exact = prop.duhamel(xi, mu, 0, 1);

  Real prev_m = 1e300, prev_d = 1e300;
  for (int n : {4, 16, 64, 256}) {
    const Real em = energy_norm(g, prop.duhamel(xi, mu.mollify(n), 0, 1) - exact);
    const Real ed = energy_norm(g, prop.duhamel(xi, mu.delta_approximation(n), 0, 1) - exact);
    CHECK(em <= prev_m + 1e-12);
    CHECK(ed <= prev_d + 1e-12);
    prev_m = em;
    prev_d = ed;
  }
  CHECK(prev_m < 1e-2);
  CHECK(prev_d < 1e-2);
}

TEST_CASE("linear diagnostics: fitted constant stable across resolutions") {
  std::vector<Real> consts;
  for (int n : {8, 16, 32}) {
    ModeGrid g(1, n, 3);
    LinearPropagator prop(g, 1.0);
    const int dim = static_cast<int>(g.n_dof());
    std::vector<Real> knots{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<Vec> nodes;
    for (int i = 0; i < 5; ++i) {
      Vec v = Vec::Zero(dim);
      for (int j = 0; j < std::min(dim, 3); ++j) v[j] = std::sin(2 * M_PI * i / 4.0 + j);
      nodes.push_back(v);
    }
    const VectorMeasure win(0, 1, dim, {}, knots, nodes);
    Rng rng(55);  // same seed: the low-mode content matches across n
    StatePair xi = StatePair::zero(g);
    xi.u[0] = 0.5;
    xi.v[1 % dim] = 0.5;
    std::vector<Real> times, energies;
    StatePair cur = xi;
    times.push_back(0.0);
    energies.push_back(energy_norm(g, cur));
    for (int i = 1; i <= 100; ++i) {
      cur = prop.duhamel(cur, win, (i - 1) / 100.0, i / 100.0);
      times.push_back(i / 100.0);
      energies.push_back(energy_norm(g, cur));
    }
    const auto rep = linear_diagnostics(prop, win, 0.0, times, energies, {}, energy_norm(g, xi));
    consts.push_back(rep.fitted_energy_constant);
    (void)rng;
  }
  const Real lo = *std::min_element(consts.begin(), consts.end());
  const Real hi = *std::max_element(consts.begin(), consts.end());
  CHECK(hi <= 2.0 * lo);  // no growth with resolution
}

TEST_CASE("linear diagnostics: homogeneous run reproduces the decay fit") {
  ModeGrid g(1, 16, 3);
  LinearPropagator prop(g, 1.0);
  Rng rng(61);
  StatePair xi{random_field(g, rng, 1.5), random_field(g, rng, 0.5)};
  std::vector<Real> times, energies;
  for (int i = 0; i <= 100; ++i) {
    const Real t = 10.0 * i / 100;
    times.push_back(t);
    energies.push_back(energy_norm(g, prop.propagate_homogeneous(xi, t)));
  }
  const VectorMeasure none = VectorMeasure::zero(0, 10, static_cast<int>(g.n_dof()));
  const auto rep = linear_diagnostics(prop, none, 0.0, times, energies, {}, energies.front());
  CHECK(rep.fitted_decay_slope >= 0.48);
  // the oscillatory overshoot keeps the fitted constant above 1 but small
  CHECK(rep.fitted_energy_constant <= 2.0);
  // zero data: all zeros
  const auto zero_rep = linear_diagnostics(prop, none, 0.0, {0.0, 1.0}, {0.0, 0.0}, {}, 0.0);
  CHECK(zero_rep.fitted_energy_constant == 0.0);
  CHECK(zero_rep.fitted_strichartz_constant == 0.0);
}

TEST_SUITE_END();
