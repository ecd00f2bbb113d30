#include <doctest.h>

#include <cmath>

#include "mdw/nonlinearity.hpp"
#include "mdw/strichartz.hpp"
#include "oracle.hpp"

using namespace mdw;

namespace {

/// Direct basis-sum evaluation of a d=1 dof field at arbitrary x (independent
/// of the grid transform path).
Real eval_field_1d(const ModeGrid& g, const Vec& dof, Real x) {
  const Real V = g.volume();
  Real u = dof[0] / std::sqrt(V);
  for (int k = 1; k <= g.k_max(); ++k) {
    const int ic = g.cos_dof(k), is = g.sin_dof(k);
    u += dof[ic] * std::sqrt(2.0 / V) * std::cos(k * x);
    u += dof[is] * std::sqrt(2.0 / V) * std::sin(k * x);
  }
  return u;
}

Vec constant_field(const ModeGrid& g, Real c) {
  Vec dof = Vec::Zero(g.n_dof());
  dof[0] = c * std::sqrt(g.volume());
  return dof;
}

}  // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("grid transforms round-trip and Parseval") {
  for (int dim : {1, 3}) {
    const int n = dim == 1 ? 16 : 8;
    ModeGrid g(dim, n, 3);
    Rng rng(42 + dim);
    const Vec u = random_field(g, rng, 1.0);
    const Vec grid = g.to_grid(u);
    const Vec back = g.from_grid(grid);
    CHECK((back - u).norm() < 1e-12 * u.norm());
    // Parseval: coefficient l2 equals grid quadrature of u^2
    const Real l2_coeff = u.norm();
    const Real l2_grid = g.grid_lp(grid, 2.0);
    CHECK(std::abs(l2_coeff - l2_grid) < 1e-12 * l2_coeff);
  }
}

TEST_CASE("norms: constants and cos(x)") {
  ModeGrid g(1, 16, 3);
  const Vec c2 = constant_field(g, 2.0);
  for (Real p : {1.0, 2.0, 4.0, 6.0, 12.0})
    CHECK(norm_lp(g, c2, p) ==
          doctest::Approx(2.0 * std::pow(2 * M_PI, 1.0 / p)).epsilon(1e-12));
  CHECK(norm_lp(g, c2, std::numeric_limits<Real>::infinity()) == doctest::Approx(2.0));

  Vec cosx = Vec::Zero(g.n_dof());
  cosx[g.cos_dof(1)] = std::sqrt(M_PI);  // unit-amplitude cos(x)
  CHECK(eval_field_1d(g, cosx, 0.3) == doctest::Approx(std::cos(0.3)).epsilon(1e-13));
  CHECK(norm_l2(cosx) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(norm_lp(g, cosx, 2.0) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));

  ModeGrid g3(3, 8, 3);
  const Vec c3 = constant_field(g3, -1.5);
  CHECK(norm_lp(g3, c3, 2.0) ==
        doctest::Approx(1.5 * std::pow(2 * M_PI, 1.5)).epsilon(1e-12));
}

TEST_CASE("H^{0,p} equals L^p and the multiplier is diagonal") {
  ModeGrid g(1, 16, 3);
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const Vec u = random_field(g, rng, 1.0);
    for (Real p : {2.0, 4.0, 12.0})
      CHECK(norm_hap(g, u, 0.0, p) == doctest::Approx(norm_lp(g, u, p)).epsilon(1e-13));
    CHECK(norm_hs(g, u, 0.0) == doctest::Approx(u.norm()).epsilon(1e-14));
  }
}

TEST_CASE("interpolation inequality, p = 2 family") {
  ModeGrid g(1, 32, 3);
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec u = random_field(g, rng, rng.uniform(0.5, 2.0));
    const Real a1 = rng.uniform(-1.0, 2.0);
    const Real a2 = rng.uniform(-1.0, 2.0);
    const Real s = rng.uniform(0.0, 1.0);
    const Real a = s * a1 + (1 - s) * a2;
    const Real lhs = norm_hs(g, u, a);
    const Real rhs = std::pow(norm_hs(g, u, a1), s) * std::pow(norm_hs(g, u, a2), 1 - s);
    CHECK(lhs <= 1.0001 * rhs);
  }
}

TEST_CASE("embedding constant L^6 <- H^1 stays bounded under refinement") {
  Real prev_max = 0;
  std::vector<Real> maxima;
  for (int n : {16, 32, 64}) {
    ModeGrid g(1, n, 3);
    Rng rng(100 + n);
    Real worst = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const Vec u = random_field(g, rng, 1.0);
      worst = std::max(worst, norm_lp(g, u, 6.0) / norm_hs(g, u, 1.0));
    }
    maxima.push_back(worst);
    prev_max = worst;
  }
  (void)prev_max;
  CHECK(maxima[2] <= 1.25 * maxima[0]);  // no growth trend
  CHECK(maxima[1] <= 1.25 * maxima[0]);
}

TEST_CASE("apply_f: trivial cases") {
  ModeGrid g(1, 16, 3);
  for (auto nl : {Nonlinearity::quintic(), Nonlinearity::quintic_cubic(0.5),
                  Nonlinearity::quintic_sine()}) {
    const Vec zero = Vec::Zero(g.n_dof());
    CHECK(apply_f(g, nl, zero).norm() == 0.0);  // uses h(0) = 0
  }
  // constant field, pure quintic: f(c) = c^5 constant
  const Vec c = constant_field(g, 1.3);
  const Vec fc = apply_f(g, Nonlinearity::quintic(), c);
  const Vec expected = constant_field(g, std::pow(1.3, 5));
  CHECK((fc - expected).norm() < 1e-12 * expected.norm());
}

TEST_CASE("apply_f: quintic spectrum of a single cosine") {
  // cos^5 x = (10 cos x + 5 cos 3x + cos 5x) / 16
  ModeGrid g(1, 16, 3);
  Vec u = Vec::Zero(g.n_dof());
  u[g.cos_dof(1)] = std::sqrt(M_PI);  // cos(x)
  const Vec out = apply_f(g, Nonlinearity::quintic(), u);
  Vec expected = Vec::Zero(g.n_dof());
  expected[g.cos_dof(1)] = std::sqrt(M_PI) * 10.0 / 16.0;
  expected[g.cos_dof(3)] = std::sqrt(M_PI) * 5.0 / 16.0;
  expected[g.cos_dof(5)] = std::sqrt(M_PI) * 1.0 / 16.0;
  CHECK((out - expected).norm() < 1e-13 * expected.norm());
}

TEST_CASE("apply_f: padding 3 is alias-free (agrees with padding 4)") {
  for (int dim : {1, 3}) {
    const int n = dim == 1 ? 32 : 8;
    ModeGrid g3(dim, n, 3), g4(dim, n, 4);
    Rng rng(5 + dim);
    for (int trial = 0; trial < (dim == 1 ? 10 : 2); ++trial) {
      const Vec u = random_field(g3, rng, 1.0);
      const Vec a = apply_f(g3, Nonlinearity::quintic(), u);
      const Vec b = apply_f(g4, Nonlinearity::quintic(), u);
      CHECK((a - b).norm() < 1e-12 * (1.0 + b.norm()));
    }
  }
}

TEST_CASE("potential and nonlinear energy") {
  ModeGrid g(1, 16, 3);
  const Nonlinearity nl = Nonlinearity::quintic();
  CHECK(potential_energy(g, nl, Vec::Zero(g.n_dof())) == 0.0);
  // constant field: (F(c), 1) = |T| c^6 / 6
  const Real c = 0.9;
  CHECK(potential_energy(g, nl, constant_field(g, c)) ==
        doctest::Approx(2 * M_PI * std::pow(c, 6) / 6.0).epsilon(1e-13));
  ModeGrid g3(3, 8, 3);
  CHECK(potential_energy(g3, nl, constant_field(g3, c)) ==
        doctest::Approx(std::pow(2 * M_PI, 3) * std::pow(c, 6) / 6.0).epsilon(1e-11));

  // random field vs independent fine-grid quadrature
  Rng rng(3);
  const Vec u = random_field(g, rng, 1.5);
  const Real ref = oracle::midpoint_integral(
      [&](Real x) { return nl.antiderivative(eval_field_1d(g, u, x)); }, -M_PI, M_PI, 300000);
  CHECK(potential_energy(g, nl, u) == doctest::Approx(ref).epsilon(1e-10));

  // nonlinear energy = 1/2 ||xi||_E^2 + potential
  StatePair xi{u, random_field(g, rng, 1.0)};
  CHECK(nonlinear_energy(g, nl, xi) ==
        doctest::Approx(0.5 * energy_norm_sq(g, xi) + potential_energy(g, nl, u)));
}

TEST_CASE("projections: reconstruction and Pythagoras") {
  ModeGrid g(1, 32, 3);
  Rng rng(9);
  const StatePair xi{random_field(g, rng, 1.0), random_field(g, rng, 0.5)};
  const auto full = project(g, xi, g.n());
  CHECK((full.head.u - xi.u).norm() == 0.0);
  CHECK(full.tail.u.norm() == 0.0);
  const auto mean = project(g, xi, 0);
  for (long j = 1; j < g.n_dof(); ++j) CHECK(mean.head.u[j] == 0.0);
  CHECK(mean.head.u[0] == xi.u[0]);

  for (int np : {4, 8, 16}) {
    const auto sp = project(g, xi, np);
    CHECK((sp.head.u + sp.tail.u - xi.u).norm() == 0.0);
    for (Real alpha : {0.0, 0.25, 1.0}) {
      const Real whole = energy_norm_sq(g, xi, alpha);
      const Real parts = energy_norm_sq(g, sp.head, alpha) + energy_norm_sq(g, sp.tail, alpha);
      CHECK(std::abs(whole - parts) < 1e-13 * whole);
    }
  }
}

TEST_CASE("strichartz window norms") {
  // constant-in-time norm c: the window norm is c
  std::vector<Real> flat(101, 2.5);
  CHECK(strichartz_window(flat, 0.01) == doctest::Approx(2.5).epsilon(1e-12));

  // linear ramp: closed-form quartic integral
  const Real a = 0.5, b = 1.5;
  auto ramp_value = [&](int n_samples) {
    std::vector<Real> v(n_samples);
    for (int i = 0; i < n_samples; ++i) v[i] = a + b * (i / Real(n_samples - 1));
    return strichartz_window(v, 1.0 / (n_samples - 1));
  };
  const Real exact = std::pow((std::pow(a + b, 5) - std::pow(a, 5)) / (5 * b), 0.25);
  CHECK(ramp_value(101) == doctest::Approx(exact).epsilon(1e-7));
  // Richardson: halving the sample spacing moves the value by O(dt^4)
  const Real e1 = std::abs(ramp_value(101) - exact);
  const Real e2 = std::abs(ramp_value(201) - exact);
  CHECK(e2 <= e1 / 8.0 + 1e-15);

  CHECK_THROWS_AS(strichartz_window({1.0, 2.0}, 0.1), std::invalid_argument);

  // the L^{2/q}(L^{6/(1-q)}) family at q = 1/2 matches the quartic window
  std::vector<Real> v(51);
  for (int i = 0; i < 51; ++i) v[i] = 1.0 + 0.3 * std::sin(i * 0.2);
  CHECK(strichartz_window_q(v, 0.02, 0.5) ==
        doctest::Approx(strichartz_window(v, 0.02)).epsilon(1e-12));
}

TEST_SUITE_END();
