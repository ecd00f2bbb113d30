#include <doctest.h>

#include <cmath>

#include "mdw/global_measure.hpp"
#include "mdw/measure.hpp"
#include "oracle.hpp"

using namespace mdw;

namespace {

Vec scal(Real x) {
  Vec v(1);
  v[0] = x;
  return v;
}

VectorMeasure sampled_density(Real a, Real b, int n, const std::function<Real(Real)>& f) {
  std::vector<Real> knots;
  std::vector<Vec> nodes;
  for (int i = 0; i <= n; ++i) {
    const Real t = a + (b - a) * i / n;
    knots.push_back(t);
    nodes.push_back(scal(f(t)));
  }
  return VectorMeasure::with_density(a, b, 1, knots, nodes);
}

}  // namespace

TEST_SUITE_BEGIN("measure");

TEST_CASE("total variation: atoms") {
  VectorMeasure two_delta = VectorMeasure::atomic(0, 1, 1, {{0.5, scal(2.0)}});
  CHECK(two_delta.total_variation() == doctest::Approx(2.0).epsilon(1e-15));

  VectorMeasure pair = VectorMeasure::atomic(0, 1, 1, {{0.3, scal(1.0)}, {0.7, scal(-1.0)}});
  CHECK(pair.total_variation() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("total variation: |sin| density against the Riemann oracle") {
  auto mu = sampled_density(0, M_PI, 2000, [](Real t) { return std::sin(t); });
  const Real oracle_exact = oracle::midpoint_integral([](Real t) { return std::abs(std::sin(t)); },
                                                      0, M_PI, 200000);
  CHECK(std::abs(oracle_exact - 2.0) < 1e-8);
  CHECK(mu.total_variation() == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("total variation: sign-changing collinear segment is split exactly") {
  // density ramps from -1 to +1: integral of |rho| = 1/2 + 1/2 twice the area
  VectorMeasure mu =
      VectorMeasure::with_density(0, 1, 1, {0.0, 1.0}, {scal(-1.0), scal(1.0)});
  CHECK(mu.total_variation() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("distribution: left continuity and endpoint convention") {
  Vec h = Vec::Zero(3);
  h[1] = 2.0;
  VectorMeasure mu(0, 1, 3, {{0.5, h}}, {}, {});
  CHECK(mu.distribution(0.5).norm() == 0.0);
  CHECK((mu.distribution(0.6) - h).norm() == 0.0);
  CHECK((mu.distribution(1.0) - h).norm() == 0.0);
  CHECK_THROWS_AS(mu.distribution(1.5), std::domain_error);

  VectorMeasure atb(0, 1, 3, {{1.0, h}}, {}, {});
  CHECK(atb.distribution(1.0 - 1e-12).norm() == 0.0);
  CHECK((atb.distribution(1.0) - h).norm() == 0.0);  // Phi(b) = mu([a,b])
}

TEST_CASE("distribution: constant density quadrature") {
  VectorMeasure mu = VectorMeasure::with_density(0, 1, 1, {0.0, 1.0}, {scal(3.0), scal(3.0)});
  const Real oracle_val =
      oracle::midpoint_integral([](Real) { return 3.0; }, 0.0, 0.4, 10000);
  CHECK(mu.distribution(0.4)[0] == doctest::Approx(oracle_val).epsilon(1e-12));
  CHECK(mu.distribution(0.4)[0] == doctest::Approx(1.2).epsilon(1e-14));
}

TEST_CASE("interval value: bracket conventions") {
  Vec h = scal(1.5);
  VectorMeasure mu(0, 1, 1, {{0.5, h}}, {}, {});
  CHECK((mu.interval_value(0.5, 0.5, true, true) - h).norm() == 0.0);
  CHECK(mu.interval_value(0.5, 0.5, false, true).norm() == 0.0);
  CHECK(mu.interval_value(0.5, 1.0, false, true).norm() == 0.0);   // (0.5, 1]
  CHECK((mu.interval_value(0.5, 1.0, true, true) - h).norm() == 0.0);
  CHECK_THROWS_AS(mu.interval_value(0.7, 0.2, true, true), std::domain_error);
}

TEST_CASE("interval value: additivity across a split, all conventions") {
  Rng rng(7);
  std::vector<Atom> atoms;
  for (int i = 0; i < 4; ++i) atoms.push_back({0.2 * (i + 1), scal(rng.normal())});
  std::vector<Real> knots{0, 0.37, 0.61, 1.0};
  std::vector<Vec> nodes{scal(0.3), scal(-1.1), scal(0.8), scal(0.2)};
  VectorMeasure mu(0, 1, 1, atoms, knots, nodes);
  const Real s = 0.1, c = 0.4, t = 0.93;
  // [s,t) = [s,c) + [c,t), and closed/open variants around the split point
  const Vec whole = mu.interval_value(s, t, true, false);
  const Vec left = mu.interval_value(s, c, true, false);
  const Vec right = mu.interval_value(c, t, true, false);
  CHECK((whole - left - right).norm() < 1e-14);
  const Vec whole2 = mu.interval_value(s, t, true, true);
  const Vec left2 = mu.interval_value(s, c, true, true);
  const Vec right2 = mu.interval_value(c, t, false, true);
  CHECK((whole2 - left2 - right2).norm() < 1e-14);
  // cross-check against distribution differences off the atom set
  CHECK((whole - (mu.distribution(t) - mu.distribution(s))).norm() < 1e-14);
}

TEST_CASE("jump identity at every atom") {
  Rng rng(11);
  std::vector<Atom> atoms;
  for (int i = 0; i < 5; ++i) atoms.push_back({0.1 + 0.18 * i, scal(rng.normal())});
  VectorMeasure mu(0, 1, 1, atoms,
                   {0.0, 0.5, 1.0}, {scal(1.0), scal(-0.5), scal(0.7)});
  for (const auto& at : mu.atoms()) {
    const Vec jump = mu.distribution(std::nextafter(at.t, 1.0)) - mu.distribution(at.t);
    CHECK((jump - at.h).norm() < 1e-12);
  }
}

TEST_CASE("integrate_against: linearity and simple oracles") {
  Vec h = scal(2.0);
  VectorMeasure mu(0, 1, 1, {{0.5, scal(1.0)}}, {0.0, 1.0}, {scal(1.0), scal(1.0)});
  // constant test function: (psi, mu([a,b]))
  auto psi = [](Real) { return scal(3.0); };
  const Vec total = mu.interval_value(0, 1, true, true);
  CHECK(mu.integrate_against(psi) == doctest::Approx(3.0 * total[0]).epsilon(1e-13));
  // f(t) = t against a point mass
  VectorMeasure delta = VectorMeasure::atomic(0, 1, 1, {{0.5, scal(1.0)}});
  CHECK(delta.integrate_against([](Real t) { return scal(t); }) ==
        doctest::Approx(0.5).epsilon(1e-15));
  (void)h;
}

TEST_CASE("integration by parts residual for atomic measures") {
  // int_[x,y] (f, mu(dt)) + int_x^y (f', Phi(t)) dt = (f(y), Phi(y+0)) - (f(x), Phi(x))
  Rng rng(3);
  std::vector<Atom> atoms;
  for (int i = 0; i < 6; ++i) atoms.push_back({0.05 + 0.15 * i, scal(rng.normal())});
  VectorMeasure mu = VectorMeasure::atomic(0, 1, 1, atoms);
  auto f = [](Real t) { return scal(std::sin(3.0 * t) + 0.5 * t * t); };
  auto fp = [](Real t) { return scal(3.0 * std::cos(3.0 * t) + t); };
  const Real x = 0.0, y = 1.0;
  const Real lhs1 = mu.integrate_against(f);
  // independent quadrature of (f', Phi): split at atoms, midpoint rule per piece
  Real lhs2 = 0;
  std::vector<Real> cuts{x, y};
  for (const auto& at : atoms) cuts.push_back(at.t);
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    lhs2 += oracle::midpoint_integral(
        [&](Real t) { return fp(t)[0] * mu.distribution(t)[0]; }, cuts[i], cuts[i + 1], 20000);
  }
  const Real phi_yplus = mu.distribution(1.0)[0];  // Phi(b+0) := Phi(b)
  const Real rhs = f(y)[0] * phi_yplus - f(x)[0] * mu.distribution(x)[0];
  CHECK(std::abs(lhs1 + lhs2 - rhs) < 1e-9);  // limited by the oracle quadrature
}

TEST_CASE("integrate_against bound |int| <= sup||f|| TV") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Atom> atoms;
    for (int i = 0; i < 3; ++i) atoms.push_back({rng.uniform(0.05, 0.95), scal(rng.normal())});
    VectorMeasure mu(0, 1, 1, atoms, {0.0, 0.4, 1.0},
                     {scal(rng.normal()), scal(rng.normal()), scal(rng.normal())});
    auto f = [&](Real t) { return scal(std::cos(5 * t + trial)); };
    const Real val = std::abs(mu.integrate_against(f));
    CHECK(val <= 1.0 * mu.total_variation() * (1 + 1e-12));
  }
}

TEST_CASE("polar decomposition") {
  Vec h = Vec::Zero(4);
  h[2] = 1.0;
  VectorMeasure mu = VectorMeasure::atomic(0, 1, 4, {{0.25, 3.0 * h}});
  const auto pd = polar_decompose(mu);
  REQUIRE(pd.atom_times.size() == 1);
  CHECK(pd.atom_masses[0] == doctest::Approx(3.0));
  CHECK((pd.atom_directions[0] - h).norm() < 1e-15);

  // mixed measure: direction has unit norm on the support, reconstruction exact
  Rng rng(13);
  std::vector<Real> knots{0, 0.3, 0.7, 1.0};
  std::vector<Vec> nodes;
  for (int i = 0; i < 4; ++i) {
    Vec v(4);
    for (int j = 0; j < 4; ++j) v[j] = rng.normal();
    nodes.push_back(v);
  }
  VectorMeasure mix(0, 1, 4, {{0.5, h}}, knots, nodes);
  const auto pmix = polar_decompose(mix);
  for (int i = 0; i < 1000; ++i) {
    const Real t = rng.uniform(0.0, 1.0);
    if (pmix.density_magnitude(t) > 1e-12)
      CHECK(pmix.direction(t).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (int trial = 0; trial < 5; ++trial) {
    const Real s = rng.uniform(0.0, 0.45), t = rng.uniform(0.55, 1.0);
    const Vec rec = pmix.reconstruct(s, t);
    const Vec ref = mix.interval_value(s, t, true, true);
    CHECK((rec - ref).norm() < 1e-12);
  }
  CHECK_THROWS_AS(polar_decompose(VectorMeasure::zero(0, 1, 2)), std::domain_error);
}

TEST_CASE("delta approximation") {
  // purely atomic with atoms on the grid: returned unchanged up to merging
  VectorMeasure atomic =
      VectorMeasure::atomic(0, 1, 1, {{0.0, scal(1.0)}, {0.5, scal(-2.0)}});
  const VectorMeasure out = atomic.delta_approximation(2);
  REQUIRE(out.atoms().size() == 2);
  CHECK(out.atoms()[0].t == 0.0);
  CHECK(out.atoms()[1].t == 0.5);
  CHECK(out.total_variation() == doctest::Approx(atomic.total_variation()));

  // Lipschitz density with rho(a) = 0: sup distance <= L (b-a)^2 / n
  const Real L = 2.0;
  auto mu = sampled_density(0, 1, 400, [&](Real t) { return L * t * (1 - t) * 2; });
  const Real lip = 2 * L;  // |d/dt 2Lt(1-t)| <= 2L
  for (int n : {10, 40, 160}) {
    const VectorMeasure mun = mu.delta_approximation(n);
    Real sup = 0;
    for (int i = 0; i <= 2000; ++i) {
      const Real t = i / 2000.0;
      sup = std::max(sup, (mun.distribution(t) - mu.distribution(t)).norm());
    }
    CHECK(sup <= lip * 1.0 / n + 1e-12);
    CHECK(mun.total_variation() <= mu.total_variation() * (1 + 1e-14));
  }

  // nonnegative scalar density: TV inequality holds with equality
  auto pos = sampled_density(0, 1, 100, [](Real t) { return 1.0 + 0.5 * std::sin(6 * t); });
  const VectorMeasure posn = pos.delta_approximation(7);
  CHECK(posn.total_variation() ==
        doctest::Approx(pos.total_variation()).epsilon(1e-13));
}

TEST_CASE("mollify") {
  CHECK(VectorMeasure::zero(0, 1, 2).mollify(4).total_variation() == 0.0);

  VectorMeasure delta = VectorMeasure::atomic(0, 1, 1, {{0.5, scal(1.0)}});
  for (int n : {2, 8, 32, 128}) {
    const VectorMeasure mn = delta.mollify(n);
    CHECK(mn.atoms().empty());
    // mass check by quadrature of the output density
    const Real mass = oracle::midpoint_integral([&](Real t) { return mn.density_at(t)[0]; },
                                                0, 1, 400000);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(mn.total_variation() <= delta.total_variation() * (1 + 1e-13));
    // distribution converges at the jump point itself (trailing kernel)
    CHECK(mn.distribution(0.5).norm() <= 1e-13);
  }
  // pointwise convergence of Phi at a fixed t above the atom
  Real prev = 1e9;
  for (int n : {2, 8, 32, 128}) {
    const Real d = std::abs(delta.mollify(n).distribution(0.52)[0] - 1.0);
    CHECK(d <= prev + 1e-15);
    prev = d;
  }

  // mixed measure: Phi_n(t) -> Phi(t) at every sampled t in [a, b), jump
  // points included, with the sup-distance shrinking along the ladder
  Rng rng(77);
  std::vector<Atom> atoms;
  for (int i = 0; i < 4; ++i) atoms.push_back({0.07 + 0.24 * i, scal(rng.normal())});
  VectorMeasure mixed(0, 1, 1, atoms, {0.0, 0.4, 1.0},
                      {scal(0.6), scal(-0.8), scal(0.5)});
  std::vector<Real> probes{0.0, 0.07, 0.1, 0.31, 0.55, 0.79, 0.95};
  Real prev_sup = 1e300;
  for (int n : {8, 32, 128, 512}) {
    const VectorMeasure mn = mixed.mollify(n);
    Real sup = 0;
    for (Real t : probes)
      sup = std::max(sup, (mn.distribution(t) - mixed.distribution(t)).norm());
    CHECK(sup <= prev_sup + 1e-15);
    prev_sup = sup;
  }
  CHECK(prev_sup < 1e-12);  // every probe below an atom gap or off the support
}

TEST_CASE("project_tail") {
  Vec h = Vec::Zero(6);
  h[3] = 2.0;  // "mode 3" in zero-based coefficients is the fourth slot
  VectorMeasure mu = VectorMeasure::atomic(0, 1, 6, {{0.5, h}});
  CHECK(mu.project_tail(5).total_variation() == 0.0);
  CHECK(mu.project_tail(0).total_variation() == doctest::Approx(mu.total_variation()));

  Rng rng(17);
  std::vector<Atom> atoms;
  for (int i = 0; i < 3; ++i) {
    Vec v(6);
    for (int j = 0; j < 6; ++j) v[j] = rng.normal();
    atoms.push_back({0.2 + 0.2 * i, v});
  }
  VectorMeasure rnd(0, 1, 6, atoms, {}, {});
  Real prev = rnd.total_variation();
  for (int n = 0; n <= 6; ++n) {
    const Real tv = rnd.project_tail(n).total_variation();
    CHECK(tv <= prev + 1e-14);
    prev = tv;
  }
  CHECK(prev == 0.0);
}

TEST_CASE("partition variation converges to TV from below") {
  Rng rng(23);
  std::vector<Atom> atoms{{0.3, scal(1.0)}, {0.77, scal(-0.5)}};
  VectorMeasure mu(0, 1, 1, atoms, {0.0, 0.5, 1.0},
                   {scal(0.8), scal(-0.3), scal(0.6)});
  DistributionFunction phi(mu);
  const Real tv = mu.total_variation();
  Real prev = 0;
  for (int level = 2; level <= 12; ++level) {
    const Real v = phi.dyadic_variation(level);
    CHECK(v >= prev - 1e-13);
    CHECK(v <= tv + 1e-10);
    prev = v;
  }
  CHECK(prev == doctest::Approx(tv).epsilon(1e-3));

  // purely atomic: exact once the partition resolves the atoms
  VectorMeasure at = VectorMeasure::atomic(0, 1, 1, atoms);
  DistributionFunction phia(at);
  CHECK(phia.dyadic_variation(8) == doctest::Approx(at.total_variation()).epsilon(1e-14));
}

TEST_CASE("weak non-atomicity moduli") {
  // rotating-mode bump train: weakly non-atomic against a fixed low-mode psi
  SpikeTrain sp;
  sp.kind = SpikeTrain::Kind::rotating_modes;
  sp.dim = 16;
  sp.start = 1.0;
  sp.spacing = 1.0;
  sp.mass = 1.0;
  sp.width0 = 0.5;
  GlobalMeasure g{GlobalMeasure::Family(sp)};
  Vec psi = Vec::Zero(16);
  psi[1] = 1.0;  // pairs only with epoch numbers k = 1 mod 16
  std::vector<Real> shifts;
  for (int i = 1; i <= 24; ++i) shifts.push_back(i - 0.25);
  // epoch ladder: windows that straddle ever-narrower bumps
  for (int k = 1; k <= 1024; k *= 2) shifts.push_back(1.0 + k - 1e-4);
  const WnaReport rep = wna_scan(g, psi, shifts);
  CHECK(rep.modulus.front() > 0.5);
  CHECK(rep.modulus.back() < 0.05 * rep.modulus.front());
  CHECK(rep.empirically_non_atomic == (rep.modulus.back() < 0.01 * rep.modulus.front()));

  // its variation (all mass on one scalar slot) stalls near the bump mass
  SpikeTrain var = sp;
  var.dim = 1;  // |mu|: every bump pairs with the same direction
  GlobalMeasure gv{GlobalMeasure::Family(var)};
  const WnaReport repv = wna_scan(gv, Vec::Ones(1), shifts);
  CHECK(repv.modulus.back() > 0.5);
  CHECK(!repv.empirically_non_atomic);

  // zero measure
  const WnaReport rep0 = wna_scan(GlobalMeasure::zero(3), Vec::Ones(3), {0.0, 1.0, 2.0});
  CHECK(rep0.modulus.front() == 0.0);
  CHECK(rep0.modulus.back() == 0.0);
}

TEST_CASE("equi-integrability modulus") {
  // constant-density family: omega(h) = c h
  std::vector<VectorMeasure> family;
  family.push_back(VectorMeasure::with_density(0, 1, 1, {0.0, 1.0}, {scal(2.0), scal(2.0)}));
  const auto omega = equi_integrability_modulus(family, {0.1, 0.2, 0.4});
  CHECK(omega[0] == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(omega[1] == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(omega[2] == doctest::Approx(0.8).epsilon(1e-10));

  // mollified deltas concentrate: omega(h) stays near the full mass as h -> 0
  VectorMeasure delta = VectorMeasure::atomic(0, 1, 1, {{0.5, scal(1.0)}});
  std::vector<VectorMeasure> conc;
  for (int n : {8, 32, 128, 512}) conc.push_back(delta.mollify(n));
  const auto om2 = equi_integrability_modulus(conc, {0.5, 0.1, 0.02, 0.004}, 600);
  CHECK(om2.back() > 0.5);  // fails equi-integrability

  CHECK(equi_integrability_modulus({}, {0.1}).front() == 0.0);
  CHECK_THROWS_AS(equi_integrability_modulus({delta}, {0.1}), std::invalid_argument);
}

TEST_CASE("regularity gaps") {
  // finite-rank in coefficients: space gap hits zero at the rank
  Rng rng(29);
  std::vector<Atom> atoms;
  for (int i = 0; i < 3; ++i) {
    Vec v = Vec::Zero(8);
    for (int j = 0; j < 3; ++j) v[j] = rng.normal();
    atoms.push_back({0.2 + 0.3 * i, v});
  }
  VectorMeasure mu = VectorMeasure::atomic(0, 1, 8, atoms);
  CHECK(regularity_gap(mu, RegularityKind::space, 3) == 0.0);
  CHECK(regularity_gap(mu, RegularityKind::space, 8) == 0.0);

  // mode-rotating window: the space gap does not decrease over low cutoffs
  std::vector<Real> knots{0, 0.5, 1.0, 1.5, 2.0};
  std::vector<Vec> nodes(5, Vec::Zero(16));
  nodes[1][10] = 1.0;  // tent valued in coefficient 10 on [0,1]
  nodes[3][11] = 1.0;  // tent valued in coefficient 11 on [1,2]
  VectorMeasure rot(0, 2, 16, {}, knots, nodes);
  const Real g1 = regularity_gap(rot, RegularityKind::space, 1);
  const Real g4 = regularity_gap(rot, RegularityKind::space, 4);
  const Real g8 = regularity_gap(rot, RegularityKind::space, 8);
  CHECK(g1 == doctest::Approx(g4));
  CHECK(g4 == doctest::Approx(g8));
  CHECK(g8 > 0.5);
  CHECK(regularity_gap(rot, RegularityKind::space, 12) == 0.0);

  // smooth-in-time (absolutely continuous) measure: time gap <= C / n
  auto smooth = sampled_density(0, 1, 50, [](Real t) { return std::cos(2 * t); });
  for (int n : {1, 4, 16}) CHECK(regularity_gap(smooth, RegularityKind::time, n) <= 1e-12);
  // atoms are not time-regular: the gap stalls at twice the atomic mass
  VectorMeasure at = VectorMeasure::atomic(0, 1, 1, {{0.5, scal(1.0)}});
  CHECK(regularity_gap(at, RegularityKind::time, 64) > 1.0);
}

TEST_CASE("shift and window compose exactly") {
  PeriodicTemplate p;
  p.dim = 2;
  p.period = 1.0;
  Vec h = Vec::Zero(2);
  h[0] = 1.0;
  p.atoms.push_back({0.25, h});
  p.knots = {0.0, 0.5, 1.0};
  Vec n0 = Vec::Zero(2), n1 = Vec::Zero(2);
  n1[1] = 0.7;
  p.nodes = {n0, n1, n0};
  GlobalMeasure g{GlobalMeasure::Family(p)};

  // shift by zero is the identity
  const VectorMeasure w0 = g.window(0.0, 2.0);
  const VectorMeasure w0s = g.shift(0.0).window(0.0, 2.0);
  CHECK(w0.atoms().size() == w0s.atoms().size());
  for (std::size_t i = 0; i < w0.atoms().size(); ++i) {
    CHECK(w0.atoms()[i].t == w0s.atoms()[i].t);
    CHECK((w0.atoms()[i].h - w0s.atoms()[i].h).norm() == 0.0);
  }

  // double shift composes additively; shift-then-window = window-the-shifted-interval
  const VectorMeasure a = g.shift(0.5).shift(0.75).window(0.0, 2.0);
  const VectorMeasure b = g.shift(1.25).window(0.0, 2.0);
  REQUIRE(a.atoms().size() == b.atoms().size());
  for (std::size_t i = 0; i < a.atoms().size(); ++i) CHECK(a.atoms()[i].t == b.atoms()[i].t);

  const VectorMeasure direct = g.window(1.25, 3.25);
  REQUIRE(a.atoms().size() == direct.atoms().size());
  for (std::size_t i = 0; i < a.atoms().size(); ++i)
    CHECK(a.atoms()[i].t == doctest::Approx(direct.atoms()[i].t - 1.25).epsilon(1e-15));

  // windowed periodic template matches direct construction on [0, period)
  const VectorMeasure one = g.window(0.0, 1.0 - 1e-12);
  REQUIRE(one.atoms().size() == 1);
  CHECK(one.atoms()[0].t == 0.25);
  CHECK(one.density_at(0.5)[1] == doctest::Approx(0.7));

  // explicit windows reject requests outside the declared support
  ExplicitWindow ew{std::make_shared<VectorMeasure>(w0)};
  GlobalMeasure ge{GlobalMeasure::Family(ew)};
  CHECK_THROWS_AS(ge.window(-1.0, 1.0), std::domain_error);
}

TEST_CASE("mb norm estimate is finite for the families") {
  SpikeTrain sp;
  sp.kind = SpikeTrain::Kind::cancelling_pairs;
  sp.dim = 1;
  GlobalMeasure g{GlobalMeasure::Family(sp)};
  // a closed unit window can hold one full pair plus one endpoint atom
  const Real mb = g.mb_norm_estimate(0.0, 10.0);
  CHECK(mb <= 3.0 * sp.mass + 1e-12);
  CHECK(mb > 0.0);
}

TEST_SUITE_END();
