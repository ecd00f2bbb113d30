#include <doctest.h>

#include <cmath>

#include "mdw/scalar_ode.hpp"

using namespace mdw;

namespace {

GlobalMeasure constant_forcing(Real c) {
  AsymptoticProfile pr;
  pr.c0 = c;
  pr.c1 = 0.0;
  return GlobalMeasure(GlobalMeasure::Family(pr));
}

GlobalMeasure arctan_forcing() {
  AsymptoticProfile pr;
  pr.c0 = 0.0;
  pr.c1 = 3.0;
  return GlobalMeasure(GlobalMeasure::Family(pr));
}

}  // namespace

TEST_SUITE_BEGIN("scalar_ode");

TEST_CASE("hull endpoint +3: the cubic equation y' = y - y^3") {
  ScalarModel m;
  m.base = -3.0;
  m.forcing = constant_forcing(3.0);
  // stable equilibria -1 and 1; the attractor is [-1, 1]
  CHECK(ode_simulate(m, 2.0, 0.0, 40.0).final_y() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(ode_simulate(m, -0.4, 0.0, 40.0).final_y() == doctest::Approx(-1.0).epsilon(1e-6));
  const Interval sec = pullback_section(m, 40.0, -3.0, 2.0, 31);
  CHECK(sec.lo == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(sec.hi == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("hull endpoint -3: monotone equation with the single equilibrium -2") {
  ScalarModel m;
  m.base = -3.0;
  m.forcing = constant_forcing(-3.0);
  for (Real y0 : {-3.0, -1.0, 0.0, 2.0})
    CHECK(ode_simulate(m, y0, 0.0, 40.0).final_y() == doctest::Approx(-2.0).epsilon(1e-6));
}

TEST_CASE("unperturbed arctan model: complete trajectories run from -2 to -1") {
  ScalarModel m;
  m.base = -3.0;
  m.forcing = arctan_forcing();
  // the forcing approaches its limit like 1/t, so the trajectory sits at
  // -1 - 3/(pi t) + o(1/t); at t = 60 that is about -1.016
  const auto traj = ode_simulate(m, -2.0, -60.0, 60.0);
  CHECK(traj.final_y() == doctest::Approx(-1.0 - 3.0 / (M_PI * 60.0)).epsilon(2e-3));
  // y' > 0 along the complete trajectory
  for (std::size_t i = 1; i < traj.y.size(); ++i) CHECK(traj.y[i] >= traj.y[i - 1] - 1e-9);
}

TEST_CASE("zero forcing variant y' = y - y^3: autonomous attractor [-1, 1]") {
  ScalarModel m;
  m.base = 0.0;
  m.forcing = GlobalMeasure::zero(1);
  const Interval sec = pullback_section(m, 40.0, -3.0, 2.0, 41);
  CHECK(sec.lo == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(sec.hi == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("spike pairs produce transient excursions of half the pair mass") {
  ScalarModel m;
  m.base = -3.0;
  AsymptoticProfile pr;
  pr.c0 = 0.0;
  pr.c1 = 3.0;
  pr.with_spikes = true;
  pr.spikes.kind = SpikeTrain::Kind::cancelling_pairs;
  pr.spikes.start = 50.0;
  pr.spikes.spacing = 50.0;
  pr.spikes.mass = 0.5;
  pr.spikes.sep0 = 0.02;
  m.forcing = GlobalMeasure(GlobalMeasure::Family(pr));
  // settle near y = 1 in the far-future regime, then catch the spike at t = 100
  const auto traj = ode_simulate(m, 1.0, 60.0, 101.0, 0.01);
  Real peak = -1e300;
  for (std::size_t i = 0; i < traj.t.size(); ++i)
    if (traj.t[i] >= 99.0) peak = std::max(peak, traj.y[i]);
  CHECK(peak >= 1.4);
  CHECK(peak <= 1.55);
}

TEST_CASE("interior hull members: kernel sections union to [-2, -1]") {
  // horizons large relative to the shifts, so pullback reaches the complete
  // trajectory regime for every sampled member
  ScalarModel m;
  m.base = -3.0;
  m.forcing = arctan_forcing();
  Interval uni{1e300, -1e300};
  for (Real h : {-60.0, -20.0, 0.0, 20.0, 60.0}) {
    ScalarModel mz = m;
    mz.forcing = m.forcing.shift(h);
    const Interval sec = pullback_section(mz, 200.0, -3.0, 2.0, 9);
    uni.lo = std::min(uni.lo, sec.lo);
    uni.hi = std::max(uni.hi, sec.hi);
    CHECK(sec.hi - sec.lo <= 0.05);  // each section collapses to a point
  }
  CHECK(uni.lo == doctest::Approx(-2.0).epsilon(0.06));
  CHECK(uni.hi == doctest::Approx(-1.0).epsilon(0.06));
}

TEST_CASE("kernel union vs attractor: quick unperturbed agreement") {
  ScalarModel m;
  m.base = -3.0;
  m.forcing = arctan_forcing();
  const auto rep = kernel_vs_attractor(m, {-50.0, 0.0, 50.0}, {-150.0, 30.0}, 40.0, -3.0, 2.0,
                                       11, {10.0, 20.0, 40.0});
  CHECK(rep.attractor.lo == doctest::Approx(-2.0).epsilon(0.1));
  CHECK(rep.kernel_union.hi == doctest::Approx(1.0).epsilon(0.1));
  CHECK(std::abs(rep.gap_hi) <= 0.1);
}

TEST_SUITE_END();
