#include "udv/adrc.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "udv/mechanism.hpp"

using namespace udv;

TEST_CASE("eso_gains are the bandwidth-parameterized binomials") {
  for (double wo : {1.0, 250.0, 1000.0}) {
    const auto [p1, p2, p3] = eso_gains(wo);
    CHECK(p1 == 3.0 * wo);
    CHECK(p2 == 3.0 * wo * wo);
    CHECK(p3 == wo * wo * wo);
  }
  CHECK_THROWS(eso_gains(0.0));
  CHECK_THROWS(eso_gains(-5.0));
}

TEST_CASE("observer error dynamics place a triple pole at -wo") {
  for (double wo : {1.0, 250.0, 1000.0}) {
    const auto [p1, p2, p3] = eso_gains(wo);
    // Error dynamics matrix M = A - L*C for the integrator chain.
    Eigen::Matrix3d m;
    m << -p1, 1.0, 0.0,  //
        -p2, 0.0, 1.0,   //
        -p3, 0.0, 0.0;
    // Faddeev-LeVerrier characteristic coefficients:
    // det(sI - M) = s^3 + c1 s^2 + c2 s + c3.
    const double c1 = -m.trace();
    const Eigen::Matrix3d b1 = m * (m + c1 * Eigen::Matrix3d::Identity());
    const double c2 = -b1.trace() / 2.0;
    const Eigen::Matrix3d b2 = m * (b1 + c2 * Eigen::Matrix3d::Identity());
    const double c3 = -b2.trace() / 3.0;
    // (s + wo)^3 = s^3 + 3wo s^2 + 3wo^2 s + wo^3, to 1e-9 relative.
    CHECK(c1 == doctest::Approx(3.0 * wo).epsilon(1e-9));
    CHECK(c2 == doctest::Approx(3.0 * wo * wo).epsilon(1e-9));
    CHECK(c3 == doctest::Approx(wo * wo * wo).epsilon(1e-9));
    // Eigenvalues of a defective triple root are too ill-conditioned to
    // test directly (a coefficient error eps moves them by eps^(1/3));
    // the coefficient comparison above is the meaningful check.
  }
}

TEST_CASE("eso_step rejects steps beyond the Euler stability bound") {
  EsoState s;
  s.omega_o = 1000.0;
  CHECK_THROWS_AS(eso_step(s, 0.0, 0.0, 0.002), std::domain_error);
  CHECK_THROWS_AS(eso_step(s, 0.0, 0.0, 0.0), std::invalid_argument);
  CHECK_NOTHROW(eso_step(s, 0.0, 0.0, 0.001));
}

TEST_CASE("ESO converges on state and total disturbance") {
  // Plant: y_dd = b0*u + d with constant d. The observer must drive
  // z1 -> y, z2 -> y_dot, z3 -> d.
  const double b0 = 0.08, d = 0.6, u = 2.0, dt = 1e-4;
  EsoState eso;
  eso.omega_o = 200.0;
  eso.b0 = b0;
  double y = 0.0, v = 0.0;
  for (int i = 0; i < 20000; ++i) {  // 2 s
    eso_step(eso, y, u, dt);
    v += (b0 * u + d) * dt;
    y += v * dt;
  }
  CHECK(eso.z1 == doctest::Approx(y).epsilon(1e-4));
  CHECK(eso.z2 == doctest::Approx(v).epsilon(1e-3));
  CHECK(eso.z3 == doctest::Approx(d).epsilon(1e-3));
}

TEST_CASE("fst magnitude never exceeds the speed factor on a 10^6 grid") {
  const double r = 3.0, h0 = 0.01;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double e = -2.0 + 4.0 * i / 999.0;
    for (int j = 0; j < 1000; ++j) {
      const double rd2 = -10.0 + 20.0 * j / 999.0;
      worst = std::max(worst, std::abs(fst(e, rd2, r, h0)));
    }
  }
  CHECK(worst <= r + 1e-12);
  CHECK_THROWS(fst(0.1, 0.0, -1.0, h0));
  CHECK_THROWS(fst(0.1, 0.0, r, 0.0));
}

TEST_CASE("TD tracks a step without overshoot and settles its derivative") {
  TdState td;  // r = 50, h0 = 0.002, dt = 0.001
  const double target = 0.1;
  double peak = 0.0;
  for (int i = 0; i < 2000; ++i) {
    td_step(td, target);
    peak = std::max(peak, td.rd1);
  }
  CHECK(peak <= target + 1e-9);
  CHECK(td.rd1 == doctest::Approx(target).epsilon(1e-6));
  CHECK(std::abs(td.rd2) < 1e-6);
}

TEST_CASE("TD differential signal recovers a ramp slope") {
  TdState td;
  const double slope = 0.3;
  for (int i = 0; i < 3000; ++i) td_step(td, slope * i * td.dt);
  CHECK(td.rd2 == doctest::Approx(slope).epsilon(0.01));
}

TEST_CASE("state-error feedback implements the published control law") {
  SefGains g;
  g.omega_c = 200.0;
  CHECK(g.kp() == 40000.0);
  CHECK(g.kd() == 400.0);
  const double rd1 = 0.1, rd2 = 0.02, z1 = 0.08, z2 = 0.01, z3 = 0.5;
  const double b0 = 0.08;
  const double expected =
      (g.kp() * (rd1 - z1) + g.kd() * (rd2 - z2) - z3) / b0;
  CHECK(sef(rd1, rd2, z1, z2, z3, g, b0) ==
        doctest::Approx(expected).epsilon(1e-15));
  CHECK_THROWS(sef(0, 0, 0, 0, 0, g, 0.0));
}

TEST_CASE("closed loop: step settles in the 2% band with zero offset") {
  const PlantParams plant = PlantParams::make();
  AdrcController adrc = make_adrc_x();
  SliderState s;
  const double dt = 0.001, target = 0.1;
  // The voltage limit caps acceleration at 1.92 m/s^2, so the fast TD
  // reference saturates the input early on; the loop is settled well
  // before 1.5 s and must then stay inside the 2% band.
  bool stays_in_band = true;
  for (int i = 0; i < 3000; ++i) {
    const double u = adrc.step(target, s.position, dt);
    s = plant_step(s, u, dt, plant);
    if (i * dt > 1.5 && std::abs(s.position - target) > 0.02 * target)
      stays_in_band = false;
  }
  CHECK(stays_in_band);
  // The extended state absorbs the plant damping: the residual offset is
  // orders of magnitude inside the 2% band.
  CHECK(std::abs(s.position - target) < 1e-4);
}

TEST_CASE("closed loop: a matched disturbance is rejected within 0.1 s") {
  const PlantParams plant = PlantParams::make();
  AdrcController adrc = make_adrc_x();
  SliderState s;
  const double dt = 0.001, target = 0.1;
  // Sudden 0.8 m/s^2 load at t = 2 s, injected as an equivalent voltage
  // the controller cannot see.
  const double d_accel = 0.8;
  double err_after_recovery = 0.0;
  for (int i = 0; i < 4000; ++i) {
    const double t = i * dt;
    const double u = adrc.step(target, s.position, dt);
    const double u_plant = u + (t >= 2.0 ? d_accel / plant.input_coefficient : 0.0);
    s = plant_step(s, u_plant, dt, plant);
    if (t >= 2.1)
      err_after_recovery =
          std::max(err_after_recovery, std::abs(s.position - target));
  }
  // Recovered to within 1% of the setpoint 0.1 s after the hit.
  CHECK(err_after_recovery < 0.01 * target);
}

TEST_CASE("axis factories carry the published bandwidths") {
  const AdrcController x = make_adrc_x();
  CHECK(x.eso.omega_o == 1000.0);
  CHECK(x.sef_gains.omega_c == 200.0);
  CHECK(x.u_max == 24.0);
  const AdrcController y = make_adrc_y(0.0005);
  CHECK(y.eso.omega_o == 1200.0);
  CHECK(y.sef_gains.omega_c == 250.0);
  CHECK(y.td.dt == 0.0005);
  CHECK(y.td.h0 == 0.001);
}
