#include "udv/adrc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace udv {

std::array<double, 3> eso_gains(double omega_o) {
  if (omega_o <= 0.0)
    throw std::invalid_argument("eso_gains: omega_o must be > 0");
  return {3.0 * omega_o, 3.0 * omega_o * omega_o,
          omega_o * omega_o * omega_o};
}

void eso_step(EsoState& state, double y_measured, double u, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("eso_step: dt must be > 0");
  // Forward-Euler stability bound for the triple pole at -omega_o.
  if (dt * state.omega_o >= 2.0)
    throw std::domain_error("eso_step: dt*omega_o exceeds stability bound");
  const auto [p1, p2, p3] = eso_gains(state.omega_o);
  const double e = y_measured - state.z1;
  const double z1 = state.z1 + dt * (state.z2 + p1 * e);
  const double z2 = state.z2 + dt * (state.z3 + state.b0 * u + p2 * e);
  const double z3 = state.z3 + dt * (p3 * e);
  state.z1 = z1;
  state.z2 = z2;
  state.z3 = z3;
}

double fst(double e, double rd2, double r, double h0) {
  if (r <= 0.0 || h0 <= 0.0)
    throw std::invalid_argument("fst: r and h0 must be > 0");
  const double p = r * h0;
  const double p0 = h0 * p;
  const double v = e + h0 * rd2;
  double w;
  if (std::abs(v) > p0) {
    const double w0 = std::sqrt(p * p + 8.0 * r * std::abs(v));
    w = rd2 + 0.5 * (w0 - p) * (v > 0.0 ? 1.0 : -1.0);
  } else {
    w = rd2 + v / h0;
  }
  if (std::abs(w) > p) return -r * (w > 0.0 ? 1.0 : -1.0);
  return -r * w / p;
}

void td_step(TdState& state, double yd) {
  const double rd1 = state.rd1 + state.dt * state.rd2;
  const double rd2 =
      state.rd2 +
      state.dt * fst(state.rd1 - yd, state.rd2, state.r, state.h0);
  state.rd1 = rd1;
  state.rd2 = rd2;
}

double sef(double rd1, double rd2, double z1, double z2, double z3,
           const SefGains& gains, double b0) {
  if (b0 == 0.0) throw std::invalid_argument("sef: b0 must be nonzero");
  const double u = gains.kp() * (rd1 - z1) + gains.kd() * (rd2 - z2);
  return (u - z3) / b0;
}

double AdrcController::step(double yd, double y_measured, double dt) {
  td.dt = dt;
  td_step(td, yd);
  const double uo =
      sef(td.rd1, td.rd2, eso.z1, eso.z2, eso.z3, sef_gains, eso.b0);
  const double u_sat = std::clamp(uo, u_min, u_max);
  eso_step(eso, y_measured, u_sat, dt);
  return u_sat;
}

void AdrcController::reset() {
  td.rd1 = 0.0;
  td.rd2 = 0.0;
  eso.z1 = 0.0;
  eso.z2 = 0.0;
  eso.z3 = 0.0;
}

AdrcController make_adrc_x(double dt) {
  AdrcController c;
  c.td.dt = dt;
  c.td.h0 = 2.0 * dt;
  c.eso.omega_o = 1000.0;
  c.sef_gains.omega_c = 200.0;
  return c;
}

AdrcController make_adrc_y(double dt) {
  AdrcController c;
  c.td.dt = dt;
  c.td.h0 = 2.0 * dt;
  c.eso.omega_o = 1200.0;
  c.sef_gains.omega_c = 250.0;
  return c;
}

}  // namespace udv
