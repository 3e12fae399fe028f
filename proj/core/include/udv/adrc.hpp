#ifndef UDV_ADRC_HPP_
#define UDV_ADRC_HPP_

#include <array>

namespace udv {

// Bandwidth-parameterized observer gains (3wo, 3wo^2, wo^3), placing all
// three poles of the error dynamics at -wo.
std::array<double, 3> eso_gains(double omega_o);

/**
 * Linear extended state observer for the double-integrator slider plant:
 * z1 tracks position, z2 velocity, z3 the lumped (total) disturbance.
 * Discretized by forward Euler; eso_step enforces dt*wo below the Euler
 * stability bound.
 */
struct EsoState {
  double z1 = 0.0;       // position estimate [m]
  double z2 = 0.0;       // velocity estimate [m/s]
  double z3 = 0.0;       // total-disturbance estimate [m/s^2]
  double omega_o = 1000.0;  // observer bandwidth [rad/s]
  double b0 = 0.08;         // nominal input gain [m/(s^2 V)]
};

void eso_step(EsoState& state, double y_measured, double u, double dt);

// Han's discrete time-optimal control function. e is the tracking error
// (rd1 - yd), rd2 the differential signal, r the speed factor, h0 the
// filter factor. |fst| <= r on every branch.
double fst(double e, double rd2, double r, double h0);

// Fastest tracking differentiator: rd1 tracks the input without
// overshoot, rd2 is its smoothed derivative.
struct TdState {
  double rd1 = 0.0;  // tracking signal [m]
  double rd2 = 0.0;  // differential signal [m/s]
  double r = 50.0;   // speed factor [m/s^2]
  double h0 = 0.002; // filter factor [s]
  double dt = 0.001; // sample period [s]
};

void td_step(TdState& state, double yd);

// Pole-placed state-error feedback, critically damped: kp = wc^2,
// kd = 2wc.
struct SefGains {
  double omega_c = 200.0;  // controller bandwidth [rad/s]
  double kp() const { return omega_c * omega_c; }
  double kd() const { return 2.0 * omega_c; }
};

// u = kp(rd1 - z1) + kd(rd2 - z2); uo = (u - z3)/b0.
double sef(double rd1, double rd2, double z1, double z2, double z3,
           const SefGains& gains, double b0);

/**
 * One ADRC axis: TD -> ESO -> SEF per tick. The output is saturated at
 * the plant voltage limit and the saturated value is what the observer
 * sees, so the disturbance estimate cannot wind up while clipped.
 */
struct AdrcController {
  TdState td;
  EsoState eso;
  SefGains sef_gains;
  double u_min = -24.0;  // [V]
  double u_max = 24.0;   // [V]

  // Returns the saturated plant voltage for this tick.
  double step(double yd, double y_measured, double dt);
  void reset();
};

// Paper settings: X axis wo=1000, wc=200; Y axis wo=1200, wc=250.
AdrcController make_adrc_x(double dt = 0.001);
AdrcController make_adrc_y(double dt = 0.001);

}  // namespace udv

#endif  // UDV_ADRC_HPP_
