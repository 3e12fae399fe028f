#ifndef UDV_SUPERVISOR_HPP_
#define UDV_SUPERVISOR_HPP_

namespace udv {

// Deadband realizations of the automaton's exact "!= 0" predicates.
struct GuardThresholds {
  double steer = 0.00872664625997165;  // |delta| > 0.5 deg [rad]
  double speed = 0.05;                 // |ux| [m/s]
  double joint_rate = 0.01;            // max|theta_dot_i| [rad/s]
  double slider_rate = 0.001;          // |y_dot| [m/s]
};

struct GuardSignals {
  bool st_delta = false;      // steering angle active
  bool st_ux = false;         // vehicle speed active
  bool st_theta_dot = false;  // leg-joint rates active
  bool st_ydot = false;       // slider velocity active
};

GuardSignals derive_signals(double delta, double ux, double theta_dot_max,
                            double y_dot,
                            const GuardThresholds& thresholds = {});

// Q1 steering stability control, Q2 walking stability control,
// Q3 straight-line driving, Q4 parked.
enum class Mode { kQ1 = 1, kQ2 = 2, kQ3 = 3, kQ4 = 4 };

enum class ControllerSelection { kNone, kSteering, kWalking };

struct AutomatonState {
  Mode mode = Mode::kQ4;
  double time_in_mode = 0.0;          // [s]
  double min_dwell = 0.05;            // [s]
  bool conflict_logged = false;       // a tick saw >1 enabled guard
};

/**
 * One synchronous automaton tick. Evaluates only the guards leaving the
 * current mode, holds the mode if none is enabled or the dwell time has
 * not elapsed, and resolves simultaneous guards by a fixed priority:
 * transitions into Q4 first, then (from Q4) S41, S42, S43.
 */
void supervisor_step(AutomatonState& state, const GuardSignals& signals,
                     double dt);

ControllerSelection mode_output(const AutomatonState& state);

}  // namespace udv

#endif  // UDV_SUPERVISOR_HPP_
