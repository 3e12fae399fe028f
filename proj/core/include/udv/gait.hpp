#ifndef UDV_GAIT_HPP_
#define UDV_GAIT_HPP_

#include <cstddef>
#include <vector>

namespace udv {

/**
 * Walking gait parameters. A full cycle is two single-support phases and
 * two double-support phases, T = 2*Ts + 2*Td. stride_length is the
 * distance the same foot advances per cycle (the swing foot sweeps one
 * stride_length per swing; alternating footholds are stride_length/2
 * apart).
 */
struct GaitParams {
  double com_height = 0.9;      // zc [m]
  double stride_length = 0.4;   // [m]
  double step_height = 0.1;     // swing apex [m]
  double single_support = 0.5;  // Ts [s]
  double double_support = 0.1;  // Td [s]
  double sample_dt = 0.001;     // [s]
  double stance_width = 0.3;    // lateral foot line spacing w [m]
  double foot_length = 0.2;     // support rectangle [m]
  double foot_width = 0.1;      // [m]
  double gravity = 9.81;        // [m/s^2]

  double cycle() const { return 2.0 * (single_support + double_support); }
  // LIPM time constant sqrt(zc/g).
  double pendulum_time_constant() const;
  void validate() const;
};

enum class GaitPhase { kSingleSupport, kDoubleSupport };

// Phase of the cycle at time t plus the in-phase clock and the stance
// foot of the (current or just-finished) single-support phase.
struct PhaseInfo {
  GaitPhase phase = GaitPhase::kSingleSupport;
  double phase_time = 0.0;   // seconds into the phase
  int step_index = 0;        // single-support phases completed before t
  bool stance_is_right = true;
};

PhaseInfo phase_at(const GaitParams& params, double t);

// Foothold plan: world x positions of the alternating footholds plus
// their lateral lines. foothold(i) is the stance foot of step i.
struct FootPlan {
  double step_spacing = 0.2;  // stride_length / 2 between footholds [m]
  double lateral_half = 0.15; // +-w/2 [m]
  bool first_stance_right = true;

  double foothold_x(int step_index) const {
    return step_spacing * step_index;
  }
  double foothold_y(int step_index) const {
    const bool right = stance_is_right(step_index);
    return right ? -lateral_half : lateral_half;
  }
  bool stance_is_right(int step_index) const {
    return (step_index % 2 == 0) == first_stance_right;
  }
};

FootPlan make_foot_plan(const GaitParams& params);

struct Sample2d {
  double t = 0.0;
  double x = 0.0;
  double z = 0.0;
};

// Hip (pelvis center) sagittal trajectory of single-support step
// `step_index` plus the double support that follows it: inverted-pendulum
// cosh/sinh motion about the stance foot over Ts, then a C1 cubic blend
// over Td. z is constant at com_height.
std::vector<Sample2d> hip_trajectory(const GaitParams& params, int step_index);

// Lateral hip trajectory of the same span: a Y-direction pendulum
// oscillating about the stance foot line, phase-locked to the step cycle.
std::vector<Sample2d> hip_lateral_trajectory(const GaitParams& params,
                                             int step_index);

// Swing-ankle trajectory over the single support of step `step_index`:
// quintic in x (zero velocity/acceleration at both ends, sweeping one
// stride_length) and quintic-pair in z (step_height apex at Ts/2).
std::vector<Sample2d> ankle_trajectory(const GaitParams& params,
                                       int step_index);

// Hip position at an arbitrary time (periodic composition of the
// per-step trajectories). Used by the closed-loop walking harness.
struct HipState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};
HipState hip_at(const GaitParams& params, double t);

// Swing/stance ankle world positions at time t. During double support
// both feet are planted.
struct FeetState {
  double right_x = 0.0, right_z = 0.0;
  double left_x = 0.0, left_z = 0.0;
};
FeetState feet_at(const GaitParams& params, double t);

struct JointSample {
  double t = 0.0;
  // right ankle, knee, hip; left hip, knee, ankle (chain convention)
  double theta[6] = {0, 0, 0, 0, 0, 0};
};

// Per-sample leg IK over [0, duration]; throws if a sample is
// unreachable.
std::vector<JointSample> joint_trajectories(const GaitParams& params,
                                            double duration,
                                            double calf = 0.5,
                                            double thigh = 0.5);

// Desired ZMP: stance foot center during single support, linear blend
// between the outgoing and incoming foot centers during double support.
struct ZmpReference {
  double x = 0.0;
  double y = 0.0;
};
ZmpReference desired_zmp(const GaitParams& params, const FootPlan& plan,
                         double t);

}  // namespace udv

#endif  // UDV_GAIT_HPP_
