#include "udv/gait.hpp"

#include "udv/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace udv {

namespace {

// Quintic smoothstep: zero first and second derivatives at 0 and 1.
double s5(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }

double hermite(double p0, double p1, double m0, double m1, double span,
               double u) {
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * p0 + (u3 - 2 * u2 + u) * span * m0 +
         (-2 * u3 + 3 * u2) * p1 + (u3 - u2) * span * m1;
}

struct LipmConstants {
  double tc = 0.0;      // sqrt(zc/g)
  double x_amp = 0.0;   // sagittal half-excursion about the stance foot
  double vx0 = 0.0;     // sagittal boundary velocity
  double y_amp = 0.0;   // lateral cosh amplitude
};

LipmConstants lipm_constants(const GaitParams& p) {
  LipmConstants c;
  c.tc = p.pendulum_time_constant();
  const double half = p.single_support / (2.0 * c.tc);
  const double ch = std::cosh(half), sh = std::sinh(half);
  const double step = p.stride_length / 2.0;  // hip advance per step
  // Boundary excursion chosen so the double-support blend is traversed
  // at the (continuous) boundary velocity.
  c.x_amp = step / (2.0 + (p.double_support / c.tc) * (ch / sh));
  c.vx0 = c.x_amp * ch / (sh * c.tc);
  if (p.double_support * c.vx0 > step)
    throw std::domain_error("gait: infeasible double-support blend");
  c.y_amp = p.stance_width /
            (2.0 * ch + (p.double_support / c.tc) * sh);
  return c;
}

}  // namespace

double GaitParams::pendulum_time_constant() const {
  return std::sqrt(com_height / gravity);
}

void GaitParams::validate() const {
  if (com_height <= 0.0 || stride_length <= 0.0 || step_height <= 0.0)
    throw std::invalid_argument("gait: zc, stride, height must be > 0");
  if (single_support <= 0.0 || double_support < 0.0 || sample_dt <= 0.0)
    throw std::invalid_argument("gait: bad timing parameters");
}

PhaseInfo phase_at(const GaitParams& params, double t) {
  if (t < 0.0) throw std::invalid_argument("phase_at: t must be >= 0");
  const double step_time = params.single_support + params.double_support;
  const int k = static_cast<int>(std::floor(t / step_time));
  const double within = t - k * step_time;
  PhaseInfo info;
  info.step_index = k;
  info.stance_is_right = (k % 2 == 0);
  if (within < params.single_support) {
    info.phase = GaitPhase::kSingleSupport;
    info.phase_time = within;
  } else {
    info.phase = GaitPhase::kDoubleSupport;
    info.phase_time = within - params.single_support;
  }
  return info;
}

FootPlan make_foot_plan(const GaitParams& params) {
  FootPlan plan;
  plan.step_spacing = params.stride_length / 2.0;
  plan.lateral_half = params.stance_width / 2.0;
  plan.first_stance_right = true;
  return plan;
}

HipState hip_at(const GaitParams& params, double t) {
  const LipmConstants c = lipm_constants(params);
  const FootPlan plan = make_foot_plan(params);
  const PhaseInfo info = phase_at(params, t);
  const double ts = params.single_support;
  const double xf = plan.foothold_x(info.step_index);
  const double yf = plan.foothold_y(info.step_index);
  const double s = info.stance_is_right ? 1.0 : -1.0;

  HipState hip;
  hip.z = params.com_height;
  if (info.phase == GaitPhase::kSingleSupport) {
    const double tau = info.phase_time;
    hip.x = xf - c.x_amp * std::cosh(tau / c.tc) +
            c.tc * c.vx0 * std::sinh(tau / c.tc);
    hip.y = yf + s * c.y_amp * std::cosh((tau - ts / 2.0) / c.tc);
  } else {
    const double half = ts / (2.0 * c.tc);
    const double u = info.phase_time / params.double_support;
    const double x0 = xf + c.x_amp;
    const double x1 = plan.foothold_x(info.step_index + 1) - c.x_amp;
    hip.x = hermite(x0, x1, c.vx0, c.vx0, params.double_support, u);
    const double y0 = yf + s * c.y_amp * std::cosh(half);
    const double y1 = -y0;
    const double vy = s * (c.y_amp / c.tc) * std::sinh(half);
    hip.y = hermite(y0, y1, vy, vy, params.double_support, u);
  }
  return hip;
}

std::vector<Sample2d> hip_trajectory(const GaitParams& params,
                                     int step_index) {
  params.validate();
  std::vector<Sample2d> out;
  const double step_time = params.single_support + params.double_support;
  const double t0 = step_index * step_time;
  const int n = static_cast<int>(std::round(step_time / params.sample_dt));
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = std::min(t0 + i * params.sample_dt,
                              t0 + step_time - 1e-12);
    const HipState hip = hip_at(params, t);
    out.push_back({t - t0, hip.x, hip.z});
  }
  return out;
}

std::vector<Sample2d> hip_lateral_trajectory(const GaitParams& params,
                                             int step_index) {
  params.validate();
  std::vector<Sample2d> out;
  const double step_time = params.single_support + params.double_support;
  const double t0 = step_index * step_time;
  const int n = static_cast<int>(std::round(step_time / params.sample_dt));
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = std::min(t0 + i * params.sample_dt,
                              t0 + step_time - 1e-12);
    const HipState hip = hip_at(params, t);
    out.push_back({t - t0, hip.y, hip.z});
  }
  return out;
}

std::vector<Sample2d> ankle_trajectory(const GaitParams& params,
                                       int step_index) {
  params.validate();
  const FootPlan plan = make_foot_plan(params);
  const double ts = params.single_support;
  const double x_start = plan.foothold_x(step_index - 1);
  std::vector<Sample2d> out;
  const int n = static_cast<int>(std::round(ts / params.sample_dt));
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double tau = std::min(i * params.sample_dt, ts);
    const double x = x_start + params.stride_length * s5(tau / ts);
    const double z =
        tau <= ts / 2.0
            ? params.step_height * s5(2.0 * tau / ts)
            : params.step_height * s5(2.0 * (ts - tau) / ts);
    out.push_back({tau, x, z});
  }
  return out;
}

FeetState feet_at(const GaitParams& params, double t) {
  const FootPlan plan = make_foot_plan(params);
  const PhaseInfo info = phase_at(params, t);
  const int i = info.step_index;
  FeetState feet;
  const double stance_x = plan.foothold_x(i);
  double swing_x = plan.foothold_x(i + 1);
  double swing_z = 0.0;
  if (info.phase == GaitPhase::kSingleSupport) {
    const double ts = params.single_support;
    const double tau = info.phase_time;
    swing_x = plan.foothold_x(i - 1) + params.stride_length * s5(tau / ts);
    swing_z = tau <= ts / 2.0
                  ? params.step_height * s5(2.0 * tau / ts)
                  : params.step_height * s5(2.0 * (ts - tau) / ts);
  }
  if (info.stance_is_right) {
    feet.right_x = stance_x;
    feet.right_z = 0.0;
    feet.left_x = swing_x;
    feet.left_z = swing_z;
  } else {
    feet.left_x = stance_x;
    feet.left_z = 0.0;
    feet.right_x = swing_x;
    feet.right_z = swing_z;
  }
  return feet;
}

std::vector<JointSample> joint_trajectories(const GaitParams& params,
                                            double duration, double calf,
                                            double thigh) {
  params.validate();
  std::vector<JointSample> out;
  const int n = static_cast<int>(std::round(duration / params.sample_dt));
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = i * params.sample_dt;
    const HipState hip = hip_at(params, t);
    const FeetState feet = feet_at(params, t);
    const Eigen::Vector2d hip_xz(hip.x, hip.z);
    const LegAngles right = leg_ik(hip_xz, {feet.right_x, feet.right_z},
                                   calf, thigh, Side::kRight);
    const LegAngles left = leg_ik(hip_xz, {feet.left_x, feet.left_z},
                                  calf, thigh, Side::kLeft);
    JointSample s;
    s.t = t;
    s.theta[0] = right.ankle;
    s.theta[1] = right.knee;
    s.theta[2] = right.hip;
    s.theta[3] = left.hip;
    s.theta[4] = left.knee;
    s.theta[5] = left.ankle;
    out.push_back(s);
  }
  return out;
}

ZmpReference desired_zmp(const GaitParams& params, const FootPlan& plan,
                         double t) {
  const PhaseInfo info = phase_at(params, t);
  const int i = info.step_index;
  ZmpReference ref;
  if (info.phase == GaitPhase::kSingleSupport) {
    ref.x = plan.foothold_x(i);
    ref.y = plan.foothold_y(i);
  } else {
    const double u = info.phase_time / params.double_support;
    ref.x = (1.0 - u) * plan.foothold_x(i) + u * plan.foothold_x(i + 1);
    ref.y = (1.0 - u) * plan.foothold_y(i) + u * plan.foothold_y(i + 1);
  }
  return ref;
}

}  // namespace udv
