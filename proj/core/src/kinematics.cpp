#include "udv/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace udv {

namespace {

Eigen::Matrix3d rot_x(double t) {
  Eigen::Matrix3d r;
  r << 1, 0, 0, 0, std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t);
  return r;
}

Eigen::Matrix3d rot_y(double t) {
  Eigen::Matrix3d r;
  r << std::cos(t), 0, std::sin(t), 0, 1, 0, -std::sin(t), 0, std::cos(t);
  return r;
}

Eigen::Matrix3d rot_z(double t) {
  Eigen::Matrix3d r;
  r << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
  return r;
}

double clamped_acos(double c) {
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// Second derivative by finite differences: central in the interior,
// one-sided second-order at the ends.
Eigen::Vector3d second_derivative(const std::vector<Eigen::Vector3d>& p,
                                  std::size_t i, double dt) {
  const std::size_t n = p.size();
  const double dt2 = dt * dt;
  if (n < 4) throw std::invalid_argument("zmp: need at least 4 samples");
  if (i == 0) return (2.0 * p[0] - 5.0 * p[1] + 4.0 * p[2] - p[3]) / dt2;
  if (i == n - 1)
    return (2.0 * p[n - 1] - 5.0 * p[n - 2] + 4.0 * p[n - 3] - p[n - 4]) / dt2;
  return (p[i + 1] - 2.0 * p[i] + p[i - 1]) / dt2;
}

}  // namespace

FrameTransform compose_transform(const Eigen::Vector3d& angles,
                                 const Eigen::Vector3d& offsets) {
  FrameTransform t;
  t.rotation = rot_z(angles.z()) * rot_y(angles.y()) * rot_x(angles.x());
  t.translation = offsets;
  return t;
}

std::vector<FrameTransform> forward_chain(const ChainConfig& config) {
  std::vector<FrameTransform> frames;
  frames.reserve(config.links.size() + 1);
  frames.push_back(FrameTransform::identity());
  for (std::size_t i = 0; i < config.links.size(); ++i) {
    const ChainLink& link = config.links[i];
    const int parent =
        link.parent < 0 ? static_cast<int>(i) : link.parent + 1;
    if (parent < 0 || parent >= static_cast<int>(frames.size()))
      throw std::invalid_argument("forward_chain: bad parent index");
    frames.push_back(frames[static_cast<std::size_t>(parent)] *
                     compose_transform(link.angles, link.offset));
  }
  return frames;
}

Eigen::Vector3d whole_body_com(const std::vector<BodySegment>& segments,
                               const std::vector<FrameTransform>& frames) {
  double total = 0.0;
  Eigen::Vector3d weighted = Eigen::Vector3d::Zero();
  for (const BodySegment& seg : segments) {
    if (seg.mass <= 0.0)
      throw std::invalid_argument("whole_body_com: segment mass must be > 0");
    if (seg.parent_frame < 0 ||
        seg.parent_frame >= static_cast<int>(frames.size()))
      throw std::invalid_argument("whole_body_com: bad frame index");
    weighted += seg.mass *
                frames[static_cast<std::size_t>(seg.parent_frame)].apply(
                    seg.local_com);
    total += seg.mass;
  }
  if (total <= 0.0)
    throw std::invalid_argument("whole_body_com: total mass must be > 0");
  return weighted / total;
}

ZmpPoint zmp_at(const SegmentTrajectories& traj,
                const std::vector<double>& masses, std::size_t index,
                double dt, double g) {
  if (traj.size() != masses.size())
    throw std::invalid_argument("zmp: trajectory/mass size mismatch");
  double denom = 0.0;
  double num_x = 0.0;
  double num_y = 0.0;
  for (std::size_t s = 0; s < traj.size(); ++s) {
    const Eigen::Vector3d& c = traj[s][index];
    const Eigen::Vector3d acc = second_derivative(traj[s], index, dt);
    const double fz = masses[s] * (acc.z() + g);
    denom += fz;
    num_x += fz * c.x() - masses[s] * acc.x() * c.z();
    num_y += fz * c.y() - masses[s] * acc.y() * c.z();
  }
  if (denom <= 0.0)
    throw std::domain_error("zmp: non-positive vertical force (ballistic)");
  return {num_x / denom, num_y / denom};
}

std::vector<ZmpPoint> zmp_trajectory(const SegmentTrajectories& traj,
                                     const std::vector<double>& masses,
                                     double dt, double g) {
  if (traj.empty()) return {};
  std::vector<ZmpPoint> out;
  const std::size_t n = traj.front().size();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(zmp_at(traj, masses, i, dt, g));
  return out;
}

LegAngles leg_ik(const Eigen::Vector2d& hip, const Eigen::Vector2d& ankle,
                 double l1, double l2, Side /*side*/) {
  if (l1 <= 0.0 || l2 <= 0.0)
    throw std::invalid_argument("leg_ik: link lengths must be > 0");
  const Eigen::Vector2d d = hip - ankle;
  const double dist = d.norm();
  constexpr double kTol = 1e-12;
  if (dist > l1 + l2 + kTol || dist < std::abs(l1 - l2) - kTol)
    throw std::domain_error("leg_ik: target outside the reachable annulus");
  const double lean = std::atan2(d.x(), d.y());  // tilt of the hip-ankle line
  // Angle between the calf and the hip-ankle line (law of cosines).
  const double calf_line =
      clamped_acos((dist * dist + l1 * l1 - l2 * l2) / (2.0 * l1 * dist));
  // Knee deviation from full extension; negative-arccos branch.
  const double knee =
      -clamped_acos((dist * dist - l1 * l1 - l2 * l2) / (2.0 * l1 * l2));
  LegAngles out;
  out.ankle = lean + calf_line;
  out.knee = knee;
  out.hip = -(out.ankle + out.knee);
  return out;
}

Eigen::Vector2d leg_fk(const LegAngles& angles, const Eigen::Vector2d& ankle,
                       double l1, double l2) {
  const double a = angles.ankle;
  const double k = angles.ankle + angles.knee;
  return {ankle.x() + l1 * std::sin(a) + l2 * std::sin(k),
          ankle.y() + l1 * std::cos(a) + l2 * std::cos(k)};
}

// ---------------------------------------------------------------------

BipedModel::BipedModel(const BipedGeometry& geometry, double total_mass,
                       double slider_mass)
    : geometry_(geometry), total_mass_(total_mass), slider_mass_(slider_mass) {
  // foot_R, calf_R, thigh_R, foot_L, calf_L, thigh_L, torso, slider
  const double foot = 5.0, calf = 15.0, thigh = 20.0;
  const double torso =
      total_mass - slider_mass - 2.0 * (foot + calf + thigh);
  if (torso <= 0.0)
    throw std::invalid_argument("biped: total mass too small");
  masses_ = {foot, calf, thigh, foot, calf, thigh, torso, slider_mass};

  // Solve the torso COM offset above the hip line so the default standing
  // pose (ankles on the ground, hip center at standing_com_height) has
  // whole-body Cz equal to standing_com_height.
  const double zh = geometry_.standing_com_height;
  const Eigen::Vector2d hip_xz(0.0, zh);
  const Eigen::Vector2d ankle_xz(0.0, 0.0);
  const LegAngles leg =
      leg_ik(hip_xz, ankle_xz, geometry_.calf, geometry_.thigh, Side::kRight);
  const double knee_z = geometry_.calf * std::cos(leg.ankle);
  const double leg_cz = foot * 0.0 + calf * (knee_z / 2.0) +
                        thigh * ((knee_z + zh) / 2.0);
  const double upper_mass = torso + slider_mass;
  torso_com_height_ =
      (zh * total_mass - 2.0 * leg_cz - upper_mass * zh) / upper_mass;
}

ChainConfig BipedModel::chain(const Pose& pose, Side root) const {
  const bool right_root = (root == Side::kRight);
  const double w = geometry_.hip_spacing;
  const Eigen::Vector3d& stance_ankle =
      right_root ? pose.right_ankle : pose.left_ankle;
  const Eigen::Vector3d& swing_ankle =
      right_root ? pose.left_ankle : pose.right_ankle;
  const double side_sign = right_root ? 1.0 : -1.0;  // cross-pelvis direction

  const Eigen::Vector3d stance_hip =
      pose.hip_center + Eigen::Vector3d(0.0, -side_sign * w / 2.0, 0.0);
  const Eigen::Vector3d swing_hip =
      pose.hip_center + Eigen::Vector3d(0.0, side_sign * w / 2.0, 0.0);

  const double l1 = geometry_.calf, l2 = geometry_.thigh;
  const LegAngles up = leg_ik({stance_hip.x(), stance_hip.z()},
                              {stance_ankle.x(), stance_ankle.z()}, l1, l2,
                              root);
  const LegAngles down = leg_ik({swing_hip.x(), swing_hip.z()},
                                {swing_ankle.x(), swing_ankle.z()}, l1, l2,
                                right_root ? Side::kLeft : Side::kRight);

  // Lateral sway is absorbed into the link offsets (the sagittal joints
  // have no roll DOF).
  const double dy_up = (stance_hip.y() - stance_ankle.y()) / 2.0;
  const double dy_down = (swing_ankle.y() - swing_hip.y()) / 2.0;

  ChainConfig cfg;
  cfg.calf_length = l1;
  cfg.thigh_length = l2;
  cfg.links = {
      // O1 stance ankle
      {stance_ankle, {0.0, up.ankle, 0.0}, -1},
      // O2 stance knee
      {{0.0, dy_up, l1}, {0.0, up.knee, 0.0}, -1},
      // O3 stance hip (frame rotation returns to identity)
      {{0.0, dy_up, l2}, {0.0, up.hip, 0.0}, -1},
      // O4 swing hip, across the pelvis
      {{0.0, side_sign * w, 0.0}, {0.0, down.ankle + down.knee, 0.0}, -1},
      // O5 swing knee
      {{0.0, dy_down, -l2}, {0.0, -down.knee, 0.0}, -1},
      // O6 swing ankle
      {{0.0, dy_down, -l1}, {0.0, -down.ankle, 0.0}, -1},
      // O7 lift joint / torso, above the hip line midpoint
      {{0.0, side_sign * w / 2.0, geometry_.torso_rise}, {0.0, 0.0, 0.0}, 2},
  };
  return cfg;
}

std::vector<FrameTransform> BipedModel::frames(const Pose& pose,
                                               Side root) const {
  return forward_chain(chain(pose, root));
}

std::vector<BodySegment> BipedModel::segments(const Pose& pose,
                                              Side root) const {
  const std::vector<FrameTransform> f = frames(pose, root);
  const bool right_root = (root == Side::kRight);
  // frame indices: 1 stance ankle, 2 stance knee, 3 stance hip,
  // 4 swing hip, 5 swing knee, 6 swing ankle, 7 torso
  auto local = [&](int frame, const Eigen::Vector3d& world) {
    const FrameTransform& t = f[static_cast<std::size_t>(frame)];
    return Eigen::Vector3d(t.rotation.transpose() * (world - t.translation));
  };
  const Eigen::Vector3d zero = Eigen::Vector3d::Zero();
  const Eigen::Vector3d stance_calf_com =
      (f[1].translation + f[2].translation) / 2.0;
  const Eigen::Vector3d stance_thigh_com =
      (f[2].translation + f[3].translation) / 2.0;
  const Eigen::Vector3d swing_thigh_com =
      (f[4].translation + f[5].translation) / 2.0;
  const Eigen::Vector3d swing_calf_com =
      (f[5].translation + f[6].translation) / 2.0;

  BodySegment stance_foot{masses_[0], zero, 1};
  BodySegment stance_calf{masses_[1], local(1, stance_calf_com), 1};
  BodySegment stance_thigh{masses_[2], local(2, stance_thigh_com), 2};
  BodySegment swing_foot{masses_[3], zero, 6};
  BodySegment swing_calf{masses_[4], local(5, swing_calf_com), 5};
  BodySegment swing_thigh{masses_[5], local(4, swing_thigh_com), 4};
  BodySegment torso{masses_[6],
                    Eigen::Vector3d(0.0, 0.0, torso_com_height_), 7};
  BodySegment slider{masses_[7],
                     Eigen::Vector3d(pose.slider_x, pose.slider_y,
                                     torso_com_height_),
                     7};

  // Keep the fixed (foot_R, calf_R, thigh_R, foot_L, ...) ordering
  // regardless of which foot roots the chain.
  if (right_root)
    return {stance_foot, stance_calf, stance_thigh,
            swing_foot,  swing_calf,  swing_thigh,
            torso,       slider};
  return {swing_foot,  swing_calf,  swing_thigh,
          stance_foot, stance_calf, stance_thigh,
          torso,       slider};
}

std::vector<Eigen::Vector3d> BipedModel::segment_world_coms(const Pose& pose,
                                                            Side root) const {
  const std::vector<FrameTransform> f = frames(pose, root);
  const std::vector<BodySegment> segs = segments(pose, root);
  std::vector<Eigen::Vector3d> out;
  out.reserve(segs.size());
  for (const BodySegment& s : segs)
    out.push_back(f[static_cast<std::size_t>(s.parent_frame)].apply(
        s.local_com));
  return out;
}

Eigen::Vector3d BipedModel::com(const Pose& pose, Side root) const {
  return whole_body_com(segments(pose, root), frames(pose, root));
}

}  // namespace udv
