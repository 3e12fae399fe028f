#ifndef UDV_KINEMATICS_HPP_
#define UDV_KINEMATICS_HPP_

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <vector>

namespace udv {

/// Rigid transform: orthonormal rotation + translation.
struct FrameTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }
  FrameTransform operator*(const FrameTransform& rhs) const {
    return {rotation * rhs.rotation, rotation * rhs.translation + translation};
  }
  static FrameTransform identity() { return {}; }
};

// Elementary-rotation composition Rz(tz)*Ry(ty)*Rx(tx) with the given
// translation. angles = (tx, ty, tz), offsets = (lx, ly, lz).
FrameTransform compose_transform(const Eigen::Vector3d& angles,
                                 const Eigen::Vector3d& offsets);

// One link of a kinematic chain: fixed offset + joint rotation relative
// to the parent frame. parent = -1 means the preceding link (serial).
struct ChainLink {
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();
  Eigen::Vector3d angles = Eigen::Vector3d::Zero();  // (tx, ty, tz)
  int parent = -1;
};

struct ChainConfig {
  std::vector<ChainLink> links;
  double calf_length = 0.5;   // l1 [m]
  double thigh_length = 0.5;  // l2 [m]
};

// Cumulative transforms base->frame_i for i = 1..links.size(). The
// returned vector has size links.size()+1; element 0 is the base frame.
std::vector<FrameTransform> forward_chain(const ChainConfig& config);

// Rigid body segment: mass + COM in its parent frame.
struct BodySegment {
  double mass = 0.0;                                   // mi [kg]
  Eigen::Vector3d local_com = Eigen::Vector3d::Zero(); // ci [m]
  int parent_frame = 0;  // index into the forward_chain result
};

// Mass-weighted mean of the transformed segment COMs.
Eigen::Vector3d whole_body_com(const std::vector<BodySegment>& segments,
                               const std::vector<FrameTransform>& frames);

struct ZmpPoint {
  double x = 0.0;
  double y = 0.0;
};

// Segment COM trajectories in the base frame: traj[segment][sample].
using SegmentTrajectories = std::vector<std::vector<Eigen::Vector3d>>;

// ZMP at one sample from segment positions and finite-difference
// accelerations (central interior, one-sided second-order endpoints).
// Throws if the vertical force denominator is not positive (ballistic).
ZmpPoint zmp_at(const SegmentTrajectories& traj,
                const std::vector<double>& masses, std::size_t index,
                double dt, double g = 9.81);

std::vector<ZmpPoint> zmp_trajectory(const SegmentTrajectories& traj,
                                     const std::vector<double>& masses,
                                     double dt, double g = 9.81);

enum class Side { kLeft, kRight };

// Sagittal leg joint angles, measured up the chain from the foot:
// ankle = calf tilt from vertical, knee = relative thigh rotation
// (negative branch, 0 at full extension), hip = -(ankle + knee) so the
// torso stays vertical.
struct LegAngles {
  double ankle = 0.0;
  double knee = 0.0;
  double hip = 0.0;
};

// Two-link law-of-cosines IK in the sagittal (x, z) plane. Throws
// outside the reachable annulus.
LegAngles leg_ik(const Eigen::Vector2d& hip, const Eigen::Vector2d& ankle,
                 double l1, double l2, Side side);

// Planar FK companion: hip position from ankle position and leg angles.
Eigen::Vector2d leg_fk(const LegAngles& angles, const Eigen::Vector2d& ankle,
                       double l1, double l2);

// ---------------------------------------------------------------------
// Biped assembly used by the walking harness.

struct BipedGeometry {
  double calf = 0.5;          // l1 [m]
  double thigh = 0.5;         // l2 [m]
  double hip_spacing = 0.3;   // lateral distance between hip joints [m]
  double foot_length = 0.2;   // [m]
  double foot_width = 0.1;    // [m]
  double torso_rise = 0.0;    // lift joint offset above the hip line [m]
  double standing_com_height = 0.9;  // design target for the default pose
};

// Humanoid assembly: two legs, torso (front body + rear body lumped) and
// the movable slider segment. The torso COM height is solved at build so
// the default standing pose has Cz = standing_com_height.
class BipedModel {
 public:
  explicit BipedModel(const BipedGeometry& geometry, double total_mass = 450.0,
                      double slider_mass = 60.0);

  struct Pose {
    Eigen::Vector3d right_ankle = Eigen::Vector3d::Zero();  // world
    Eigen::Vector3d left_ankle = Eigen::Vector3d::Zero();   // world
    Eigen::Vector3d hip_center = Eigen::Vector3d::Zero();   // world
    double slider_x = 0.0;  // X-slider displacement [m]
    double slider_y = 0.0;  // Y-slider displacement [m]
  };

  // Chain + frames for the pose, rooted at the chosen stance foot.
  ChainConfig chain(const Pose& pose, Side root) const;
  std::vector<FrameTransform> frames(const Pose& pose, Side root) const;

  // Segment table bound to the frames of chain(pose, root).
  std::vector<BodySegment> segments(const Pose& pose, Side root) const;

  // World COM positions of every segment (root-independent).
  std::vector<Eigen::Vector3d> segment_world_coms(const Pose& pose,
                                                  Side root) const;

  Eigen::Vector3d com(const Pose& pose, Side root = Side::kRight) const;

  const std::vector<double>& masses() const { return masses_; }
  double total_mass() const { return total_mass_; }
  const BipedGeometry& geometry() const { return geometry_; }

 private:
  BipedGeometry geometry_;
  double total_mass_ = 0.0;
  double slider_mass_ = 0.0;
  std::vector<double> masses_;   // foot_R, calf_R, thigh_R, foot_L, calf_L,
                                 // thigh_L, torso, slider
  double torso_com_height_ = 0.0;  // above the hip line, solved at build
};

}  // namespace udv

#endif  // UDV_KINEMATICS_HPP_
