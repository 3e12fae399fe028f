#ifndef UDV_VEHICLE_HPP_
#define UDV_VEHICLE_HPP_

#include <utility>
#include <vector>

namespace udv {

/**
 * 2-DOF yaw-plane (bicycle) model parameters.
 *
 * Cornering stiffnesses are stored positive; the steady-state equations
 * and the stability factor
 *   K = (m/L^2) * (a/k2 - b/k1)
 * are arranged so that K > 0 at the calibrated center position and K
 * increases as the slider moves toward the rear axle (negative X).
 */
struct VehicleParams {
  double total_mass = 450.0;       // m [kg]
  double yaw_inertia = 270.0;      // Iz [kg*m^2]
  double front_stiffness = 0.0;    // k1 [N/rad], set by calibrate()
  double rear_stiffness = 0.0;     // k2 [N/rad]
  double wheelbase = 1.6;          // L [m]
  double nominal_front_dist = 0.0; // a0 [m], COM to front axle at center
  double nominal_rear_dist = 0.0;  // b0w [m]
  double slider_mass = 60.0;       // ms [kg]

  // Calibrates k1 = k2 and the a0/b0w split (1-D root-find on the
  // stiffness) so that K(slider = 0) = k_center and the slider excursion
  // `excursion` (negative X) reaches K = k_target.
  static VehicleParams calibrate(double k_center = 0.00097,
                                 double k_target = 0.0024,
                                 double excursion = -0.289);

  void validate() const;
};

// Yaw-plane state. Below eps_speed the sideslip is defined as 0.
struct SteeringState {
  double longitudinal_speed = 0.0;  // ux [m/s]
  double lateral_speed = 0.0;       // uy [m/s]
  double yaw_rate = 0.0;            // wr [rad/s]
  double sideslip = 0.0;            // beta [rad]
  double front_steer = 0.0;         // delta [rad]
};

inline constexpr double kEpsSpeed = 0.01;  // [m/s]

// One reduced data point of the constant-radius steady steering test.
struct SteadyTestPoint {
  double lateral_accel = 0.0;   // ay [m/s^2]
  double slip_angle_diff = 0.0; // alpha1 - alpha2 [deg]
  double k_estimate = 0.0;      // [s^2/m^2], comparable to K
  double speed = 0.0;           // ux [m/s]
  double gain = 0.0;            // wr/delta [1/s]
};

// Maps a slider position to front/rear COM distances. Positive slider_y
// is toward the front axle. Throws if the COM leaves the wheelbase.
std::pair<double, double> com_shift(double slider_y,
                                    const VehicleParams& params);

// K = (m/L^2)*(a/k2 - b/k1). Requires a + b = L.
double stability_factor(double a, double b, const VehicleParams& params);

// Steady-state yaw-rate gain (ux/L)/(1 + K*ux^2). Throws near the
// oversteer singularity ux = sqrt(-1/K).
double yaw_rate_gain(double ux, double K, double L);

// Characteristic speed sqrt(1/K) of an understeering vehicle.
double characteristic_speed(double K);

// Solves the steady-state 2x2 system for (beta, wr) at the given front
// steer angle, speed and COM split.
std::pair<double, double> steady_state_solve(double delta, double ux,
                                             const VehicleParams& params,
                                             double a, double b);

struct SteadyTestSample {
  double front_steer = 0.0;  // delta [rad]
  double speed = 0.0;        // ux [m/s]
  double yaw_rate = 0.0;     // wr [rad/s]
};

// Constant-radius test reduction: R = ux/wr, ay = ux*wr,
// alpha1 - alpha2 = 57.3*L*(1/R0 - 1/R) [deg], and
// K_est = (alpha1 - alpha2)/(57.3 * ay * L) back in SI units.
std::vector<SteadyTestPoint> steady_test_reduce(
    const std::vector<SteadyTestSample>& points, double R0, double L);

}  // namespace udv

#endif  // UDV_VEHICLE_HPP_
