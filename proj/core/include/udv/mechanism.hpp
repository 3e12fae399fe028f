#ifndef UDV_MECHANISM_HPP_
#define UDV_MECHANISM_HPP_

#include <numbers>

namespace udv {

/**
 * Electromechanical parameters of one axis of the COM adjustment
 * mechanism (drive motor + ball screw + slider).
 *
 * The motor current and torque loops are collapsed into the constants
 * Ka and Kt; the slider obeys the linear second-order model
 *   y_dd = -(Bz/J) * y_dot + b0 * u
 * with b0 = Ka*Kt*rg/J and rg = pr/(2*pi).
 */
struct PlantParams {
  double current_constant = 1.0;    // Ka [A/V]
  double torque_constant = 0.5;     // Kt [N*m/A]
  double inertia = 0.0;             // J [kg*m^2], set by make()
  double viscous_damping = 0.025;   // Bz [N*m*s/rad]
  double screw_lead = 0.01;         // pr [m/rev]
  double guide_ratio = 0.0;         // rg = pr/(2*pi) [m/rad]
  double input_coefficient = 0.0;   // b0 = Ka*Kt*rg/J [m/(s^2*V)]
  double slider_mass = 60.0;        // ms [kg]
  double travel_min = -0.35;        // ymin [m]
  double travel_max = 0.35;         // ymax [m]

  // Builds a consistent parameter set. J is derived from the requested
  // b0 so that b0 = Ka*Kt*rg/J holds bit-exactly (the controllers only
  // ever see b0 and the total disturbance).
  static PlantParams make(double b0 = 0.08,
                          double travel_limit = 0.35,
                          double Ka = 1.0, double Kt = 0.5,
                          double pr = 0.01, double Bz = 0.025,
                          double ms = 60.0);

  void validate() const;  // throws std::invalid_argument on violation
};

// Position/velocity of one COM-adjustment axis.
struct SliderState {
  double position = 0.0;  // y [m]
  double velocity = 0.0;  // y_dot [m/s]
  double time = 0.0;      // t [s]
};

// y_dd = -(Bz/J)*y_dot + b0*u. Total function.
double plant_derivative(const SliderState& state, double u,
                        const PlantParams& params);

// Semi-implicit Euler update (velocity first, then position), clamped at
// the travel limits with velocity zeroed on contact.
SliderState plant_step(const SliderState& state, double u, double dt,
                       const PlantParams& params);

}  // namespace udv

#endif  // UDV_MECHANISM_HPP_
