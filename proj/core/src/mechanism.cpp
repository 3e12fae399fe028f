#include "udv/mechanism.hpp"

#include <stdexcept>

namespace udv {

PlantParams PlantParams::make(double b0, double travel_limit, double Ka,
                              double Kt, double pr, double Bz, double ms) {
  PlantParams p;
  p.current_constant = Ka;
  p.torque_constant = Kt;
  p.screw_lead = pr;
  p.guide_ratio = pr / (2.0 * std::numbers::pi);
  p.viscous_damping = Bz;
  p.slider_mass = ms;
  p.inertia = Ka * Kt * p.guide_ratio / b0;
  // Recompute b0 from the stored constants so the invariant
  // b0 == Ka*Kt*rg/J holds bit-exactly.
  p.input_coefficient = Ka * Kt * p.guide_ratio / p.inertia;
  p.travel_min = -travel_limit;
  p.travel_max = travel_limit;
  p.validate();
  return p;
}

void PlantParams::validate() const {
  if (inertia <= 0.0) throw std::invalid_argument("plant: J must be > 0");
  if (viscous_damping < 0.0)
    throw std::invalid_argument("plant: Bz must be >= 0");
  if (travel_min >= travel_max)
    throw std::invalid_argument("plant: ymin must be < ymax");
  if (guide_ratio != screw_lead / (2.0 * std::numbers::pi))
    throw std::invalid_argument("plant: rg != pr/(2*pi)");
  const double b0 = current_constant * torque_constant * guide_ratio / inertia;
  if (b0 != input_coefficient)
    throw std::invalid_argument("plant: b0 != Ka*Kt*rg/J");
}

double plant_derivative(const SliderState& state, double u,
                        const PlantParams& params) {
  return -(params.viscous_damping / params.inertia) * state.velocity +
         params.input_coefficient * u;
}

SliderState plant_step(const SliderState& state, double u, double dt,
                       const PlantParams& params) {
  if (dt <= 0.0) throw std::invalid_argument("plant_step: dt must be > 0");
  SliderState next = state;
  next.velocity += plant_derivative(state, u, params) * dt;
  next.position += next.velocity * dt;
  if (next.position <= params.travel_min) {
    next.position = params.travel_min;
    next.velocity = 0.0;
  } else if (next.position >= params.travel_max) {
    next.position = params.travel_max;
    next.velocity = 0.0;
  }
  next.time += dt;
  return next;
}

}  // namespace udv
