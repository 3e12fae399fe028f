#ifndef UDV_HARNESS_HPP_
#define UDV_HARNESS_HPP_

#include "udv/gait.hpp"
#include "udv/grader.hpp"
#include "udv/mechanism.hpp"
#include "udv/vehicle.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace udv {

// ---------------------------------------------------------------------
// Disturbances. Magnitudes are accelerations [m/s^2] applied to the
// tracked body; the harness maps them onto the ZMP through the
// cart-table factor zc/g and onto the slider plant as force-equivalent
// input offsets.

struct DisturbanceEvent {
  enum class Kind { kStep, kImpulse, kNoise };
  Kind kind = Kind::kStep;
  int axis = 0;            // 0 = X, 1 = Y
  double time = 0.0;       // onset [s]
  double magnitude = 0.0;  // [m/s^2]; for noise, the RMS amplitude
  double duration = 0.0;   // impulse width / noise window (0 = to end)
};

struct DisturbanceSchedule {
  std::vector<DisturbanceEvent> events;
};

// Deterministic per-tick generator: steps and impulses are evaluated
// exactly; band-limited noise is a seeded first-order-filtered Gaussian
// stream advanced once per tick.
class DisturbanceGenerator {
 public:
  DisturbanceGenerator(const DisturbanceSchedule& schedule,
                       std::uint64_t seed, double dt);

  // Disturbance accelerations (x, y) at tick time t; must be called with
  // strictly increasing t, once per tick.
  std::array<double, 2> step(double t);

 private:
  DisturbanceSchedule schedule_;
  double dt_;
  double noise_alpha_;
  std::vector<double> noise_state_;
  std::uint64_t rng_state_;
};

// ---------------------------------------------------------------------
// Step-response metrics (Table-5-style quantities). Metrics that the
// trace never defines (e.g. settling of a non-converging response) stay
// unset.

struct Metrics {
  std::optional<double> steady_state_error_pct;
  std::optional<double> overshoot_pct;
  std::optional<double> rise_time;      // 10% -> 90% [s]
  std::optional<double> settling_time;  // last entry into +-2% [s]
  double max_tracking_error = 0.0;      // [m or K units]
};

Metrics compute_metrics(const std::vector<double>& t,
                        const std::vector<double>& value, double initial,
                        double reference);

// ---------------------------------------------------------------------
// Steering scenario (vehicular configuration, K regulation).

enum class SteeringVariant { kNone, kPid, kFuzzyPid };

struct SteeringScenario {
  SteeringVariant variant = SteeringVariant::kFuzzyPid;
  double duration = 5.0;        // [s]
  double control_rate = 1000.0; // [Hz]
  double k_desired = 0.0024;
  double speed = 10.0;          // ux [m/s], logged context only
  std::uint64_t seed = 1;
  // Error scaling into the fuzzy universes: Ke = err_scale * (K - Kd),
  // Kec = err_rate_scale * d(K - Kd)/dt; controller volts are scaled by
  // out_scale onto the plant.
  double err_scale = 115.0;
  double err_rate_scale = 16.5;
  double out_scale = 10.0;
  DisturbanceSchedule disturbances;
};

struct SteeringTraceRow {
  double t = 0.0;
  double k = 0.0;        // measured stability factor
  double k_desired = 0.0;
  double slider = 0.0;   // X slider position [m]
  double voltage = 0.0;  // plant input [V]
};

struct SteeringResult {
  std::vector<SteeringTraceRow> trace;
  Metrics metrics;          // on K(t) vs k_desired
  double final_slider = 0.0;
  bool saturated = false;   // slider hit a travel limit
};

SteeringResult run_steering(const SteeringScenario& scenario);

// ---------------------------------------------------------------------
// Walking scenario (humanoid configuration, ZMP regulation).

enum class WalkingVariant { kPid, kVufcAdrc, kVufcAdrcGraded };

struct WalkingScenario {
  WalkingVariant variant = WalkingVariant::kVufcAdrcGraded;
  double duration = 6.0;         // [s]
  double control_rate = 1000.0;  // [Hz]
  std::uint64_t seed = 1;
  GaitParams gait;
  GraderModel grader;            // defaults to the built-in model
  DisturbanceSchedule disturbances;  // empty -> default schedule
  bool use_default_disturbances = true;
  // Scale from the filtered ZMP error rate onto the grader/fuzzy error-rate
  // universes (the raw 1 kHz derivative lives on a much faster scale).
  double ec_gain = 0.05;

  WalkingScenario();
};

// Default schedule: an impulse at every support-phase switch (the
// planned acceleration discontinuity), band-limited noise on both axes,
// and one sustained step on X mid-run.
DisturbanceSchedule default_walking_disturbances(const GaitParams& gait,
                                                 double duration);

struct WalkingTraceRow {
  double t = 0.0;
  double zmp_x = 0.0, zmpd_x = 0.0;
  double zmp_y = 0.0, zmpd_y = 0.0;
  int level_x = 1, level_y = 1;
  double y_x = 0.0, y_y = 0.0;    // slider positions [m]
  double yd_x = 0.0, yd_y = 0.0;  // desired slider positions [m]
};

struct WalkingResult {
  std::vector<WalkingTraceRow> trace;
  double max_error_x = 0.0;  // max |zmp_x - zmpd_x| [m]
  double max_error_y = 0.0;
  // Mean peak |ZMPe_x| in the window after each support switch.
  double switch_overshoot = 0.0;
  double steady_state_error = 0.0;  // mean |ZMPe_x| over the last 10%
  double level_le3_fraction = 0.0;  // samples with level_x <= 3
  bool tipped = false;              // ZMP left the support polygon
};

WalkingResult run_walking(const WalkingScenario& scenario);

// ---------------------------------------------------------------------
// Trace output.

void write_steering_trace(const SteeringResult& result,
                          const std::string& path);
void write_walking_trace(const WalkingResult& result,
                         const std::string& path);

}  // namespace udv

#endif  // UDV_HARNESS_HPP_
