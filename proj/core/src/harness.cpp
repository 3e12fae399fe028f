#include "udv/harness.hpp"

#include "udv/adrc.hpp"
#include "udv/csv.hpp"
#include "udv/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace udv {

namespace {

// splitmix64: platform-independent deterministic stream.
std::uint64_t next_u64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& s) {
  return (next_u64(s) >> 11) * 0x1.0p-53;
}

double gaussian(std::uint64_t& s) {
  const double u1 = std::max(uniform01(s), 1e-300);
  const double u2 = uniform01(s);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

constexpr double kNoiseTau = 0.02;  // band-limiting filter [s]

}  // namespace

DisturbanceGenerator::DisturbanceGenerator(
    const DisturbanceSchedule& schedule, std::uint64_t seed, double dt)
    : schedule_(schedule), dt_(dt), rng_state_(seed ^ 0xa5a5a5a5a5a5a5a5ULL) {
  if (dt <= 0.0)
    throw std::invalid_argument("disturbance generator: dt must be > 0");
  noise_alpha_ = dt / (kNoiseTau + dt);
  noise_state_.assign(schedule_.events.size(), 0.0);
}

std::array<double, 2> DisturbanceGenerator::step(double t) {
  // Keep filtered-noise RMS equal to the event magnitude.
  const double noise_gain =
      1.0 / std::sqrt(noise_alpha_ / (2.0 - noise_alpha_));
  std::array<double, 2> d{0.0, 0.0};
  for (std::size_t i = 0; i < schedule_.events.size(); ++i) {
    const auto& e = schedule_.events[i];
    const int axis = std::clamp(e.axis, 0, 1);
    switch (e.kind) {
      case DisturbanceEvent::Kind::kStep:
        if (t >= e.time) {
          const double ramp =
              e.duration > 0.0
                  ? std::min((t - e.time) / e.duration, 1.0)
                  : 1.0;
          d[axis] += e.magnitude * ramp;
        }
        break;
      case DisturbanceEvent::Kind::kImpulse:
        if (e.duration > 0.0 && t >= e.time && t < e.time + e.duration) {
          // Half-sine pulse: smooth onset, peak at mid-width.
          d[axis] += e.magnitude *
                     std::sin(std::numbers::pi * (t - e.time) / e.duration);
        }
        break;
      case DisturbanceEvent::Kind::kNoise: {
        // The stream advances every tick so the sequence does not depend
        // on the active window.
        const double g = gaussian(rng_state_);
        noise_state_[i] += noise_alpha_ * (g - noise_state_[i]);
        const bool active =
            t >= e.time && (e.duration <= 0.0 || t < e.time + e.duration);
        if (active) d[axis] += e.magnitude * noise_gain * noise_state_[i];
        break;
      }
    }
  }
  return d;
}

// ---------------------------------------------------------------------

Metrics compute_metrics(const std::vector<double>& t,
                        const std::vector<double>& value, double initial,
                        double reference) {
  if (t.empty() || t.size() != value.size())
    throw std::invalid_argument("compute_metrics: bad trace");
  Metrics m;
  const double span = reference - initial;

  for (double v : value)
    m.max_tracking_error =
        std::max(m.max_tracking_error, std::abs(v - reference));

  const std::size_t tail = std::max<std::size_t>(1, value.size() / 10);
  double final_mean = 0.0;
  for (std::size_t i = value.size() - tail; i < value.size(); ++i)
    final_mean += value[i];
  final_mean /= static_cast<double>(tail);

  if (reference != 0.0)
    m.steady_state_error_pct =
        std::abs(final_mean - reference) / std::abs(reference) * 100.0;

  if (span != 0.0) {
    const double dir = span > 0.0 ? 1.0 : -1.0;
    // Overshoot beyond the final value, relative to the traversed step.
    double peak = final_mean;
    for (double v : value)
      if ((v - peak) * dir > 0.0) peak = v;
    if (final_mean != initial)
      m.overshoot_pct =
          std::max(0.0, (peak - final_mean) * dir / ((final_mean - initial) * dir) *
                            100.0);

    const double lo = initial + 0.1 * span;
    const double hi = initial + 0.9 * span;
    std::optional<double> t10, t90;
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (!t10 && (value[i] - lo) * dir >= 0.0) t10 = t[i];
      if (!t90 && (value[i] - hi) * dir >= 0.0) {
        t90 = t[i];
        break;
      }
    }
    if (t10 && t90) m.rise_time = *t90 - *t10;

    const double band = 0.02 * std::abs(span);
    if (std::abs(value.back() - reference) <= band) {
      double settle = t.front();
      for (std::size_t i = 0; i < value.size(); ++i)
        if (std::abs(value[i] - reference) > band) settle = t[i];
      m.settling_time = settle;
    }
  }
  return m;
}

// ---------------------------------------------------------------------

SteeringResult run_steering(const SteeringScenario& scenario) {
  if (scenario.duration <= 0.0 || scenario.control_rate < 100.0)
    throw std::invalid_argument("steering scenario: bad duration/rate");
  const double dt = 1.0 / scenario.control_rate;
  const int n = static_cast<int>(std::round(scenario.duration / dt));

  const VehicleParams vehicle = VehicleParams::calibrate();
  const PlantParams plant = PlantParams::make();
  SliderState slider;
  FuzzyPidController controller;
  controller.state().adapt_gains =
      scenario.variant == SteeringVariant::kFuzzyPid;
  DisturbanceGenerator disturbance(scenario.disturbances, scenario.seed, dt);

  SteeringResult result;
  result.trace.reserve(static_cast<std::size_t>(n) + 1);
  std::vector<double> ts, ks;
  ts.reserve(result.trace.capacity());
  ks.reserve(result.trace.capacity());

  double prev_error = 0.0;
  double k_initial = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = i * dt;
    const auto [a, b] = com_shift(slider.position, vehicle);
    const double k = stability_factor(a, b, vehicle);
    if (i == 0) k_initial = k;

    // The rule tables use the measured-minus-desired convention (gain
    // boosts for big deviations, cuts near the setpoint).
    const double error = k - scenario.k_desired;
    const double ke = scenario.err_scale * error;
    const double kec =
        i == 0 ? 0.0 : scenario.err_rate_scale * (error - prev_error) / dt;
    prev_error = error;

    double voltage = 0.0;
    if (scenario.variant != SteeringVariant::kNone) {
      // K above target needs a forward (positive) slider move.
      voltage = scenario.out_scale * controller.step(ke, kec, dt);
      voltage = std::clamp(voltage, -24.0, 24.0);
    }
    const double d = disturbance.step(t)[0];

    result.trace.push_back({t, k, scenario.k_desired, slider.position,
                            voltage});
    ts.push_back(t);
    ks.push_back(k);

    slider = plant_step(slider, voltage + d / plant.input_coefficient, dt,
                        plant);
    if (slider.position <= plant.travel_min + 1e-12 ||
        slider.position >= plant.travel_max - 1e-12)
      result.saturated = true;
  }
  result.final_slider = slider.position;
  result.metrics = compute_metrics(ts, ks, k_initial, scenario.k_desired);
  return result;
}

// ---------------------------------------------------------------------

WalkingScenario::WalkingScenario()
    : grader{builtin_model(Axis::kX), builtin_model(Axis::kY)} {}

DisturbanceSchedule default_walking_disturbances(const GaitParams& gait,
                                                 double duration) {
  DisturbanceSchedule schedule;
  const double step_time = gait.single_support + gait.double_support;
  // Mild transient at every support switch.
  for (double t = gait.single_support; t < duration; t += step_time) {
    schedule.events.push_back({DisturbanceEvent::Kind::kImpulse, 0, t,
                               0.10, 0.25});
    schedule.events.push_back({DisturbanceEvent::Kind::kImpulse, 1, t,
                               0.05, 0.25});
  }
  schedule.events.push_back(
      {DisturbanceEvent::Kind::kNoise, 0, 0.0, 0.02, 0.0});
  schedule.events.push_back(
      {DisturbanceEvent::Kind::kNoise, 1, 0.0, 0.0125, 0.0});
  // Slow payload shifts: 0.5 s ramps the COM sliders can chase.
  schedule.events.push_back(
      {DisturbanceEvent::Kind::kStep, 0, 1.0, 0.35, 0.5});
  schedule.events.push_back(
      {DisturbanceEvent::Kind::kStep, 0, 2.8, -0.60, 0.5});
  schedule.events.push_back(
      {DisturbanceEvent::Kind::kStep, 0, 4.5, 0.45, 0.5});
  schedule.events.push_back(
      {DisturbanceEvent::Kind::kStep, 0, 5.3, -0.65, 0.5});
  schedule.events.push_back(
      {DisturbanceEvent::Kind::kStep, 1, 1.5, 0.18, 0.5});
  schedule.events.push_back(
      {DisturbanceEvent::Kind::kStep, 1, 3.5, -0.30, 0.5});
  return schedule;
}

WalkingResult run_walking(const WalkingScenario& scenario) {
  if (scenario.duration <= 0.0 || scenario.control_rate < 100.0)
    throw std::invalid_argument("walking scenario: bad duration/rate");
  scenario.gait.validate();
  const double dt = 1.0 / scenario.control_rate;
  const int n = static_cast<int>(std::round(scenario.duration / dt));
  const GaitParams& gait = scenario.gait;
  const double zc_over_g = gait.com_height / gait.gravity;

  const PlantParams plant_x = PlantParams::make(0.08, 0.35);
  const PlantParams plant_y = PlantParams::make(0.08, 0.25);
  SliderState slider_x, slider_y;
  AdrcController adrc_x = make_adrc_x(dt);
  AdrcController adrc_y = make_adrc_y(dt);

  VufcState vufc_x_init;
  VufcState vufc_y_init;
  vufc_y_init.e_span = 0.06;
  vufc_y_init.ec_span = 0.03;
  vufc_y_init.y_span = 0.25;
  VufcController vufc_x(vufc_x_init), vufc_y(vufc_y_init);

  const double mass_ratio = plant_x.slider_mass / 450.0;

  const DisturbanceSchedule schedule =
      scenario.use_default_disturbances && scenario.disturbances.events.empty()
          ? default_walking_disturbances(gait, scenario.duration)
          : scenario.disturbances;
  DisturbanceGenerator disturbance(schedule, scenario.seed, dt);

  const FootPlan plan = make_foot_plan(gait);

  WalkingResult result;
  result.trace.reserve(static_cast<std::size_t>(n) + 1);

  // PID baseline state (fixed-gain ZMP-error position controller).
  double pid_int_x = 0.0, pid_int_y = 0.0;
  const double pid_kp = 80.0, pid_ki = 20.0, pid_kd = 8.0;

  double prev_e_x = 0.0, prev_e_y = 0.0;
  double ec_f_x = 0.0, ec_f_y = 0.0;
  const double ec_alpha = dt / (0.05 + dt);
  // The error-rate signals the grader and fuzzy controller were built
  // for live on a much slower scale than the raw 1 kHz derivative.
  const double ec_gain = scenario.ec_gain;

  GaitPhase prev_phase = GaitPhase::kSingleSupport;
  std::vector<double> switch_peaks;
  double window_until = -1.0, window_peak = 0.0;

  int levels_le3 = 0;
  double tail_abs_sum = 0.0;
  int tail_count = 0;
  const int tail_start = n - n / 10;

  for (int i = 0; i <= n; ++i) {
    const double t = i * dt;
    double tc = std::max(t, dt);  // central-difference clamp at t=0

    // Keep the difference stencil inside one gait phase: the planned
    // acceleration is discontinuous at phase boundaries and a straddling
    // stencil would put a one-tick spike on the nominal ZMP.
    {
      const PhaseInfo pi = phase_at(gait, tc);
      const double phase_len = pi.phase == GaitPhase::kSingleSupport
                                   ? gait.single_support
                                   : gait.double_support;
      if (pi.phase_time < dt)
        tc += dt - pi.phase_time;
      else if (phase_len - pi.phase_time < dt)
        tc -= dt - (phase_len - pi.phase_time);
    }

    const HipState h0 = hip_at(gait, tc - dt);
    const HipState h1 = hip_at(gait, tc);
    const HipState h2 = hip_at(gait, tc + dt);
    const double ax = (h2.x - 2.0 * h1.x + h0.x) / (dt * dt);
    const double ay = (h2.y - 2.0 * h1.y + h0.y) / (dt * dt);
    const double zmpd_x = h1.x - zc_over_g * ax;
    const double zmpd_y = h1.y - zc_over_g * ay;

    // Quasi-static slider contribution: the slider shifts the whole-body
    // COM by ms/m of its displacement.
    const auto d = disturbance.step(t);
    const double zmp_x =
        zmpd_x + mass_ratio * slider_x.position - zc_over_g * d[0];
    const double zmp_y =
        zmpd_y + mass_ratio * slider_y.position - zc_over_g * d[1];

    const double e_x = zmp_x - zmpd_x;
    const double e_y = zmp_y - zmpd_y;
    const double ec_x = i == 0 ? 0.0 : (e_x - prev_e_x) / dt;
    const double ec_y = i == 0 ? 0.0 : (e_y - prev_e_y) / dt;
    ec_f_x += ec_alpha * (ec_x - ec_f_x);
    ec_f_y += ec_alpha * (ec_y - ec_f_y);
    prev_e_x = e_x;
    prev_e_y = e_y;

    const double ecs_x = ec_gain * ec_f_x;
    const double ecs_y = ec_gain * ec_f_y;
    const int level_x = classify({e_x, ecs_x}, scenario.grader.x);
    const int level_y = classify({e_y, ecs_y}, scenario.grader.y);

    double yd_x = 0.0, yd_y = 0.0, u_x = 0.0, u_y = 0.0;
    switch (scenario.variant) {
      case WalkingVariant::kPid: {
        pid_int_x += e_x * dt;
        pid_int_y += e_y * dt;
        u_x = std::clamp(
            -(pid_kp * e_x + pid_ki * pid_int_x + pid_kd * ec_f_x), -24.0,
            24.0);
        u_y = std::clamp(
            -(pid_kp * e_y + pid_ki * pid_int_y + pid_kd * ec_f_y), -24.0,
            24.0);
        break;
      }
      case WalkingVariant::kVufcAdrc:
      case WalkingVariant::kVufcAdrcGraded: {
        const bool graded =
            scenario.variant == WalkingVariant::kVufcAdrcGraded;
        // Level 3 maps to scaling factor M = 1.0 (base universes).
        yd_x = vufc_x.step(e_x, ecs_x, graded ? level_x : 3);
        yd_y = vufc_y.step(e_y, ecs_y, graded ? level_y : 3);
        u_x = adrc_x.step(yd_x, slider_x.position, dt);
        u_y = adrc_y.step(yd_y, slider_y.position, dt);
        break;
      }
    }

    result.trace.push_back({t, zmp_x, zmpd_x, zmp_y, zmpd_y, level_x,
                            level_y, slider_x.position, slider_y.position,
                            yd_x, yd_y});

    result.max_error_x = std::max(result.max_error_x, std::abs(e_x));
    result.max_error_y = std::max(result.max_error_y, std::abs(e_y));
    if (std::max(level_x, level_y) <= 3) ++levels_le3;
    if (i >= tail_start) {
      tail_abs_sum += std::abs(e_x);
      ++tail_count;
    }

    // Support polygon check (axis-aligned bounding hull).
    const PhaseInfo info = phase_at(gait, t);
    double x_lo, x_hi;
    if (info.phase == GaitPhase::kSingleSupport) {
      x_lo = plan.foothold_x(info.step_index) - gait.foot_length / 2.0;
      x_hi = plan.foothold_x(info.step_index) + gait.foot_length / 2.0;
    } else {
      x_lo = plan.foothold_x(info.step_index) - gait.foot_length / 2.0;
      x_hi = plan.foothold_x(info.step_index + 1) + gait.foot_length / 2.0;
    }
    const double y_hi =
        plan.lateral_half + gait.foot_width / 2.0;
    double y_lo = -y_hi;
    if (info.phase == GaitPhase::kSingleSupport) {
      const double yc = plan.foothold_y(info.step_index);
      y_lo = yc - gait.foot_width / 2.0;
      const double y_hi_ss = yc + gait.foot_width / 2.0;
      if (zmp_y < y_lo || zmp_y > y_hi_ss) result.tipped = true;
    } else if (zmp_y < y_lo || zmp_y > y_hi) {
      result.tipped = true;
    }
    if (zmp_x < x_lo || zmp_x > x_hi) result.tipped = true;

    // Support-switch overshoot windows (entry into double support).
    if (i > 0 && info.phase == GaitPhase::kDoubleSupport &&
        prev_phase == GaitPhase::kSingleSupport) {
      if (window_until >= 0.0) switch_peaks.push_back(window_peak);
      window_until = t + gait.double_support + 0.05;
      window_peak = 0.0;
    }
    if (window_until >= 0.0 && t <= window_until)
      window_peak = std::max(window_peak, std::abs(e_x));
    prev_phase = info.phase;

    slider_x = plant_step(slider_x, u_x, dt, plant_x);
    slider_y = plant_step(slider_y, u_y, dt, plant_y);
  }
  if (window_until >= 0.0) switch_peaks.push_back(window_peak);

  if (!switch_peaks.empty()) {
    double sum = 0.0;
    for (double p : switch_peaks) sum += p;
    result.switch_overshoot = sum / static_cast<double>(switch_peaks.size());
  }
  result.steady_state_error =
      tail_count > 0 ? tail_abs_sum / tail_count : 0.0;
  result.level_le3_fraction =
      static_cast<double>(levels_le3) / static_cast<double>(n + 1);
  return result;
}

// ---------------------------------------------------------------------

void write_steering_trace(const SteeringResult& result,
                          const std::string& path) {
  CsvWriter csv(path);
  csv.header({"t", "K", "Kd", "y_x", "u"});
  for (const auto& r : result.trace)
    csv.row({r.t, r.k, r.k_desired, r.slider, r.voltage});
}

void write_walking_trace(const WalkingResult& result,
                         const std::string& path) {
  CsvWriter csv(path);
  csv.header({"t", "zmp_x", "zmpd_x", "zmp_y", "zmpd_y", "level_x",
              "level_y", "y_x", "y_y", "yd_x", "yd_y"});
  for (const auto& r : result.trace)
    csv.row({r.t, r.zmp_x, r.zmpd_x, r.zmp_y, r.zmpd_y,
             static_cast<double>(r.level_x), static_cast<double>(r.level_y),
             r.y_x, r.y_y, r.yd_x, r.yd_y});
}

}  // namespace udv
