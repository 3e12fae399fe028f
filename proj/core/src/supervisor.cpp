#include "udv/supervisor.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace udv {

GuardSignals derive_signals(double delta, double ux, double theta_dot_max,
                            double y_dot, const GuardThresholds& th) {
  if (th.steer <= 0.0 || th.speed <= 0.0 || th.joint_rate <= 0.0 ||
      th.slider_rate <= 0.0)
    throw std::invalid_argument("derive_signals: thresholds must be > 0");
  GuardSignals s;
  s.st_delta = std::abs(delta) > th.steer;
  s.st_ux = std::abs(ux) > th.speed;
  s.st_theta_dot = std::abs(theta_dot_max) > th.joint_rate;
  s.st_ydot = std::abs(y_dot) > th.slider_rate;
  return s;
}

namespace {

// Outgoing transitions per mode, in priority order (toward Q4 first;
// from Q4, S41 > S42 > S43).
struct Transition {
  Mode to;
  bool (*guard)(const GuardSignals&);
};

bool g14(const GuardSignals& s) { return !s.st_ux; }
bool g13(const GuardSignals& s) { return !s.st_delta; }
bool g24(const GuardSignals& s) { return !s.st_theta_dot; }
bool g34(const GuardSignals& s) { return !s.st_ux; }
bool g31(const GuardSignals& s) { return s.st_delta && s.st_ydot; }
bool g41(const GuardSignals& s) {
  return s.st_ux && s.st_delta && s.st_ydot;
}
bool g42(const GuardSignals& s) { return s.st_theta_dot && s.st_ydot; }
bool g43(const GuardSignals& s) { return s.st_ux; }

const std::vector<Transition>& outgoing(Mode mode) {
  static const std::vector<Transition> from_q1 = {{Mode::kQ4, g14},
                                                  {Mode::kQ3, g13}};
  static const std::vector<Transition> from_q2 = {{Mode::kQ4, g24}};
  static const std::vector<Transition> from_q3 = {{Mode::kQ4, g34},
                                                  {Mode::kQ1, g31}};
  static const std::vector<Transition> from_q4 = {
      {Mode::kQ1, g41}, {Mode::kQ2, g42}, {Mode::kQ3, g43}};
  switch (mode) {
    case Mode::kQ1: return from_q1;
    case Mode::kQ2: return from_q2;
    case Mode::kQ3: return from_q3;
    case Mode::kQ4: return from_q4;
  }
  throw std::logic_error("supervisor: bad mode");
}

}  // namespace

void supervisor_step(AutomatonState& state, const GuardSignals& signals,
                     double dt) {
  if (dt <= 0.0)
    throw std::invalid_argument("supervisor_step: dt must be > 0");
  state.time_in_mode += dt;
  if (state.time_in_mode < state.min_dwell) return;

  const auto& candidates = outgoing(state.mode);
  const Transition* chosen = nullptr;
  int enabled = 0;
  for (const auto& t : candidates) {
    if (t.guard(signals)) {
      ++enabled;
      if (chosen == nullptr) chosen = &t;
    }
  }
  if (enabled > 1) state.conflict_logged = true;
  if (chosen != nullptr) {
    state.mode = chosen->to;
    state.time_in_mode = 0.0;
  }
}

ControllerSelection mode_output(const AutomatonState& state) {
  switch (state.mode) {
    case Mode::kQ1: return ControllerSelection::kSteering;
    case Mode::kQ2: return ControllerSelection::kWalking;
    case Mode::kQ3:
    case Mode::kQ4: return ControllerSelection::kNone;
  }
  return ControllerSelection::kNone;
}

}  // namespace udv
