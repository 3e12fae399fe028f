#include "udv/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace udv {

namespace {

// Label indices for the seven-label partitions.
enum : int { NB = 0, NM = 1, NS = 2, ZO = 3, PS = 4, PM = 5, PB = 6 };
// Five-label magnitude partition.
enum : int { VS = 0, S = 1, M = 2, B = 3, VB = 4 };

constexpr int kCentroidSubdiv = 200;  // grid points per label spacing

}  // namespace

FuzzyPartition::FuzzyPartition(double lo, double hi,
                               std::vector<std::string> labels)
    : lo_(lo), hi_(hi), labels_(std::move(labels)) {
  if (labels_.size() < 2 || hi_ <= lo_)
    throw std::invalid_argument("fuzzy partition: bad universe");
  spacing_ = (hi_ - lo_) / static_cast<double>(labels_.size() - 1);
}

int FuzzyPartition::index_of(const std::string& label) const {
  // ZE and ZO are used interchangeably.
  const std::string canonical = label == "ZE" ? "ZO" : label;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == canonical) return static_cast<int>(i);
  return -1;
}

double FuzzyPartition::clamp(double x) const {
  return std::clamp(x, lo_, hi_);
}

double FuzzyPartition::membership(std::size_t i, double x) const {
  const double d = std::abs(clamp(x) - peak(i)) / spacing_;
  return std::max(0.0, 1.0 - d);
}

FuzzyPartition FuzzyPartition::seven(double lo, double hi) {
  return {lo, hi, {"NB", "NM", "NS", "ZO", "PS", "PM", "PB"}};
}

FuzzyPartition FuzzyPartition::five_magnitude(double lo, double hi) {
  return {lo, hi, {"VS", "S", "M", "B", "VB"}};
}

FuzzyPartition FuzzyPartition::five_levels(double lo, double hi) {
  return {lo, hi, {"L1", "L2", "L3", "L4", "L5"}};
}

namespace {

// Centroid of the aggregated output set. The grid extends one spacing
// past both universe bounds (edge triangles are full) and aligns with
// the label peaks so symmetric shapes defuzzify exactly.
double centroid(const FuzzyPartition& out, const std::vector<double>& w) {
  const double h = out.spacing();
  const double y0 = out.lo() - h;
  const std::size_t n = (out.size() + 1) * kCentroidSubdiv;
  const double step = h / kCentroidSubdiv;
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double y = y0 + step * static_cast<double>(k);
    double mu = 0.0;
    for (std::size_t l = 0; l < out.size(); ++l) {
      if (w[l] <= 0.0) continue;
      const double tri =
          std::max(0.0, 1.0 - std::abs(y - out.peak(l)) / h);
      mu = std::max(mu, std::min(w[l], tri));
    }
    num += mu * y;
    den += mu;
  }
  if (den == 0.0) return 0.5 * (out.lo() + out.hi());
  return num / den;
}

}  // namespace

MamdaniEngine::MamdaniEngine(FuzzyPartition in1, FuzzyPartition in2,
                             FuzzyPartition out, RuleTable rules)
    : in1_(std::move(in1)),
      in2_(std::move(in2)),
      out_(std::move(out)),
      rules_(std::move(rules)) {
  if (rules_.size() != in1_.size())
    throw std::invalid_argument("fuzzy rules: row count mismatch");
  for (const auto& row : rules_) {
    if (row.size() != in2_.size())
      throw std::invalid_argument("fuzzy rules: column count mismatch");
    for (int c : row)
      if (c < 0 || c >= static_cast<int>(out_.size()))
        throw std::invalid_argument("fuzzy rules: bad consequent");
  }
}

double MamdaniEngine::infer(double x1, double x2) const {
  std::vector<double> w(out_.size(), 0.0);
  for (std::size_t i = 0; i < in1_.size(); ++i) {
    const double m1 = in1_.membership(i, x1);
    if (m1 <= 0.0) continue;
    for (std::size_t j = 0; j < in2_.size(); ++j) {
      const double m2 = in2_.membership(j, x2);
      if (m2 <= 0.0) continue;
      const int c = rules_[i][j];
      w[static_cast<std::size_t>(c)] =
          std::max(w[static_cast<std::size_t>(c)], std::min(m1, m2));
    }
  }
  return centroid(out_, w);
}

MamdaniEngine1d::MamdaniEngine1d(FuzzyPartition in, FuzzyPartition out,
                                 std::vector<int> rules)
    : in_(std::move(in)), out_(std::move(out)), rules_(std::move(rules)) {
  if (rules_.size() != in_.size())
    throw std::invalid_argument("fuzzy rules: size mismatch");
}

double MamdaniEngine1d::infer(double x) const {
  std::vector<double> w(out_.size(), 0.0);
  for (std::size_t i = 0; i < in_.size(); ++i) {
    const double m = in_.membership(i, x);
    if (m <= 0.0) continue;
    const std::size_t c = static_cast<std::size_t>(rules_[i]);
    w[c] = std::max(w[c], m);
  }
  return centroid(out_, w);
}

// ---------------------------------------------------------------------
// Shipped rule tables. Rows: Ke (or ZMPe) from NB to PB; columns: Kec
// (or ZMPec) from NB to PB.

const RuleTable& rules_delta_kp() {
  static const RuleTable t = {
      {PB, PB, PM, PM, PS, PS, ZO},  // Ke = NB
      {PB, PB, PM, PM, PS, ZO, ZO},  // NM
      {PM, PM, PS, PS, ZO, NS, NS},  // NS
      {PM, PM, PS, ZO, NS, NM, NM},  // ZO
      {PS, PS, ZO, NS, NS, NM, NM},  // PS
      {PS, ZO, NS, NM, NM, NM, NB},  // PM
      {ZO, ZO, NS, NM, NM, NB, NB},  // PB
  };
  return t;
}

const RuleTable& rules_delta_ki() {
  static const RuleTable t = {
      {NB, NB, NB, NM, NM, ZO, ZO},  // Ke = NB
      {NB, NB, NM, NM, NS, ZO, ZO},  // NM
      {NM, NM, NS, NS, ZO, PS, PS},  // NS
      {NM, NM, NS, ZO, PS, PS, PM},  // ZO
      {NS, NS, ZO, PS, ZO, PM, PM},  // PS
      {ZO, ZO, PM, PM, PM, PB, PB},  // PM
      {ZO, ZO, PS, PS, PB, PS, PS},  // PB
  };
  return t;
}

const RuleTable& rules_delta_kd() {
  static const RuleTable t = {
      {PS, PS, ZO, ZO, ZO, PB, PB},  // Ke = NB
      {NS, NS, NS, NB, ZO, PS, PM},  // NM
      {NS, NS, NM, NS, ZO, PS, PM},  // NS
      {NS, NM, NM, NS, ZO, PS, PM},  // ZO
      {NM, NM, NM, PS, PS, PS, PS},  // PS
      {NM, NS, NS, NS, ZO, PS, PS},  // PM
      {PM, ZO, ZO, ZO, PM, PB, PB},  // PB
  };
  return t;
}

const RuleTable& rules_basis_controller() {
  static const RuleTable t = {
      {PB, PB, PB, PM, PM, PS, PS},  // ZMPe = NB
      {PB, PB, PM, PM, PS, PS, PS},  // NM
      {PM, PM, PS, PS, PS, PS, PS},  // NS
      {PM, PS, PS, ZO, NS, NS, NM},  // ZO
      {NS, NS, NM, NM, NM, NM, NB},  // PS
      {NS, NM, NM, NB, NB, NB, NB},  // PM
      {NS, NM, NB, NB, NB, NB, NB},  // PB
  };
  return t;
}

const std::vector<int>& rules_scaling_factor() {
  static const std::vector<int> t = {VS, S, M, B, VB};  // L1..L5
  return t;
}

// ---------------------------------------------------------------------

FuzzyPidController::FuzzyPidController()
    : kp_engine_(FuzzyPartition::seven(-0.1, 0.1),
                 FuzzyPartition::seven(-0.05, 0.05),
                 FuzzyPartition::seven(-15.0, 15.0), rules_delta_kp()),
      ki_engine_(FuzzyPartition::seven(-0.1, 0.1),
                 FuzzyPartition::seven(-0.05, 0.05),
                 FuzzyPartition::seven(-1.0, 1.0), rules_delta_ki()),
      kd_engine_(FuzzyPartition::seven(-0.1, 0.1),
                 FuzzyPartition::seven(-0.05, 0.05),
                 FuzzyPartition::seven(-15.0, 15.0), rules_delta_kd()) {}

void FuzzyPidController::reset() {
  state_.integral = 0.0;
}

double FuzzyPidController::step(double Ke, double Kec, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("fuzzy_pid_step: dt must be > 0");
  double dkp = 0.0, dki = 0.0, dkd = 0.0;
  if (state_.adapt_gains) {
    dkp = kp_engine_.infer(Ke, Kec);
    dki = ki_engine_.infer(Ke, Kec);
    dkd = kd_engine_.infer(Ke, Kec);
  }
  // Adapted gains never go negative: a negative kd would inject
  // anti-damping instead of easing off the brake.
  const double kp = std::max(0.0, state_.kp0 + dkp);
  const double ki = std::max(0.0, state_.ki0 + dki);
  const double kd = std::max(0.0, state_.kd0 + dkd);

  // Gain-scheduled integrator: accumulate ki(t)*e so a cut ki really
  // stops charge building up instead of deferring it to the setpoint.
  const double integral_candidate = state_.integral + ki * Ke * dt;
  double u = kp * Ke + integral_candidate + kd * Kec;
  if (u > state_.out_max || u < state_.out_min) {
    // Anti-windup: freeze the integrator while saturated.
    u = kp * Ke + state_.integral + kd * Kec;
    u = std::clamp(u, state_.out_min, state_.out_max);
  } else {
    state_.integral = integral_candidate;
  }
  return u;
}

// ---------------------------------------------------------------------

VufcController::VufcController(const VufcState& initial)
    : state_(initial),
      basis_(FuzzyPartition::seven(-1.0, 1.0), FuzzyPartition::seven(-1.0, 1.0),
             FuzzyPartition::seven(-1.0, 1.0), rules_basis_controller()),
      scaler_(FuzzyPartition::five_levels(0.0, 1.0),
              FuzzyPartition::five_magnitude(0.5, 1.5),
              rules_scaling_factor()) {}

VufcController::Factors VufcController::scale_universes(int level) {
  if (level < 1 || level > 5)
    throw std::invalid_argument("scale_universes: level must be in 1..5");
  const double li = (level - 1) / 4.0;
  const double f = scaler_.infer(li);
  // Table 4 maps all three factors through identical rows.
  state_.zeta = f;
  state_.xi = f;
  state_.gamma = f;
  return {state_.zeta, state_.xi, state_.gamma};
}

double VufcController::step(double zmpe, double zmpec, int level) {
  scale_universes(level);
  const double e_n = zmpe / (state_.zeta * state_.e_span);
  const double ec_n = zmpec / (state_.xi * state_.ec_span);
  const double out_n = basis_.infer(e_n, ec_n);  // inputs clamp to [-1, 1]
  return state_.gamma * state_.y_span * out_n;
}

}  // namespace udv
