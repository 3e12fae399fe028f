#ifndef UDV_FUZZY_HPP_
#define UDV_FUZZY_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace udv {

/**
 * Uniform triangular partition of [lo, hi]: one peak per label, evenly
 * spaced, adjacent triangles crossing at 0.5 so the memberships sum to 1
 * on the interior. Edge triangles are full (their support extends past
 * the universe), so the centroid of an edge consequent sits at the
 * universe bound.
 */
class FuzzyPartition {
 public:
  FuzzyPartition(double lo, double hi, std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double spacing() const { return spacing_; }
  double peak(std::size_t i) const { return lo_ + spacing_ * i; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  int index_of(const std::string& label) const;  // -1 if absent

  // Triangular membership of label i at x (x clamped to [lo, hi]).
  double membership(std::size_t i, double x) const;
  double clamp(double x) const;

  static FuzzyPartition seven(double lo, double hi);  // NB..PB (ZO == ZE)
  static FuzzyPartition five_magnitude(double lo, double hi);  // VS..VB
  static FuzzyPartition five_levels(double lo, double hi);     // L1..L5

 private:
  double lo_, hi_, spacing_;
  std::vector<std::string> labels_;
};

// Complete 2-D rule grid: rules[i][j] is the output label index for
// (input1 label i, input2 label j).
using RuleTable = std::vector<std::vector<int>>;

// Mamdani min-max inference with centroid defuzzification.
class MamdaniEngine {
 public:
  MamdaniEngine(FuzzyPartition in1, FuzzyPartition in2, FuzzyPartition out,
                RuleTable rules);

  double infer(double x1, double x2) const;

  const FuzzyPartition& input1() const { return in1_; }
  const FuzzyPartition& input2() const { return in2_; }
  const FuzzyPartition& output() const { return out_; }
  const RuleTable& rules() const { return rules_; }

 private:
  FuzzyPartition in1_, in2_, out_;
  RuleTable rules_;
};

// Single-input variant (used by the scaling-factor controller).
class MamdaniEngine1d {
 public:
  MamdaniEngine1d(FuzzyPartition in, FuzzyPartition out,
                  std::vector<int> rules);
  double infer(double x) const;

 private:
  FuzzyPartition in_, out_;
  std::vector<int> rules_;
};

// ---------------------------------------------------------------------
// Shipped rule tables. Cell values are label indices into the seven- or
// five-label partitions (NB=0..PB=6, VS=0..VB=4).

const RuleTable& rules_delta_kp();
const RuleTable& rules_delta_ki();
const RuleTable& rules_delta_kd();
const RuleTable& rules_basis_controller();
const std::vector<int>& rules_scaling_factor();

// ---------------------------------------------------------------------
// Fuzzy-PID steering stability controller.

struct FuzzyPidState {
  double kp0 = 15.0;
  double ki0 = 0.8;
  double kd0 = 9.0;
  double integral = 0.0;      // accumulated Ke*dt
  double out_min = -24.0;     // voltage limits [V]
  double out_max = 24.0;
  bool adapt_gains = true;    // false: fixed (kp0, ki0, kd0) PID baseline
};

class FuzzyPidController {
 public:
  FuzzyPidController();

  // Positional PID with Table-2 gain adaptation and clamping
  // anti-windup. Ke and Kec are in the fuzzy input universes
  // ([-0.1, 0.1] and [-0.05, 0.05]); inference inputs are clamped.
  double step(double Ke, double Kec, double dt);

  FuzzyPidState& state() { return state_; }
  const FuzzyPidState& state() const { return state_; }
  void reset();

 private:
  FuzzyPidState state_;
  MamdaniEngine kp_engine_, ki_engine_, kd_engine_;
};

// ---------------------------------------------------------------------
// Variable-universe fuzzy controller for walking stability.

struct VufcState {
  double e_span = 0.12;    // E0, base ZMPe universe half-span [m]
  double ec_span = 0.06;   // EC0, base ZMPec half-span [m/s]
  double y_span = 0.35;    // Y0, desired-displacement half-span [m]
  double zeta = 1.0;       // current scaling factor for ZMPe
  double xi = 1.0;         // for ZMPec
  double gamma = 1.0;      // for yd
};

class VufcController {
 public:
  explicit VufcController(const VufcState& initial = {});

  // Scaling-factor inference (Table 4); level in 1..5 mapped to
  // (level-1)/4 on [0,1]. Updates and returns (zeta, xi, gamma).
  struct Factors {
    double zeta, xi, gamma;
  };
  Factors scale_universes(int level);

  // Basis controller (Table 3) on the scaled universes; returns the
  // desired slider displacement yd.
  double step(double zmpe, double zmpec, int level);

  VufcState& state() { return state_; }
  const VufcState& state() const { return state_; }

 private:
  VufcState state_;
  MamdaniEngine basis_;
  MamdaniEngine1d scaler_;
};

}  // namespace udv

#endif  // UDV_FUZZY_HPP_
