#include "udv/fuzzy.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace udv;

namespace {

enum : int { NB = 0, NM = 1, NS = 2, ZO = 3, PS = 4, PM = 5, PB = 6 };
enum : int { VS = 0, S = 1, M = 2, B = 3, VB = 4 };

// Published Fuzzy-PID rule grid, transcribed in its printed layout:
// rows are Kec = NB..PB, columns are Ke = NB..PB, each cell
// dkp/dki/dkd. The shipped tables are indexed [Ke][Kec], i.e. the
// transpose of this layout.
struct Cell {
  int kp, ki, kd;
};
constexpr Cell kPidRules[7][7] = {
    // Kec = NB
    {{PB, NB, PS}, {PB, NB, NS}, {PM, NM, NS}, {PM, NM, NS},
     {PS, NS, NM}, {PS, ZO, NM}, {ZO, ZO, PM}},
    // Kec = NM
    {{PB, NB, PS}, {PB, NB, NS}, {PM, NM, NS}, {PM, NM, NM},
     {PS, NS, NM}, {ZO, ZO, NS}, {ZO, ZO, ZO}},
    // Kec = NS
    {{PM, NB, ZO}, {PM, NM, NS}, {PS, NS, NM}, {PS, NS, NM},
     {ZO, ZO, NM}, {NS, PM, NS}, {NS, PS, ZO}},
    // Kec = ZE
    {{PM, NM, ZO}, {PM, NM, NB}, {PS, NS, NS}, {ZO, ZO, NS},
     {NS, PS, PS}, {NM, PM, NS}, {NM, PS, ZO}},
    // Kec = PS
    {{PS, NM, ZO}, {PS, NS, ZO}, {ZO, ZO, ZO}, {NS, PS, ZO},
     {NS, ZO, PS}, {NM, PM, ZO}, {NM, PB, PM}},
    // Kec = PM
    {{PS, ZO, PB}, {ZO, ZO, PS}, {NS, PS, PS}, {NM, PS, PS},
     {NM, PM, PS}, {NM, PB, PS}, {NB, PS, PB}},
    // Kec = PB
    {{ZO, ZO, PB}, {ZO, ZO, PM}, {NS, PS, PM}, {NM, PM, PM},
     {NM, PM, PS}, {NB, PB, PS}, {NB, PS, PB}},
};

// Published basis-controller grid in its printed layout: rows are
// ZMPe = NB..PB, columns are ZMPec = NB..PB (same orientation as the
// shipped table).
constexpr int kBasisRules[7][7] = {
    {PB, PB, PB, PM, PM, PS, PS},  // ZMPe = NB
    {PB, PB, PM, PM, PS, PS, PS},
    {PM, PM, PS, PS, PS, PS, PS},
    {PM, PS, PS, ZO, NS, NS, NM},
    {NS, NS, NM, NM, NM, NM, NB},
    {NS, NM, NM, NB, NB, NB, NB},
    {NS, NM, NB, NB, NB, NB, NB},  // ZMPe = PB
};

constexpr int kScalingRules[5] = {VS, S, M, B, VB};

}  // namespace

TEST_CASE("partition: uniform peaks and triangular memberships") {
  const FuzzyPartition p = FuzzyPartition::seven(-1.0, 1.0);
  REQUIRE(p.size() == 7);
  CHECK(p.spacing() == doctest::Approx(1.0 / 3.0));
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(p.peak(i) == doctest::Approx(-1.0 + i / 3.0));
    CHECK(p.membership(i, p.peak(i)) == doctest::Approx(1.0));
  }
  // Adjacent labels cross at one half.
  const double mid = 0.5 * (p.peak(2) + p.peak(3));
  CHECK(p.membership(2, mid) == doctest::Approx(0.5));
  CHECK(p.membership(3, mid) == doctest::Approx(0.5));
  // Interior memberships sum to 1.
  for (double x = -0.99; x < 0.99; x += 0.0137) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 7; ++i) sum += p.membership(i, x);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Inputs are clamped to the universe.
  CHECK(p.membership(6, 5.0) == doctest::Approx(1.0));
  CHECK(p.membership(0, -5.0) == doctest::Approx(1.0));
}

TEST_CASE("partition: label lookup with ZE/ZO aliasing") {
  const FuzzyPartition p = FuzzyPartition::seven(-1.0, 1.0);
  CHECK(p.index_of("NB") == 0);
  CHECK(p.index_of("ZO") == 3);
  CHECK(p.index_of("ZE") == 3);
  CHECK(p.index_of("PB") == 6);
  CHECK(p.index_of("??") == -1);
  const FuzzyPartition m = FuzzyPartition::five_magnitude(0.5, 1.5);
  CHECK(m.index_of("VS") == 0);
  CHECK(m.index_of("VB") == 4);
  CHECK(m.peak(2) == doctest::Approx(1.0));
}

TEST_CASE("mamdani: single active rule reproduces its consequent peak") {
  MamdaniEngine engine(FuzzyPartition::seven(-1.0, 1.0),
                       FuzzyPartition::seven(-1.0, 1.0),
                       FuzzyPartition::seven(-15.0, 15.0), rules_delta_kp());
  // At exact input peaks only one rule fires with membership 1; the
  // centroid of a full triangle sits at its peak (edge triangles at the
  // universe bound by construction).
  const auto& in1 = engine.input1();
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      const double out = engine.infer(in1.peak(i), engine.input2().peak(j));
      const double want = engine.output().peak(rules_delta_kp()[i][j]);
      CHECK(out == doctest::Approx(want).epsilon(1e-6));
    }
  }
}

TEST_CASE("mamdani: output is bounded by the universe and continuous") {
  MamdaniEngine engine(FuzzyPartition::seven(-1.0, 1.0),
                       FuzzyPartition::seven(-1.0, 1.0),
                       FuzzyPartition::seven(-1.0, 1.0),
                       rules_basis_controller());
  double prev = engine.infer(-1.0, 0.0);
  for (double x = -1.0; x <= 1.0; x += 0.004) {
    const double y = engine.infer(x, 0.3);
    CHECK(y <= 1.0 + 1e-12);
    CHECK(y >= -1.0 - 1e-12);
    CHECK(std::abs(y - prev) < 0.05);  // no jumps on a fine sweep
    prev = y;
  }
}

TEST_CASE("rule tables: all 49 Fuzzy-PID cells match the published grid") {
  const RuleTable& kp = rules_delta_kp();
  const RuleTable& ki = rules_delta_ki();
  const RuleTable& kd = rules_delta_kd();
  REQUIRE(kp.size() == 7);
  for (int ec = 0; ec < 7; ++ec) {
    for (int e = 0; e < 7; ++e) {
      // Shipped tables are [Ke][Kec]; the printed grid is [Kec][Ke].
      CHECK(kp[e][ec] == kPidRules[ec][e].kp);
      CHECK(ki[e][ec] == kPidRules[ec][e].ki);
      CHECK(kd[e][ec] == kPidRules[ec][e].kd);
    }
  }
}

TEST_CASE("rule tables: all 49 basis-controller cells match") {
  const RuleTable& basis = rules_basis_controller();
  REQUIRE(basis.size() == 7);
  for (int e = 0; e < 7; ++e)
    for (int ec = 0; ec < 7; ++ec) CHECK(basis[e][ec] == kBasisRules[e][ec]);
}

TEST_CASE("rule tables: scaling-factor rows are the published identity") {
  const std::vector<int>& rules = rules_scaling_factor();
  REQUIRE(rules.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(rules[i] == kScalingRules[i]);
}

TEST_CASE("fuzzy PID: fixed-gain mode reduces to a plain PID") {
  FuzzyPidController c;
  c.state().adapt_gains = false;
  const double dt = 0.01;
  double integral = 0.0;
  for (double ke : {0.02, -0.03, 0.05, 0.0}) {
    const double kec = 0.5 * ke;
    const double got = c.step(ke, kec, dt);
    integral += c.state().ki0 * ke * dt;
    const double want = c.state().kp0 * ke + integral + c.state().kd0 * kec;
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("fuzzy PID: output clamps and the integrator freezes") {
  FuzzyPidController c;
  c.state().adapt_gains = false;
  const double before = c.state().integral;
  const double u = c.step(10.0, 0.0, 0.01);  // far beyond the universe
  CHECK(u == c.state().out_max);
  CHECK(c.state().integral == before);  // anti-windup froze the integral
}

TEST_CASE("fuzzy PID: adaptation boosts kp at large error, cuts near zero") {
  MamdaniEngine kp_engine(FuzzyPartition::seven(-0.1, 0.1),
                          FuzzyPartition::seven(-0.05, 0.05),
                          FuzzyPartition::seven(-15.0, 15.0),
                          rules_delta_kp());
  CHECK(kp_engine.infer(-0.1, 0.0) > 5.0);   // big deviation: raise kp
  CHECK(kp_engine.infer(0.1, 0.0) < -5.0);   // symmetric on the other side
  CHECK(kp_engine.infer(0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("vufc: level 3 is the neutral universe, 1 contracts, 5 expands") {
  VufcController c;
  const auto mid = c.scale_universes(3);
  CHECK(mid.zeta == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mid.xi == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mid.gamma == doctest::Approx(1.0).epsilon(1e-9));
  const auto lo = c.scale_universes(1);
  CHECK(lo.zeta == doctest::Approx(0.5).epsilon(1e-9));
  const auto hi = c.scale_universes(5);
  CHECK(hi.gamma == doctest::Approx(1.5).epsilon(1e-9));
  CHECK_THROWS(c.scale_universes(0));
  CHECK_THROWS(c.scale_universes(6));
}

TEST_CASE("vufc: output sign opposes the error and is span-bounded") {
  VufcController c;
  for (int level = 1; level <= 5; ++level) {
    const double up = c.step(0.06, 0.0, level);
    const double down = c.step(-0.06, 0.0, level);
    CHECK(up < 0.0);    // positive ZMP error pulls the slider back
    CHECK(down > 0.0);
    CHECK(std::abs(up) <= 1.5 * c.state().y_span + 1e-9);
  }
  CHECK(c.step(0.0, 0.0, 3) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("vufc: expansion at high level raises the large-error response") {
  VufcController c;
  // Past the plateau of the rule surface, a larger output factor gives a
  // strictly stronger correction for the same (large) error.
  const double at_l3 = std::abs(c.step(0.12, 0.0, 3));
  const double at_l5 = std::abs(c.step(0.12, 0.0, 5));
  CHECK(at_l5 > at_l3);
}
