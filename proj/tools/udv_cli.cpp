// Command-line front end: scenario execution, grader training, gain
// computation, and CSV export.
//
// Exit codes: 0 success, 1 usage/config error, 2 physical limit or
// instability detected (slider saturation, tip-over).

#include "udv/adrc.hpp"
#include "udv/config.hpp"
#include "udv/csv.hpp"
#include "udv/fuzzy.hpp"
#include "udv/gait.hpp"
#include "udv/grader.hpp"
#include "udv/harness.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

using namespace udv;

std::string output_dir(const RunConfig& cfg, const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("UDV_OUTPUT_DIR")) return env;
  return cfg.output_dir;
}

std::string fmt(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", *v);
  return buf;
}

void print_steering_metrics(const std::string& name, const Metrics& m) {
  std::printf("%-10s overshoot %-8s rise %-8s settle %-8s ss-err %-8s\n",
              name.c_str(), fmt(m.overshoot_pct).c_str(),
              fmt(m.rise_time).c_str(), fmt(m.settling_time).c_str(),
              fmt(m.steady_state_error_pct).c_str());
}

int cmd_steer(const RunConfig& cfg, const std::string& controller,
              const std::string& out_flag) {
  const std::string dir = output_dir(cfg, out_flag);
  std::filesystem::create_directories(dir);

  std::vector<std::pair<std::string, SteeringVariant>> variants;
  if (controller == "all" || controller.empty()) {
    variants = {{"pid", SteeringVariant::kPid},
                {"fuzzy-pid", SteeringVariant::kFuzzyPid}};
  } else if (controller == "none") {
    variants = {{"none", SteeringVariant::kNone}};
  } else if (controller == "pid") {
    variants = {{"pid", SteeringVariant::kPid}};
  } else if (controller == "fuzzy-pid") {
    variants = {{"fuzzy-pid", SteeringVariant::kFuzzyPid}};
  } else {
    std::cerr << "steer: unknown controller '" << controller << "'\n";
    return 1;
  }

  bool saturated = false;
  std::printf("steering scenario: Kd = %g, %.3g s at %g Hz\n",
              cfg.vehicle.k_desired,
              cfg.scenario.duration > 0.0 ? cfg.scenario.duration : 5.0,
              cfg.scenario.control_rate);
  for (const auto& [name, variant] : variants) {
    SteeringScenario scenario;
    scenario.variant = variant;
    if (cfg.scenario.duration > 0.0) scenario.duration = cfg.scenario.duration;
    scenario.control_rate = cfg.scenario.control_rate;
    scenario.k_desired = cfg.vehicle.k_desired;
    scenario.speed = cfg.vehicle.speed;
    scenario.seed = cfg.scenario.seed;
    if (cfg.disturbances_given) scenario.disturbances = cfg.disturbances;

    const SteeringResult result = run_steering(scenario);
    write_steering_trace(result, dir + "/steer_" + name + ".csv");
    print_steering_metrics(name, result.metrics);
    std::printf("%-10s final slider %.4f m (reference move 0.289 m)\n",
                "", result.final_slider);
    saturated = saturated || result.saturated;
  }
  return saturated ? 2 : 0;
}

int cmd_walk(const RunConfig& cfg, const std::string& controller,
             const std::string& out_flag) {
  const std::string dir = output_dir(cfg, out_flag);
  std::filesystem::create_directories(dir);

  GraderModel model{builtin_model(Axis::kX), builtin_model(Axis::kY)};
  if (!cfg.grader.model_file.empty())
    model = load_model_file(cfg.grader.model_file);

  std::vector<std::pair<std::string, WalkingVariant>> variants;
  if (controller == "all" || controller.empty()) {
    variants = {{"pid", WalkingVariant::kPid},
                {"vufc-adrc", WalkingVariant::kVufcAdrc},
                {"vufc-adrc-grading", WalkingVariant::kVufcAdrcGraded}};
  } else if (controller == "pid") {
    variants = {{"pid", WalkingVariant::kPid}};
  } else if (controller == "vufc-adrc") {
    variants = {{"vufc-adrc", WalkingVariant::kVufcAdrc}};
  } else if (controller == "vufc-adrc-grading") {
    variants = {{"vufc-adrc-grading", WalkingVariant::kVufcAdrcGraded}};
  } else {
    std::cerr << "walk: unknown controller '" << controller << "'\n";
    return 1;
  }

  bool tipped = false;
  for (const auto& [name, variant] : variants) {
    WalkingScenario scenario;
    scenario.variant = variant;
    if (cfg.scenario.duration > 0.0) scenario.duration = cfg.scenario.duration;
    scenario.control_rate = cfg.scenario.control_rate;
    scenario.seed = cfg.scenario.seed;
    scenario.gait = cfg.gait;
    scenario.grader = model;
    if (cfg.disturbances_given) {
      scenario.disturbances = cfg.disturbances;
      scenario.use_default_disturbances = false;
    }

    const WalkingResult result = run_walking(scenario);
    write_walking_trace(result, dir + "/walk_" + name + ".csv");
    std::printf(
        "%-18s max-err X %.4f m, Y %.4f m, switch-peak %.4f m, "
        "ss-err %.5f m, levels<=3 %.1f%%%s\n",
        name.c_str(), result.max_error_x, result.max_error_y,
        result.switch_overshoot, result.steady_state_error,
        100.0 * result.level_le3_fraction,
        result.tipped ? "  [TIP-OVER]" : "");
    tipped = tipped || result.tipped;
  }
  return tipped ? 2 : 0;
}

int cmd_train_grader(const RunConfig& cfg, const std::string& out_file) {
  GraderModel model;
  for (Axis axis : {Axis::kX, Axis::kY}) {
    const auto dataset =
        generate_dataset(axis, cfg.grader.samples, cfg.scenario.seed,
                         cfg.grader.noise_amplitude);
    ClusterModel trained = kmeans_train(dataset, cfg.scenario.seed);
    const ClusterModel reference = builtin_model(axis);
    (axis == Axis::kX ? model.x : model.y) = trained;

    std::printf("%s-axis centers (trained vs shipped):\n",
                axis == Axis::kX ? "X" : "Y");
    for (int c = 0; c < 5; ++c)
      std::printf("  L%d  (%.4f, %.4f)   (%.4f, %.4f)\n", c + 1,
                  trained.centers[c].zmpe, trained.centers[c].zmpec,
                  reference.centers[c].zmpe, reference.centers[c].zmpec);
  }
  save_model_file(model, out_file);
  std::printf("model written to %s\n", out_file.c_str());
  return 0;
}

int cmd_gains(double omega_o, double omega_c) {
  const auto [p1, p2, p3] = eso_gains(omega_o);
  const SefGains sef{omega_c};
  std::printf("phi1 = %g\nphi2 = %g\nphi3 = %g\nkp = %g\nkd = %g\n", p1, p2,
              p3, sef.kp(), sef.kd());
  return 0;
}

void export_rule_table(const std::string& path, const RuleTable& rules) {
  const FuzzyPartition seven = FuzzyPartition::seven(-1.0, 1.0);
  CsvWriter csv(path);
  std::vector<std::string> head = {""};
  for (std::size_t j = 0; j < seven.size(); ++j)
    head.push_back(seven.label(j));
  csv.header(head);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    std::vector<std::string> row = {seven.label(i)};
    for (int c : rules[i])
      row.push_back(seven.label(static_cast<std::size_t>(c)));
    csv.row(row);
  }
}

int cmd_export(const RunConfig& cfg, const std::string& what,
               const std::string& out_flag) {
  const std::string dir = output_dir(cfg, out_flag);
  std::filesystem::create_directories(dir);

  if (what == "gait" || what == "all") {
    const GaitParams& gait = cfg.gait;
    CsvWriter hip(dir + "/gait_hip.csv");
    hip.header({"t", "x", "y", "z"});
    CsvWriter feet(dir + "/gait_feet.csv");
    feet.header({"t", "right_x", "right_z", "left_x", "left_z"});
    CsvWriter zmp(dir + "/gait_zmpd.csv");
    zmp.header({"t", "zmpd_x", "zmpd_y"});
    const FootPlan plan = make_foot_plan(gait);
    const double duration =
        cfg.scenario.duration > 0.0 ? cfg.scenario.duration : gait.cycle();
    for (double t = 0.0; t <= duration; t += gait.sample_dt) {
      const HipState h = hip_at(gait, t);
      hip.row({t, h.x, h.y, h.z});
      const FeetState f = feet_at(gait, t);
      feet.row({t, f.right_x, f.right_z, f.left_x, f.left_z});
      const ZmpReference r = desired_zmp(gait, plan, t);
      zmp.row({t, r.x, r.y});
    }
    CsvWriter joints(dir + "/gait_joints.csv");
    joints.header({"t", "theta1", "theta2", "theta3", "theta4", "theta5",
                   "theta6"});
    for (const auto& s : joint_trajectories(gait, duration))
      joints.row({s.t, s.theta[0], s.theta[1], s.theta[2], s.theta[3],
                  s.theta[4], s.theta[5]});
  }
  if (what == "tables" || what == "all") {
    export_rule_table(dir + "/rules_delta_kp.csv", rules_delta_kp());
    export_rule_table(dir + "/rules_delta_ki.csv", rules_delta_ki());
    export_rule_table(dir + "/rules_delta_kd.csv", rules_delta_kd());
    export_rule_table(dir + "/rules_basis.csv", rules_basis_controller());
  }
  if (what == "model" || what == "all") {
    GraderModel model{builtin_model(Axis::kX), builtin_model(Axis::kY)};
    save_model_file(model, dir + "/grader_model.txt");
  }
  if (what != "gait" && what != "tables" && what != "model" &&
      what != "all") {
    std::cerr << "export: unknown target '" << what
              << "' (gait|tables|model|all)\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"COM-adjustment stability control toolkit"};
  app.require_subcommand(1);

  std::string config_path, controller, out_dir;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--output-dir", out_dir,
                    "output directory (env UDV_OUTPUT_DIR overrides config)");
  };

  double duration = 0.0;
  std::uint64_t seed = 0;
  bool seed_set = false, duration_set = false;

  auto* steer = app.add_subcommand("steer", "steering stability scenario");
  add_common(steer);
  steer->add_option("--controller", controller,
                    "none | pid | fuzzy-pid | all (default all)");
  steer->add_option("--duration", duration, "simulated seconds")
      ->each([&](const std::string&) { duration_set = true; });
  steer->add_option("--seed", seed, "disturbance RNG seed")
      ->each([&](const std::string&) { seed_set = true; });

  auto* walk = app.add_subcommand("walk", "walking stability scenario");
  add_common(walk);
  walk->add_option("--controller", controller,
                   "pid | vufc-adrc | vufc-adrc-grading | all (default all)");
  walk->add_option("--duration", duration, "simulated seconds")
      ->each([&](const std::string&) { duration_set = true; });
  walk->add_option("--seed", seed, "disturbance RNG seed")
      ->each([&](const std::string&) { seed_set = true; });

  auto* train = app.add_subcommand("train-grader",
                                   "k-means training of the stability grader");
  add_common(train);
  int samples = 0;
  std::string model_out = "grader_model.txt";
  train->add_option("--samples", samples, "dataset size per axis");
  train->add_option("--seed", seed, "dataset + k-means seed")
      ->each([&](const std::string&) { seed_set = true; });
  train->add_option("--output", model_out, "model file path");

  auto* gains = app.add_subcommand("gains", "print ESO/SEF gain sets");
  double omega_o = 1000.0, omega_c = 200.0;
  gains->add_option("omega_o", omega_o, "observer bandwidth [rad/s]");
  gains->add_option("omega_c", omega_c, "controller bandwidth [rad/s]");

  auto* exp = app.add_subcommand("export", "export trajectories and tables");
  add_common(exp);
  std::string what = "all";
  exp->add_option("--what", what, "gait | tables | model | all");
  exp->add_option("--duration", duration, "gait export span [s]")
      ->each([&](const std::string&) { duration_set = true; });

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config_file(config_path);
    if (duration_set) cfg.scenario.duration = duration;
    if (seed_set) cfg.scenario.seed = seed;
    if (samples > 0) cfg.grader.samples = samples;

    if (steer->parsed()) return cmd_steer(cfg, controller, out_dir);
    if (walk->parsed()) return cmd_walk(cfg, controller, out_dir);
    if (train->parsed()) return cmd_train_grader(cfg, model_out);
    if (gains->parsed()) return cmd_gains(omega_o, omega_c);
    if (exp->parsed()) return cmd_export(cfg, what, out_dir);
  } catch (const udv::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
