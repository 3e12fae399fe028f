#ifndef UDV_CONFIG_HPP_
#define UDV_CONFIG_HPP_

#include "udv/gait.hpp"
#include "udv/harness.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace udv {

/**
 * Run configuration parsed from a JSON file. Every key is optional and
 * documented by its default here; unknown keys anywhere in the tree are
 * rejected with their path. Parse and validation failures throw
 * ConfigError with a line-numbered message.
 */
struct RunConfig {
  struct Scenario {
    std::string kind = "steering";       // steering | walking
    double duration = 0.0;               // 0 = kind default (5 s / 6 s)
    double control_rate = 1000.0;        // [Hz]
    std::string controller;              // empty = kind default
    std::uint64_t seed = 1;
  } scenario;

  struct Plant {
    double b0 = 0.08;
    double travel_x = 0.35;
    double travel_y = 0.25;
  } plant;

  struct Vehicle {
    double k_desired = 0.0024;
    double speed = 10.0;  // [m/s]
  } vehicle;

  GaitParams gait;

  struct Adrc {
    double omega_o_x = 1000.0;
    double omega_c_x = 200.0;
    double omega_o_y = 1200.0;
    double omega_c_y = 250.0;
    double speed_factor = 50.0;  // TD r
  } adrc;

  struct Grader {
    std::string model_file;  // empty = built-in Table-1 centers
    int samples = 10000;
    double noise_amplitude = 1.0;
  } grader;

  std::string output_dir = ".";
  DisturbanceSchedule disturbances;
  bool disturbances_given = false;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses JSON text; `source` names the file in diagnostics.
RunConfig parse_config(const std::string& text,
                       const std::string& source = "<config>");
RunConfig load_config_file(const std::string& path);

}  // namespace udv

#endif  // UDV_CONFIG_HPP_
