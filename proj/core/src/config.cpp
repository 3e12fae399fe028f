#include "udv/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace udv {

namespace {

using nlohmann::json;

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

class Section {
 public:
  Section(const json& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object())
      throw ConfigError(path_ + ": expected an object");
  }

  ~Section() = default;

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    const auto it = node_.find(key);
    if (it == node_.end()) return;
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      throw ConfigError(path_ + "." + key + ": wrong value type");
    }
  }

  bool has(const char* key) {
    return node_.contains(key);
  }

  const json& child(const char* key) {
    seen_.insert(key);
    return node_.at(key);
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it)
      if (!seen_.count(it.key()))
        throw ConfigError("unknown key: " + path_ + "." + it.key());
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

DisturbanceEvent parse_event(const json& node, const std::string& path) {
  Section s(node, path);
  std::string kind = "step";
  DisturbanceEvent e;
  s.get("kind", kind);
  s.get("axis", e.axis);
  s.get("time", e.time);
  s.get("magnitude", e.magnitude);
  s.get("duration", e.duration);
  s.finish();
  if (kind == "step")
    e.kind = DisturbanceEvent::Kind::kStep;
  else if (kind == "impulse")
    e.kind = DisturbanceEvent::Kind::kImpulse;
  else if (kind == "noise")
    e.kind = DisturbanceEvent::Kind::kNoise;
  else
    throw ConfigError(path + ".kind: unknown disturbance kind '" + kind +
                      "'");
  if (e.axis < 0 || e.axis > 1)
    throw ConfigError(path + ".axis: must be 0 (X) or 1 (Y)");
  return e;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& err) {
    std::ostringstream msg;
    msg << source << ":" << line_of_offset(text, err.byte)
        << ": " << err.what();
    throw ConfigError(msg.str());
  }

  RunConfig cfg;
  Section top(root, source);

  if (top.has("scenario")) {
    Section s(top.child("scenario"), source + ".scenario");
    s.get("kind", cfg.scenario.kind);
    s.get("duration", cfg.scenario.duration);
    s.get("control_rate", cfg.scenario.control_rate);
    s.get("controller", cfg.scenario.controller);
    s.get("seed", cfg.scenario.seed);
    s.finish();
    if (cfg.scenario.kind != "steering" && cfg.scenario.kind != "walking")
      throw ConfigError(source +
                        ".scenario.kind: must be 'steering' or 'walking'");
    if (cfg.scenario.duration < 0.0)
      throw ConfigError(source + ".scenario.duration: must be >= 0");
    if (cfg.scenario.control_rate < 100.0)
      throw ConfigError(source + ".scenario.control_rate: must be >= 100");
  }
  if (top.has("plant")) {
    Section s(top.child("plant"), source + ".plant");
    s.get("b0", cfg.plant.b0);
    s.get("travel_x", cfg.plant.travel_x);
    s.get("travel_y", cfg.plant.travel_y);
    s.finish();
  }
  if (top.has("vehicle")) {
    Section s(top.child("vehicle"), source + ".vehicle");
    s.get("k_desired", cfg.vehicle.k_desired);
    s.get("speed", cfg.vehicle.speed);
    s.finish();
  }
  if (top.has("gait")) {
    Section s(top.child("gait"), source + ".gait");
    s.get("com_height", cfg.gait.com_height);
    s.get("stride_length", cfg.gait.stride_length);
    s.get("step_height", cfg.gait.step_height);
    s.get("single_support", cfg.gait.single_support);
    s.get("double_support", cfg.gait.double_support);
    s.get("stance_width", cfg.gait.stance_width);
    s.finish();
    cfg.gait.validate();
  }
  if (top.has("adrc")) {
    Section s(top.child("adrc"), source + ".adrc");
    s.get("omega_o_x", cfg.adrc.omega_o_x);
    s.get("omega_c_x", cfg.adrc.omega_c_x);
    s.get("omega_o_y", cfg.adrc.omega_o_y);
    s.get("omega_c_y", cfg.adrc.omega_c_y);
    s.get("speed_factor", cfg.adrc.speed_factor);
    s.finish();
  }
  if (top.has("grader")) {
    Section s(top.child("grader"), source + ".grader");
    s.get("model_file", cfg.grader.model_file);
    s.get("samples", cfg.grader.samples);
    s.get("noise_amplitude", cfg.grader.noise_amplitude);
    s.finish();
  }
  top.get("output_dir", cfg.output_dir);
  if (top.has("disturbances")) {
    const json& list = top.child("disturbances");
    if (!list.is_array())
      throw ConfigError(source + ".disturbances: expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::ostringstream path;
      path << source << ".disturbances[" << i << "]";
      cfg.disturbances.events.push_back(parse_event(list[i], path.str()));
    }
    cfg.disturbances_given = true;
  }
  top.finish();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace udv
