#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <Eigen/Cholesky>

namespace eqr::cli {

using nlohmann::json;

namespace {

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json& obj, const std::string& prefix, const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) throw ConfigError(join(prefix, key), "unknown key");
  }
}

const json& object_at(const json& doc, const std::string& key, const std::string& path) {
  const json& obj = doc.at(key);
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  return obj;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

double positive(const json& v, const std::string& path) {
  const double x = number(v, path);
  if (!(x > 0.0)) throw ConfigError(path, "must be positive");
  return x;
}

double non_negative(const json& v, const std::string& path) {
  const double x = number(v, path);
  if (!(x >= 0.0)) throw ConfigError(path, "must be non-negative");
  return x;
}

Mat3 weight_block(const json& v, const std::string& path) {
  Mat3 m = Mat3::Zero();
  if (v.is_number()) {
    m = number(v, path) * Mat3::Identity();
  } else if (v.is_array() && v.size() == 3 && v[0].is_number()) {
    for (int i = 0; i < 3; ++i) m(i, i) = number(v[i], path);
  } else if (v.is_array() && v.size() == 3) {
    for (int i = 0; i < 3; ++i) {
      if (!v[i].is_array() || v[i].size() != 3) throw ConfigError(path, "expected a 3x3 array");
      for (int j = 0; j < 3; ++j) m(i, j) = number(v[i][j], path);
    }
  } else {
    throw ConfigError(path, "expected a number, a 3-vector or a 3x3 array");
  }
  Eigen::LLT<Mat3> llt(m);
  if ((m - m.transpose()).norm() > 0.0 || llt.info() != Eigen::Success) {
    throw ConfigError(path, "must be symmetric positive definite");
  }
  return m;
}

json weight_to_json(const Mat3& m) {
  if (m == m(0, 0) * Mat3::Identity()) return m(0, 0);
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
  return rows;
}

}  // namespace

SimConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "configuration must be a JSON object");
  reject_unknown(doc, "",
                 {"dt", "duration", "trajectory", "symmetries", "trials", "seed", "init_std", "process_std", "lqr",
                  "phys", "clamp_thrust"});
  SimConfig cfg;

  if (doc.contains("dt")) cfg.dt = positive(doc["dt"], "dt");
  if (doc.contains("duration")) cfg.duration = positive(doc["duration"], "duration");
  if (doc.contains("trajectory")) {
    const json& v = doc["trajectory"];
    const auto kind = v.is_string() ? parse_trajectory(v.get<std::string>()) : std::nullopt;
    if (!kind) throw ConfigError("trajectory", "expected \"hover\" or \"lissajous\"");
    cfg.trajectory = *kind;
  }
  if (doc.contains("symmetries")) {
    const json& v = doc["symmetries"];
    if (v.is_string() && v.get<std::string>() == "all") {
      cfg.symmetries.assign(kAllSymmetries.begin(), kAllSymmetries.end());
    } else if (v.is_array() && !v.empty()) {
      cfg.symmetries.clear();
      for (const json& item : v) {
        const auto s = item.is_string() ? parse_symmetry(item.get<std::string>()) : std::nullopt;
        if (!s) throw ConfigError("symmetries", "expected labels from {dp, se23, se3r3}");
        cfg.symmetries.push_back(*s);
      }
    } else {
      throw ConfigError("symmetries", "expected \"all\" or a non-empty array of labels");
    }
  }
  if (doc.contains("trials")) {
    const json& v = doc["trials"];
    if (!v.is_number_integer() || v.get<long long>() < 1) throw ConfigError("trials", "must be a positive integer");
    cfg.trials = v.get<int>();
  }
  if (doc.contains("seed")) {
    const json& v = doc["seed"];
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ConfigError("seed", "must be a non-negative integer");
    }
    cfg.seed = v.get<std::uint64_t>();
  }
  if (doc.contains("init_std")) {
    const json& obj = object_at(doc, "init_std", "init_std");
    reject_unknown(obj, "init_std", {"rot", "pos", "vel"});
    if (obj.contains("rot")) cfg.init_std.rot = non_negative(obj["rot"], "init_std.rot");
    if (obj.contains("pos")) cfg.init_std.pos = non_negative(obj["pos"], "init_std.pos");
    if (obj.contains("vel")) cfg.init_std.vel = non_negative(obj["vel"], "init_std.vel");
  }
  if (doc.contains("process_std")) cfg.process_std = non_negative(doc["process_std"], "process_std");
  if (doc.contains("lqr")) {
    const json& obj = object_at(doc, "lqr", "lqr");
    reject_unknown(obj, "lqr", {"q_r", "q_x", "q_v", "r_omega", "r_thrust"});
    if (obj.contains("q_r")) cfg.lqr.q_rot = weight_block(obj["q_r"], "lqr.q_r");
    if (obj.contains("q_x")) cfg.lqr.q_pos = weight_block(obj["q_x"], "lqr.q_x");
    if (obj.contains("q_v")) cfg.lqr.q_vel = weight_block(obj["q_v"], "lqr.q_v");
    if (obj.contains("r_omega")) cfg.lqr.r_omega = weight_block(obj["r_omega"], "lqr.r_omega");
    if (obj.contains("r_thrust")) cfg.lqr.r_thrust = positive(obj["r_thrust"], "lqr.r_thrust");
  }
  if (doc.contains("phys")) {
    const json& obj = object_at(doc, "phys", "phys");
    reject_unknown(obj, "phys", {"mass", "gravity", "c1"});
    if (obj.contains("mass")) cfg.phys.mass = positive(obj["mass"], "phys.mass");
    if (obj.contains("gravity")) cfg.phys.gravity = positive(obj["gravity"], "phys.gravity");
    if (obj.contains("c1")) cfg.phys.drag = non_negative(obj["c1"], "phys.c1");
  }
  if (doc.contains("clamp_thrust")) {
    if (!doc["clamp_thrust"].is_boolean()) throw ConfigError("clamp_thrust", "expected a boolean");
    cfg.clamp_thrust = doc["clamp_thrust"].get<bool>();
  }
  return cfg;
}

SimConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

SimConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

json config_to_json(const SimConfig& cfg) {
  json symmetries = json::array();
  for (Symmetry s : cfg.symmetries) symmetries.push_back(std::string(to_string(s)));
  return {
      {"dt", cfg.dt},
      {"duration", cfg.duration},
      {"trajectory", std::string(to_string(cfg.trajectory))},
      {"symmetries", symmetries},
      {"trials", cfg.trials},
      {"seed", cfg.seed},
      {"init_std", {{"rot", cfg.init_std.rot}, {"pos", cfg.init_std.pos}, {"vel", cfg.init_std.vel}}},
      {"process_std", cfg.process_std},
      {"lqr",
       {{"q_r", weight_to_json(cfg.lqr.q_rot)},
        {"q_x", weight_to_json(cfg.lqr.q_pos)},
        {"q_v", weight_to_json(cfg.lqr.q_vel)},
        {"r_omega", weight_to_json(cfg.lqr.r_omega)},
        {"r_thrust", cfg.lqr.r_thrust}}},
      {"phys", {{"mass", cfg.phys.mass}, {"gravity", cfg.phys.gravity}, {"c1", cfg.phys.drag}}},
      {"clamp_thrust", cfg.clamp_thrust},
  };
}

}  // namespace eqr::cli
