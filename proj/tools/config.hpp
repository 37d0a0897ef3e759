#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "eqr/sim.hpp"

namespace eqr::cli {

/// Configuration problem tied to a dotted key path ("lqr.q_x", "dt", ...).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Recognised keys (all optional; defaults in parentheses):
///   dt (0.01), duration (pi), trajectory ("hover"), symmetries (all),
///   trials (2000), seed (1), init_std {rot 0.8, pos 0.6, vel 0.3},
///   process_std (0.1), lqr {q_r 1.0, q_x 2.0, q_v 0.1, r_omega 0.5,
///   r_thrust 0.5}, phys {mass 1.0, gravity 9.81, c1 0.25}, clamp_thrust (false).
/// LQR blocks accept a scalar (times I3), a 3-vector diagonal or a 3x3 array.
SimConfig parse_config(const nlohmann::json& doc);
SimConfig parse_config_text(std::string_view text);
SimConfig parse_config_file(const std::filesystem::path& path);

nlohmann::json config_to_json(const SimConfig& cfg);

}  // namespace eqr::cli
