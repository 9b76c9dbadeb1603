#pragma once

#include "kerrlab/multipliers.hpp"
#include "kerrlab/radial_wave.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kerrlab::cli {

// Malformed or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All lengths and frequencies are in units of m; m itself is only recorded.
struct RunConfig {
  int schema = 1;
  double mass = 1.0;
  double spin = 0.0;
  std::uint64_t seed = 1;
  unsigned workers = 0;

  std::optional<double> delta_H, delta_BL, delta_F, theta;
  double R = 20.0;

  int geometry_samples = 10000;
  int potential_samples = 100000;
  int derivative_samples = 10000;
  int superradiance_samples = 100000;
  int symbol_samples = 10000;
  long cover_samples = 1000000;
  int fit_samples = 20000;

  CertGrid grid;
  int boundary_alpha = 64, boundary_beta = 64;
  std::optional<MultiplierConstants> multipliers;

  std::vector<FrequencyTriplet> scan_xi{{0.0, 0.0, 1.0}};
  std::optional<double> scan_r_from;
  double scan_r_to = 20.0;
  int scan_points = 400;

  ModeSpec mode{0, 1.4142135623730951};
  WaveGrid wave_grid;
  double T_final = 200.0;
  BoundaryKind boundary = BoundaryKind::Absorbing;
  int record_every = 10;
  GaussianPacket packet{20.0, 3.0, 0.4, -1, 1.0};
  std::vector<GaussianPacket> packets;
  std::vector<double> omegas;
};

// Throws ConfigError on unknown keys, wrong types or out-of-range values.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

nlohmann::ordered_json to_json(const RunConfig& cfg);

}  // namespace kerrlab::cli
