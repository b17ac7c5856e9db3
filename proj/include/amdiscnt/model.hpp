#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace amdiscnt {

/// Thrown when a NetworkConfig (or a part of it) violates its invariants.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Position {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Position&) const = default;
};

/// Inner disk (T1) or one of the eight pi/4 sectors of the annulus.
struct RegionId {
  static constexpr int kInner = -1;
  static constexpr int kSectors = 8;

  int sector = kInner;

  static RegionId inner() { return RegionId{kInner}; }
  static RegionId outer(int s) { return RegionId{s}; }

  bool is_inner() const { return sector == kInner; }
  bool operator==(const RegionId&) const = default;
  auto operator<=>(const RegionId&) const = default;
};

std::string to_string(RegionId r);

struct Geometry {
  double r_inner = 20.0;
  double r_outer = 35.0;

  double annulus_width() const { return r_outer - r_inner; }
  bool operator==(const Geometry&) const = default;
};

/// First-order radio constants. Units: J/bit, J/bit/m^2, J/bit/m^4, J/bit/signal.
struct RadioParams {
  double e_elec = 50e-9;
  double e_fs = 10e-12;
  double e_mp = 0.0013e-12;
  double e_da = 5e-9;
  std::uint32_t packet_bits = 4000;

  bool operator==(const RadioParams&) const = default;
};

struct Homogeneous {
  bool operator==(const Homogeneous&) const = default;
};
struct TwoLevel {
  double m = 0.2;
  double alpha = 1.0;
  bool operator==(const TwoLevel&) const = default;
};
struct ThreeLevel {
  double m = 0.2;
  double m0 = 0.5;
  double alpha = 1.0;
  double beta = 2.0;
  bool operator==(const ThreeLevel&) const = default;
};
struct MultiLevel {
  double alpha_max = 1.0;
  bool operator==(const MultiLevel&) const = default;
};

using HeterogeneityMode = std::variant<Homogeneous, TwoLevel, ThreeLevel, MultiLevel>;

struct HeterogeneitySpec {
  HeterogeneityMode mode = TwoLevel{};
  double e0 = 0.5;

  bool operator==(const HeterogeneitySpec&) const = default;
};

struct Node {
  int id = 0;
  Position position;
  RegionId region;
  double initial_energy = 0.0;
  double residual_energy = 0.0;
  bool alive = true;
  // t * alpha applied at energy assignment; 0 for normal nodes.
  double tier_scale = 0.0;

  bool operator==(const Node&) const = default;
};

enum class DeploymentMode { LiteralPaper, UniformByArea };

struct HopCountDelay {
  bool operator==(const HopCountDelay&) const = default;
};
struct DistanceProportionalDelay {
  double speed = 1.0;   // meters per delay unit
  double per_hop = 0.0; // delay units added per hop
  bool operator==(const DistanceProportionalDelay&) const = default;
};
using DelayMode = std::variant<HopCountDelay, DistanceProportionalDelay>;

struct NetworkConfig {
  int n_nodes = 100;
  Geometry geometry;
  RadioParams radio;
  HeterogeneitySpec heterogeneity;
  int max_rounds = 5000;
  std::uint64_t seed = 42;
  DeploymentMode deployment_mode = DeploymentMode::UniformByArea;
  double inner_fraction = 1.0 / 9.0;
  double link_drop_probability = 0.0;
  DelayMode delay_mode = HopCountDelay{};

  bool operator==(const NetworkConfig&) const = default;
};

/// Every violated invariant, one human-readable line each. Empty iff valid.
std::vector<std::string> validate_config(const NetworkConfig& config);

/// Throws ConfigError listing all violations when the config is invalid.
void require_valid(const NetworkConfig& config);

} // namespace amdiscnt
