#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amdiscnt/model.hpp"
#include "amdiscnt/protocols.hpp"

namespace amdiscnt {

/// Malformed text or an unknown/invalid key. Syntax errors carry a line number.
class ConfigParseError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

struct ExperimentSpec {
  std::vector<ProtocolKind> protocols{AmDiscnt{}, Leach{}, Deec{}};
  std::vector<std::uint64_t> seeds{42, 43, 44, 45, 46};
  double confidence = 0.95;

  bool operator==(const ExperimentSpec&) const = default;
};

struct ExperimentConfig {
  NetworkConfig network;
  ExperimentSpec experiment;

  bool operator==(const ExperimentConfig&) const = default;
};

/// "table1" (N=100, E0=0.5 J, R1=20, R2=35) or "table2" (N=100, E0=0.8 J, R1=25, R2=40).
NetworkConfig preset_config(std::string_view name);

/// base, base+1, ..., base+runs-1
std::vector<std::uint64_t> seed_range(std::uint64_t base, int runs);

/// Sectioned key-value text ([network], [radio], [heterogeneity], [delay],
/// [experiment]). Unspecified keys keep the preset's values; the preset is
/// `preset_override` if given, else [experiment] preset, else table1.
/// The result is validated; violations are reported verbatim.
ExperimentConfig parse_config_text(const std::string& text, std::optional<std::string> preset_override = {},
                                   const std::string& source = "<config>");
ExperimentConfig parse_config(const std::filesystem::path& path, std::optional<std::string> preset_override = {});

/// "amdiscnt,leach" -> kinds; duplicates rejected. Throws ConfigParseError.
std::vector<ProtocolKind> parse_protocol_list(const std::string& list, double p_opt);
/// "1,2,3" -> seeds. Throws ConfigParseError.
std::vector<std::uint64_t> parse_seed_list(const std::string& list);

/// Emits every key, so parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// Shortest decimal representation that round-trips to the same double.
std::string format_number(double v);
/// Strict full-string parse; throws std::invalid_argument.
double parse_number(std::string_view s);

std::string deployment_mode_name(DeploymentMode m);
std::string delay_mode_name(const DelayMode& m);

} // namespace amdiscnt
