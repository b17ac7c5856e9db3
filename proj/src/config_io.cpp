#include "amdiscnt/config_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace amdiscnt {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

namespace {

std::uint64_t parse_unsigned(std::string_view s) {
  std::uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a non-negative integer: '" + std::string(s) + "'");
  return v;
}

int parse_int(std::string_view s) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty list element in '" + s + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::string heterogeneity_mode_name(const HeterogeneityMode& m) {
  switch (m.index()) {
  case 0: return "homogeneous";
  case 1: return "two_level";
  case 2: return "three_level";
  default: return "multi_level";
  }
}

using Section = std::map<std::string, std::string>;
using Sections = std::map<std::string, Section>;

// Schema: which keys each section accepts.
const std::map<std::string, std::vector<std::string>>& schema() {
  static const std::map<std::string, std::vector<std::string>> s{
      {"network",
       {"nodes", "r_inner", "r_outer", "inner_fraction", "deployment", "max_rounds", "seed", "link_drop_probability"}},
      {"radio", {"e_elec", "e_fs", "e_mp", "e_da", "packet_bits"}},
      {"heterogeneity", {"mode", "e0", "m", "m0", "alpha", "beta", "alpha_max"}},
      {"delay", {"mode", "speed", "per_hop"}},
      {"experiment", {"preset", "protocols", "seeds", "runs", "base_seed", "confidence", "p_opt"}},
  };
  return s;
}

Sections read_sections(const std::string& text, const std::string& source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigParseError(source + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  Sections out;
  for (const auto& [name, section] : tree) {
    if (section.empty() && !section.data().empty())
      throw ConfigParseError(source + ": key '" + name + "' must appear inside a [section]");
    auto known = schema().find(name);
    if (known == schema().end()) throw ConfigParseError(source + ": unknown section [" + name + "]");
    for (const auto& [key, value] : section) {
      const auto& keys = known->second;
      if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw ConfigParseError(source + ": unknown key '" + name + "." + key + "'");
      out[name][key] = value.data();
    }
  }
  return out;
}

class Reader {
public:
  Reader(Sections sections, std::string source) : sections_(std::move(sections)), source_(std::move(source)) {}

  template <class Parse, class T>
  void read(const std::string& section, const std::string& key, T& target, Parse parse) {
    auto s = sections_.find(section);
    if (s == sections_.end()) return;
    auto k = s->second.find(key);
    if (k == s->second.end()) return;
    try {
      target = static_cast<T>(parse(k->second));
    } catch (const std::exception& e) {
      throw ConfigParseError(source_ + ": " + section + "." + key + ": " + e.what());
    }
    s->second.erase(k);
  }

  void num(const std::string& section, const std::string& key, double& target) {
    read(section, key, target, [](const std::string& v) { return parse_number(v); });
  }

  std::optional<std::string> take(const std::string& section, const std::string& key) {
    std::optional<std::string> out;
    read(section, key, out, [](const std::string& v) { return std::optional<std::string>(v); });
    return out;
  }

  // Keys that were recognized by the schema but not consumed (e.g. `m0` in a
  // two_level heterogeneity block).
  void reject_leftovers() const {
    for (const auto& [section, keys] : sections_)
      for (const auto& [key, value] : keys)
        throw ConfigParseError(source_ + ": key '" + section + "." + key + "' is not used by the selected mode");
  }

private:
  Sections sections_;
  std::string source_;
};

} // namespace

NetworkConfig preset_config(std::string_view name) {
  NetworkConfig c;
  if (name == "table1") return c;
  if (name == "table2") {
    c.heterogeneity.e0 = 0.8;
    c.geometry = {25.0, 40.0};
    c.n_nodes = 100;
    return c;
  }
  throw ConfigParseError("unknown preset '" + std::string(name) + "' (expected table1 or table2)");
}

std::vector<std::uint64_t> seed_range(std::uint64_t base, int runs) {
  if (runs < 1) throw ConfigParseError("runs must be >= 1");
  std::vector<std::uint64_t> out;
  for (int i = 0; i < runs; ++i) out.push_back(base + static_cast<std::uint64_t>(i));
  return out;
}

std::vector<ProtocolKind> parse_protocol_list(const std::string& list, double p_opt) {
  std::vector<std::string> names;
  try {
    names = split_list(list);
  } catch (const std::invalid_argument& ex) {
    throw ConfigParseError(std::string("protocols: ") + ex.what());
  }
  std::vector<ProtocolKind> out;
  for (const auto& name : names) {
    if (std::count(names.begin(), names.end(), name) > 1)
      throw ConfigParseError("protocols: '" + name + "' listed twice");
    try {
      out.push_back(parse_protocol(name, p_opt));
    } catch (const std::invalid_argument& ex) {
      throw ConfigParseError(std::string("protocols: ") + ex.what());
    }
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& list) {
  std::vector<std::uint64_t> out;
  try {
    for (const auto& s : split_list(list)) out.push_back(parse_unsigned(s));
  } catch (const std::invalid_argument& ex) {
    throw ConfigParseError(std::string("seeds: ") + ex.what());
  }
  return out;
}

std::string deployment_mode_name(DeploymentMode m) {
  return m == DeploymentMode::LiteralPaper ? "literal_paper" : "uniform_by_area";
}

std::string delay_mode_name(const DelayMode& m) {
  return std::holds_alternative<HopCountDelay>(m) ? "hop_count" : "distance_proportional";
}

ExperimentConfig parse_config_text(const std::string& text, std::optional<std::string> preset_override,
                                   const std::string& source) {
  Reader r(read_sections(text, source), source);

  auto file_preset = r.take("experiment", "preset");
  ExperimentConfig out;
  out.network = preset_config(preset_override.value_or(file_preset.value_or("table1")));
  auto& n = out.network;

  r.read("network", "nodes", n.n_nodes, parse_int);
  r.num("network", "r_inner", n.geometry.r_inner);
  r.num("network", "r_outer", n.geometry.r_outer);
  r.num("network", "inner_fraction", n.inner_fraction);
  r.read("network", "deployment", n.deployment_mode, [](const std::string& v) {
    if (v == "uniform_by_area") return DeploymentMode::UniformByArea;
    if (v == "literal_paper") return DeploymentMode::LiteralPaper;
    throw std::invalid_argument("expected uniform_by_area or literal_paper, got '" + v + "'");
  });
  r.read("network", "max_rounds", n.max_rounds, parse_int);
  r.read("network", "seed", n.seed, parse_unsigned);
  r.num("network", "link_drop_probability", n.link_drop_probability);

  r.num("radio", "e_elec", n.radio.e_elec);
  r.num("radio", "e_fs", n.radio.e_fs);
  r.num("radio", "e_mp", n.radio.e_mp);
  r.num("radio", "e_da", n.radio.e_da);
  r.read("radio", "packet_bits", n.radio.packet_bits, [](const std::string& v) {
    auto bits = parse_unsigned(v);
    if (bits > UINT32_MAX) throw std::invalid_argument("packet_bits too large");
    return static_cast<std::uint32_t>(bits);
  });

  auto& h = n.heterogeneity;
  r.num("heterogeneity", "e0", h.e0);
  if (auto mode = r.take("heterogeneity", "mode")) {
    if (*mode == "homogeneous") h.mode = Homogeneous{};
    else if (*mode == "two_level") h.mode = TwoLevel{};
    else if (*mode == "three_level") h.mode = ThreeLevel{};
    else if (*mode == "multi_level") h.mode = MultiLevel{};
    else throw ConfigParseError(source + ": heterogeneity.mode: unknown mode '" + *mode + "'");
  }
  std::visit(
      [&](auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TwoLevel>) {
          r.num("heterogeneity", "m", m.m);
          r.num("heterogeneity", "alpha", m.alpha);
        } else if constexpr (std::is_same_v<T, ThreeLevel>) {
          r.num("heterogeneity", "m", m.m);
          r.num("heterogeneity", "m0", m.m0);
          r.num("heterogeneity", "alpha", m.alpha);
          r.num("heterogeneity", "beta", m.beta);
        } else if constexpr (std::is_same_v<T, MultiLevel>) {
          r.num("heterogeneity", "alpha_max", m.alpha_max);
        }
      },
      h.mode);

  if (auto mode = r.take("delay", "mode")) {
    if (*mode == "hop_count") n.delay_mode = HopCountDelay{};
    else if (*mode == "distance_proportional") n.delay_mode = DistanceProportionalDelay{};
    else throw ConfigParseError(source + ": delay.mode: unknown mode '" + *mode + "'");
  }
  if (auto* d = std::get_if<DistanceProportionalDelay>(&n.delay_mode)) {
    r.num("delay", "speed", d->speed);
    r.num("delay", "per_hop", d->per_hop);
  }

  auto& e = out.experiment;
  double p_opt = 0.1;
  r.num("experiment", "p_opt", p_opt);
  if (!(p_opt > 0.0 && p_opt < 1.0)) throw ConfigParseError(source + ": experiment.p_opt must lie in (0, 1)");
  e.protocols = parse_protocol_list(r.take("experiment", "protocols").value_or("amdiscnt,leach,deec"), p_opt);

  std::uint64_t base_seed = n.seed;
  int runs = 5;
  r.read("experiment", "base_seed", base_seed, parse_unsigned);
  r.read("experiment", "runs", runs, parse_int);
  auto explicit_seeds = r.take("experiment", "seeds");
  e.seeds = explicit_seeds ? parse_seed_list(*explicit_seeds) : seed_range(base_seed, runs);
  r.num("experiment", "confidence", e.confidence);
  if (!(e.confidence > 0.0 && e.confidence < 1.0))
    throw ConfigParseError(source + ": experiment.confidence must lie in (0, 1)");

  r.reject_leftovers();
  require_valid(n);
  return out;
}

ExperimentConfig parse_config(const std::filesystem::path& path, std::optional<std::string> preset_override) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), std::move(preset_override), path.string());
}

std::string serialize_config(const ExperimentConfig& config) {
  const auto& n = config.network;
  const auto& e = config.experiment;
  std::ostringstream o;
  o << "[network]\n"
    << "nodes = " << n.n_nodes << "\n"
    << "r_inner = " << format_number(n.geometry.r_inner) << "\n"
    << "r_outer = " << format_number(n.geometry.r_outer) << "\n"
    << "inner_fraction = " << format_number(n.inner_fraction) << "\n"
    << "deployment = " << deployment_mode_name(n.deployment_mode) << "\n"
    << "max_rounds = " << n.max_rounds << "\n"
    << "seed = " << n.seed << "\n"
    << "link_drop_probability = " << format_number(n.link_drop_probability) << "\n\n";

  o << "[radio]\n"
    << "e_elec = " << format_number(n.radio.e_elec) << "\n"
    << "e_fs = " << format_number(n.radio.e_fs) << "\n"
    << "e_mp = " << format_number(n.radio.e_mp) << "\n"
    << "e_da = " << format_number(n.radio.e_da) << "\n"
    << "packet_bits = " << n.radio.packet_bits << "\n\n";

  o << "[heterogeneity]\n"
    << "mode = " << heterogeneity_mode_name(n.heterogeneity.mode) << "\n"
    << "e0 = " << format_number(n.heterogeneity.e0) << "\n";
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TwoLevel>) {
          o << "m = " << format_number(m.m) << "\nalpha = " << format_number(m.alpha) << "\n";
        } else if constexpr (std::is_same_v<T, ThreeLevel>) {
          o << "m = " << format_number(m.m) << "\nm0 = " << format_number(m.m0) << "\nalpha = " << format_number(m.alpha)
            << "\nbeta = " << format_number(m.beta) << "\n";
        } else if constexpr (std::is_same_v<T, MultiLevel>) {
          o << "alpha_max = " << format_number(m.alpha_max) << "\n";
        }
      },
      n.heterogeneity.mode);

  o << "\n[delay]\nmode = " << delay_mode_name(n.delay_mode) << "\n";
  if (auto* d = std::get_if<DistanceProportionalDelay>(&n.delay_mode))
    o << "speed = " << format_number(d->speed) << "\nper_hop = " << format_number(d->per_hop) << "\n";

  double p_opt = 0.1;
  std::string protocols;
  for (const auto& p : e.protocols) {
    if (!protocols.empty()) protocols += ",";
    protocols += protocol_name(p);
    if (auto* l = std::get_if<Leach>(&p)) p_opt = l->p_opt;
    if (auto* d = std::get_if<Deec>(&p)) p_opt = d->p_opt;
  }
  std::string seeds;
  for (auto s : e.seeds) seeds += (seeds.empty() ? "" : ",") + std::to_string(s);
  o << "\n[experiment]\n"
    << "protocols = " << protocols << "\n"
    << "p_opt = " << format_number(p_opt) << "\n"
    << "seeds = " << seeds << "\n"
    << "confidence = " << format_number(e.confidence) << "\n";
  return o.str();
}

} // namespace amdiscnt
