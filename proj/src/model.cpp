#include "amdiscnt/model.hpp"

#include "amdiscnt/energy.hpp"

#include <cmath>
#include <sstream>

namespace amdiscnt {

std::string to_string(RegionId r) {
  if (r.is_inner()) return "T1";
  return "R" + std::to_string(r.sector + 1);
}

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

void check_heterogeneity(const HeterogeneitySpec& h, std::vector<std::string>& out) {
  if (!(std::isfinite(h.e0) && h.e0 > 0.0)) out.push_back("heterogeneity.e0 must be > 0");
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TwoLevel>) {
          if (!in_unit(m.m)) out.push_back("heterogeneity.m must lie in [0, 1]");
          if (!(m.alpha >= 0.0)) out.push_back("heterogeneity.alpha must be >= 0");
        } else if constexpr (std::is_same_v<T, ThreeLevel>) {
          if (!in_unit(m.m)) out.push_back("heterogeneity.m must lie in [0, 1]");
          if (!in_unit(m.m0)) out.push_back("heterogeneity.m0 must lie in [0, 1]");
          if (!(m.alpha >= 0.0)) out.push_back("heterogeneity.alpha must be >= 0");
          if (!(m.beta >= 0.0)) out.push_back("heterogeneity.beta must be >= 0");
        } else if constexpr (std::is_same_v<T, MultiLevel>) {
          if (!(m.alpha_max >= 0.0)) out.push_back("heterogeneity.alpha_max must be >= 0");
        }
      },
      h.mode);
}

} // namespace

std::vector<std::string> validate_config(const NetworkConfig& c) {
  std::vector<std::string> out;

  if (c.n_nodes < 9) out.push_back("n_nodes must be >= 9 (one node per region)");

  const auto& g = c.geometry;
  if (!(std::isfinite(g.r_inner) && std::isfinite(g.r_outer) && g.r_inner > 0.0 &&
        g.r_inner < g.r_outer))
    out.push_back("geometry requires 0 < r_inner < r_outer");

  const auto& r = c.radio;
  for (auto [name, v] : {std::pair{"e_elec", r.e_elec}, std::pair{"e_fs", r.e_fs},
                         std::pair{"e_mp", r.e_mp}, std::pair{"e_da", r.e_da}}) {
    if (!(std::isfinite(v) && v > 0.0)) out.push_back(std::string("radio.") + name + " must be > 0");
  }
  if (r.packet_bits == 0) out.push_back("radio.packet_bits must be > 0");
  if (r.e_fs > 0.0 && r.e_mp > 0.0) {
    double d0 = crossover_distance(r);
    if (!(std::isfinite(d0) && d0 > 0.0)) out.push_back("radio crossover distance must be finite");
  }

  check_heterogeneity(c.heterogeneity, out);

  if (c.max_rounds < 0) out.push_back("max_rounds must be >= 0");
  if (!(c.inner_fraction > 0.0 && c.inner_fraction < 1.0))
    out.push_back("inner_fraction must lie in (0, 1)");
  if (!in_unit(c.link_drop_probability))
    out.push_back("link_drop_probability must lie in [0, 1]");
  if (auto* d = std::get_if<DistanceProportionalDelay>(&c.delay_mode)) {
    if (!(std::isfinite(d->speed) && d->speed > 0.0)) out.push_back("delay.speed must be > 0");
    if (!(std::isfinite(d->per_hop) && d->per_hop >= 0.0)) out.push_back("delay.per_hop must be >= 0");
  }
  return out;
}

void require_valid(const NetworkConfig& config) {
  auto violations = validate_config(config);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid configuration:";
  for (const auto& v : violations) msg << "\n  " << v;
  throw ConfigError(msg.str());
}

} // namespace amdiscnt
