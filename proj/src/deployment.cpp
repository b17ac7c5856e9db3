#include "amdiscnt/deployment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace amdiscnt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSectorWidth = std::numbers::pi / 4.0;

Position polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }

// Floating point can push a boundary draw (r == r_inner, theta at a sector
// edge) across the region line after cos/sin; redraw until it lands.
template <class Draw>
Position draw_in_region(const Geometry& g, RegionId want, Draw draw) {
  for (;;) {
    Position p = draw();
    if (std::hypot(p.x, p.y) <= g.r_outer && region_of(p, g) == want) return p;
  }
}

} // namespace

int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

RegionId region_of(Position p, const Geometry& geometry) {
  const double r = std::hypot(p.x, p.y);
  if (!(r <= geometry.r_outer))
    throw OutOfFieldError("position (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                          ") lies outside radius " + std::to_string(geometry.r_outer));
  if (r <= geometry.r_inner) return RegionId::inner();

  double theta = std::atan2(p.y, p.x);
  if (theta < 0.0) theta += kTwoPi;
  if (theta >= kTwoPi) theta = 0.0;
  int sector = static_cast<int>(std::floor(theta / kSectorWidth));
  if (sector > 7) sector = 7;
  return RegionId::outer(sector);
}

Position sample_inner_position(Rng& rng, const Geometry& g, DeploymentMode mode) {
  return draw_in_region(g, RegionId::inner(), [&] {
    const double theta = kTwoPi * rng.uniform();
    const double u = rng.uniform_open_closed();
    const double r = mode == DeploymentMode::LiteralPaper ? g.r_inner * u : g.r_inner * std::sqrt(u);
    return polar(r, theta);
  });
}

Position sample_outer_position(Rng& rng, const Geometry& g, int sector, DeploymentMode mode) {
  if (sector < 0 || sector > 7) throw std::out_of_range("sector " + std::to_string(sector) + " not in [0, 7]");
  return draw_in_region(g, RegionId::outer(sector), [&] {
    const double theta = kSectorWidth * (sector + rng.uniform());
    const double u = rng.uniform_open_closed();
    double r;
    if (mode == DeploymentMode::LiteralPaper) {
      r = g.r_inner + u * g.annulus_width();
    } else {
      const double a = g.r_inner * g.r_inner;
      r = std::sqrt(a + u * (g.r_outer * g.r_outer - a));
    }
    return polar(r, theta);
  });
}

std::array<int, 9> region_allocation(int n_nodes, double inner_fraction) {
  std::array<int, 9> counts{};
  counts[0] = round_half_up(inner_fraction * n_nodes);
  const int rest = n_nodes - counts[0];
  for (int s = 0; s < 8; ++s) counts[1 + s] = rest > 0 ? rest / 8 + (s < rest % 8 ? 1 : 0) : 0;
  for (int i = 0; i < 9; ++i) {
    if (counts[i] <= 0) {
      RegionId r = i == 0 ? RegionId::inner() : RegionId::outer(i - 1);
      throw DegenerateDeploymentError("region " + to_string(r) + " receives no nodes (N=" +
                                      std::to_string(n_nodes) + ")");
    }
  }
  return counts;
}

std::vector<EnergyAssignment> assign_initial_energy(int count, const HeterogeneitySpec& spec, Rng& rng) {
  const double e0 = spec.e0;
  std::vector<EnergyAssignment> out(static_cast<std::size_t>(count), EnergyAssignment{e0, 0.0});

  // First `k` entries of a partial Fisher-Yates shuffle: a uniform k-subset.
  auto sample = [&](int k) {
    std::vector<int> idx(static_cast<std::size_t>(count));
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < k; ++i) {
      auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(count - i)));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(static_cast<std::size_t>(k));
    return idx;
  };

  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TwoLevel>) {
          const int advanced = std::clamp(round_half_up(m.m * count), 0, count);
          for (int i : sample(advanced)) out[i] = {e0 * (1.0 + m.alpha), m.alpha};
        } else if constexpr (std::is_same_v<T, ThreeLevel>) {
          const int upgraded = std::clamp(round_half_up(m.m * count), 0, count);
          const int super = std::clamp(round_half_up(m.m * m.m0 * count), 0, upgraded);
          auto chosen = sample(upgraded);
          // Super nodes stack beta on top of the advanced bonus.
          for (int i = 0; i < upgraded; ++i) {
            const double scale = i < super ? m.alpha + m.beta : m.alpha;
            out[chosen[i]] = {e0 * (1.0 + scale), scale};
          }
        } else if constexpr (std::is_same_v<T, MultiLevel>) {
          for (auto& a : out) {
            const double scale = rng.uniform_open_closed() * m.alpha_max;
            a = {e0 * (1.0 + scale), scale};
          }
        }
      },
      spec.mode);
  return out;
}

double theoretical_total_energy(int count, const HeterogeneitySpec& spec) {
  const double base = count * spec.e0;
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Homogeneous>) return base;
        else if constexpr (std::is_same_v<T, TwoLevel>) return base * (1.0 + m.m * m.alpha);
        else if constexpr (std::is_same_v<T, ThreeLevel>) return base * (1.0 + m.m * (m.alpha + m.m0 * m.beta));
        else return base * (1.0 + m.alpha_max / 2.0);
      },
      spec.mode);
}

DeploymentResult deploy(const NetworkConfig& config, Rng& rng) {
  const auto counts = region_allocation(config.n_nodes, config.inner_fraction);
  require_valid(config);

  DeploymentResult result;
  result.nodes.reserve(static_cast<std::size_t>(config.n_nodes));
  int next_id = 0;
  for (int i = 0; i < 9; ++i) {
    const RegionId region = i == 0 ? RegionId::inner() : RegionId::outer(i - 1);
    result.per_region_counts[region] = counts[i];
    for (int c = 0; c < counts[i]; ++c) {
      Node n;
      n.id = next_id++;
      n.region = region;
      n.position = region.is_inner()
                       ? sample_inner_position(rng, config.geometry, config.deployment_mode)
                       : sample_outer_position(rng, config.geometry, region.sector, config.deployment_mode);
      result.nodes.push_back(n);
    }
  }

  const auto energies = assign_initial_energy(config.n_nodes, config.heterogeneity, rng);
  for (auto& n : result.nodes) {
    const auto& e = energies[static_cast<std::size_t>(n.id)];
    n.initial_energy = e.initial_energy;
    n.residual_energy = e.initial_energy;
    n.tier_scale = e.tier_scale;
    n.alive = n.residual_energy > 0.0;
    result.total_initial_energy += n.initial_energy;
  }
  return result;
}

} // namespace amdiscnt
