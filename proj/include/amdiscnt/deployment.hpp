#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "amdiscnt/model.hpp"
#include "amdiscnt/random.hpp"

namespace amdiscnt {

class OutOfFieldError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Some region would receive no nodes under the requested split.
class DegenerateDeploymentError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

struct DeploymentResult {
  std::vector<Node> nodes;
  double total_initial_energy = 0.0;
  std::map<RegionId, int> per_region_counts;
};

struct EnergyAssignment {
  double initial_energy = 0.0;
  double tier_scale = 0.0;
};

/// Radius <= r_inner is the inner disk; beyond that, the pi/4 sector of the
/// angle normalized to [0, 2pi). Throws OutOfFieldError past r_outer.
RegionId region_of(Position p, const Geometry& geometry);

Position sample_inner_position(Rng& rng, const Geometry& geometry, DeploymentMode mode);

/// Throws std::out_of_range for a sector outside [0, 7].
Position sample_outer_position(Rng& rng, const Geometry& geometry, int sector, DeploymentMode mode);

/// Inner count first, then sectors 0..7. Throws DegenerateDeploymentError if any is zero.
std::array<int, 9> region_allocation(int n_nodes, double inner_fraction);

DeploymentResult deploy(const NetworkConfig& config, Rng& rng);

std::vector<EnergyAssignment> assign_initial_energy(int count, const HeterogeneitySpec& spec, Rng& rng);

/// Closed-form total; for MultiLevel, the expectation under t ~ U(0, 1].
double theoretical_total_energy(int count, const HeterogeneitySpec& spec);

/// Round-half-up used for heterogeneous subset sizes and the inner split.
int round_half_up(double v);

} // namespace amdiscnt
