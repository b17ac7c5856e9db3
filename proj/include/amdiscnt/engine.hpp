#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "amdiscnt/model.hpp"
#include "amdiscnt/protocols.hpp"
#include "amdiscnt/random.hpp"

namespace amdiscnt {

/// Counters observed at the end of a round.
struct RoundMetrics {
  int round = 0;
  int alive = 0;
  int dead = 0;
  long packets_sent_to_bs = 0;
  long packets_received_by_bs = 0;
  int ch_count = 0;
  double mean_delay = 0.0; // 0 when nothing reached the BS
  double total_residual_energy = 0.0;

  bool operator==(const RoundMetrics&) const = default;
};

struct RoundReport {
  RoundMetrics metrics;
  double energy_charged = 0.0; // sum of every deduction applied this round
};

struct SimulationResult {
  std::vector<RoundMetrics> per_round;
  std::optional<int> first_node_death;
  std::optional<int> half_nodes_death;
  std::optional<int> last_node_death;
  long cumulative_sent = 0;
  long cumulative_received = 0;

  bool operator==(const SimulationResult&) const = default;
};

/// Executes one round of `plan` against `state`.
///
/// Order: members -> CH (rx charged per arriving packet), then each CH
/// aggregates and forwards along its route (relays pay rx + tx), then
/// DirectToBS nodes transmit. A charge the node cannot afford zeroes it and
/// loses the packet; landing exactly on 0 still lets the packet out. Every hop
/// that leaves is independently dropped with config.link_drop_probability.
///
/// A BS packet counts as sent when a live holder attempts the BS-bound hop.
/// Delay of an aggregate is its route plus the slowest member hop it carries.
RoundReport run_round(std::vector<Node>& state, const TransmissionPlan& plan, const NetworkConfig& config,
                      Rng& drop_rng);

/// Step-wise simulation. Deployment, elections and link drops draw from
/// independent streams forked from config.seed, so the same seed yields the
/// same field for every protocol.
class Simulation {
public:
  Simulation(const NetworkConfig& config, const ProtocolKind& kind);

  bool finished() const;
  RoundReport step();

  const std::vector<Node>& nodes() const { return nodes_; }
  const TransmissionPlan& last_plan() const { return last_plan_; }
  double initial_total_energy() const { return initial_total_energy_; }
  int round() const { return round_; }

  SimulationResult result() const;

private:
  NetworkConfig config_;
  std::vector<Node> nodes_;
  std::unique_ptr<Protocol> protocol_;
  Rng election_rng_;
  Rng drop_rng_;
  TransmissionPlan last_plan_;
  double initial_total_energy_ = 0.0;
  int round_ = 0;
  std::vector<RoundMetrics> history_;
};

/// Throws ConfigError before creating any state when config is invalid.
SimulationResult run_simulation(const NetworkConfig& config, const ProtocolKind& kind);

/// Milestones and cumulative counters derived from a per-round series.
SimulationResult summarize(std::vector<RoundMetrics> per_round, int n_nodes);

} // namespace amdiscnt
