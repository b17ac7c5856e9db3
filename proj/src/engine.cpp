#include "amdiscnt/engine.hpp"

#include <algorithm>
#include <map>

#include "amdiscnt/deployment.hpp"
#include "amdiscnt/energy.hpp"

namespace amdiscnt {

namespace {

class RoundExecutor {
public:
  RoundExecutor(std::vector<Node>& state, const NetworkConfig& config, Rng& drop_rng)
      : nodes_(state), config_(config), drop_rng_(drop_rng) {}

  // True when the node paid in full (the packet may leave).
  bool charge(int id, double cost) {
    Node& n = nodes_[static_cast<std::size_t>(id)];
    if (!n.alive) return false;
    if (n.residual_energy >= cost) {
      n.residual_energy -= cost;
      charged_ += cost;
      if (n.residual_energy <= 0.0) {
        n.residual_energy = 0.0;
        n.alive = false;
      }
      return true;
    }
    charged_ += n.residual_energy;
    n.residual_energy = 0.0;
    n.alive = false;
    return false;
  }

  bool transmit(int from, double dist) {
    if (!charge(from, tx_cost(bits(), dist, config_.radio))) return false;
    const double p = config_.link_drop_probability;
    return !(p > 0.0 && drop_rng_.bernoulli(p));
  }

  bool receive(int at) { return charge(at, rx_cost(bits(), config_.radio)); }

  bool alive(int id) const { return nodes_[static_cast<std::size_t>(id)].alive; }
  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::uint64_t bits() const { return config_.radio.packet_bits; }
  double charged() const { return charged_; }

  double hop_delay(double dist) const {
    if (auto* d = std::get_if<DistanceProportionalDelay>(&config_.delay_mode)) return d->per_hop + dist / d->speed;
    return 1.0;
  }

private:
  std::vector<Node>& nodes_;
  const NetworkConfig& config_;
  Rng& drop_rng_;
  double charged_ = 0.0;
};

} // namespace

RoundReport run_round(std::vector<Node>& state, const TransmissionPlan& plan, const NetworkConfig& config,
                      Rng& drop_rng) {
  RoundExecutor ex(state, config, drop_rng);
  RoundMetrics m;
  m.round = plan.round;

  long sent = 0;
  long received = 0;
  double delay_sum = 0.0;

  struct Inbox {
    int arrived = 0;
    double slowest = 0.0;
  };
  std::map<int, Inbox> inbox;
  const auto chs = plan.cluster_heads();
  for (int ch : chs) inbox[ch];
  m.ch_count = static_cast<int>(chs.size());

  // (1) members -> CH
  for (std::size_t i = 0; i < plan.roles.size(); ++i) {
    const Role& role = plan.roles[i];
    if (role.kind != RoleKind::Member) continue;
    const int id = static_cast<int>(i);
    if (!ex.alive(id)) continue;
    const double d = distance(ex.node(id).position, ex.node(role.ch_id).position);
    if (!ex.transmit(id, d)) continue;
    if (!ex.alive(role.ch_id) || !ex.receive(role.ch_id)) continue;
    auto& box = inbox[role.ch_id];
    ++box.arrived;
    box.slowest = std::max(box.slowest, ex.hop_delay(d));
  }

  // (2) aggregate and forward
  for (int ch : chs) {
    if (!ex.alive(ch)) continue;
    const auto& box = inbox[ch];
    if (!ex.charge(ch, aggregation_cost(ex.bits(), static_cast<std::uint64_t>(box.arrived) + 1, config.radio)))
      continue;
    const auto route_it = plan.routes.find(ch);
    const std::vector<int> direct{ch, kBaseStation};
    const auto& hops = route_it != plan.routes.end() ? route_it->second : direct;

    double delay = box.arrived > 0 ? box.slowest : 0.0;
    int holder = ch;
    for (std::size_t h = 1; h < hops.size(); ++h) {
      if (!ex.alive(holder)) break;
      const int next = hops[h];
      if (next == kBaseStation) {
        const double d = distance_to_bs(ex.node(holder).position);
        ++sent;
        if (ex.transmit(holder, d)) {
          ++received;
          delay_sum += delay + ex.hop_delay(d);
        }
        break;
      }
      const double d = distance(ex.node(holder).position, ex.node(next).position);
      if (!ex.transmit(holder, d)) break;
      if (!ex.alive(next) || !ex.receive(next)) break;
      delay += ex.hop_delay(d);
      holder = next;
    }
  }

  // (3) direct transmissions
  for (std::size_t i = 0; i < plan.roles.size(); ++i) {
    if (plan.roles[i].kind != RoleKind::DirectToBS) continue;
    const int id = static_cast<int>(i);
    if (!ex.alive(id)) continue;
    const double d = distance_to_bs(ex.node(id).position);
    ++sent;
    if (ex.transmit(id, d)) {
      ++received;
      delay_sum += ex.hop_delay(d);
    }
  }

  for (const auto& n : state) {
    if (n.alive) ++m.alive;
    m.total_residual_energy += n.residual_energy;
  }
  m.dead = static_cast<int>(state.size()) - m.alive;
  m.packets_sent_to_bs = sent;
  m.packets_received_by_bs = received;
  m.mean_delay = received > 0 ? delay_sum / static_cast<double>(received) : 0.0;
  return {m, ex.charged()};
}

namespace {

struct Streams {
  Rng deploy;
  Rng election;
  Rng drop;
};

Streams make_streams(std::uint64_t seed) {
  Rng master(seed);
  Rng deploy = master.fork(1);
  Rng election = master.fork(2);
  Rng drop = master.fork(3);
  return {deploy, election, drop};
}

const NetworkConfig& checked(const NetworkConfig& config) {
  require_valid(config);
  return config;
}

} // namespace

Simulation::Simulation(const NetworkConfig& config, const ProtocolKind& kind)
    : config_(checked(config)), election_rng_(0), drop_rng_(0) {
  auto streams = make_streams(config_.seed);
  protocol_ = make_protocol(kind, static_cast<std::size_t>(config_.n_nodes), config_.radio);
  auto deployment = deploy(config_, streams.deploy);
  nodes_ = std::move(deployment.nodes);
  initial_total_energy_ = deployment.total_initial_energy;
  election_rng_ = streams.election;
  drop_rng_ = streams.drop;
}

bool Simulation::finished() const {
  if (round_ >= config_.max_rounds) return true;
  return std::none_of(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.alive; });
}

RoundReport Simulation::step() {
  last_plan_ = protocol_->plan_round(nodes_, round_, election_rng_);
  auto report = run_round(nodes_, last_plan_, config_, drop_rng_);
  history_.push_back(report.metrics);
  ++round_;
  return report;
}

SimulationResult Simulation::result() const { return summarize(history_, config_.n_nodes); }

SimulationResult summarize(std::vector<RoundMetrics> per_round, int n_nodes) {
  SimulationResult r;
  for (const auto& m : per_round) {
    if (!r.first_node_death && m.dead >= 1) r.first_node_death = m.round;
    if (!r.half_nodes_death && 2 * m.dead >= n_nodes) r.half_nodes_death = m.round;
    if (!r.last_node_death && m.dead == n_nodes) r.last_node_death = m.round;
    r.cumulative_sent += m.packets_sent_to_bs;
    r.cumulative_received += m.packets_received_by_bs;
  }
  r.per_round = std::move(per_round);
  return r;
}

SimulationResult run_simulation(const NetworkConfig& config, const ProtocolKind& kind) {
  Simulation sim(config, kind);
  while (!sim.finished()) sim.step();
  return sim.result();
}

} // namespace amdiscnt
