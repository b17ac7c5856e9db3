#include "amdiscnt/protocols.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "amdiscnt/energy.hpp"

// Node vectors are indexed by id throughout (deploy assigns ids 0..N-1).
namespace amdiscnt {

double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }
double distance_to_bs(Position p) { return std::hypot(p.x, p.y); }

std::string protocol_name(const ProtocolKind& kind) {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, AmDiscnt>) return "amdiscnt";
        else if constexpr (std::is_same_v<T, Leach>) return "leach";
        else return "deec";
      },
      kind);
}

ProtocolKind parse_protocol(const std::string& name, double p_opt) {
  if (name == "amdiscnt") return AmDiscnt{};
  if (name == "leach") return Leach{p_opt};
  if (name == "deec") return Deec{p_opt};
  throw std::invalid_argument("unknown protocol '" + name + "' (expected amdiscnt, leach or deec)");
}

std::vector<int> TransmissionPlan::cluster_heads() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < roles.size(); ++i)
    if (roles[i].kind == RoleKind::ClusterHead) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> TransmissionPlan::relays() const {
  std::vector<int> out;
  for (const auto& [ch, hops] : routes)
    for (std::size_t i = 1; i + 1 < hops.size(); ++i) out.push_back(hops[i]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> TransmissionPlan::members_of(int ch_id) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < roles.size(); ++i)
    if (roles[i].kind == RoleKind::Member && roles[i].ch_id == ch_id) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> elect_chs_amdiscnt(const std::vector<Node>& nodes) {
  std::array<const Node*, RegionId::kSectors> best{};
  for (const auto& n : nodes) {
    if (!n.alive || n.region.is_inner()) continue;
    auto& b = best[static_cast<std::size_t>(n.region.sector)];
    if (!b || n.residual_energy > b->residual_energy ||
        (n.residual_energy == b->residual_energy && n.id < b->id))
      b = &n;
  }
  std::vector<int> out;
  for (const Node* b : best)
    if (b) out.push_back(b->id);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

long epoch_length(double p) { return std::max(1L, static_cast<long>(std::floor(1.0 / p))); }

double rotating_threshold(double p, int round, long epoch) { return p / (1.0 - p * static_cast<double>(round % epoch)); }

} // namespace

double leach_threshold(double p, int round) { return rotating_threshold(p, round, epoch_length(p)); }

std::vector<int> elect_chs_leach(const std::vector<Node>& nodes, int round, double p_opt, Rng& rng,
                                 ElectionHistory& history) {
  const long epoch = epoch_length(p_opt);
  const double t = rotating_threshold(p_opt, round, epoch);
  std::vector<int> out;
  for (const auto& n : nodes) {
    if (!n.alive || !history.eligible(n.id, round, epoch)) continue;
    if (rng.uniform() < t) {
      out.push_back(n.id);
      history.last_ch_round[static_cast<std::size_t>(n.id)] = round;
    }
  }
  return out;
}

double deec_probability(double p_opt, double residual, double mean_residual) {
  return std::min(1.0, p_opt * residual / mean_residual);
}

std::vector<int> elect_chs_deec(const std::vector<Node>& nodes, int round, double p_opt, Rng& rng,
                                ElectionHistory& history) {
  double sum = 0.0;
  int alive = 0;
  for (const auto& n : nodes) {
    if (!n.alive) continue;
    sum += n.residual_energy;
    ++alive;
  }
  std::vector<int> out;
  if (alive == 0) return out;
  const double mean = sum / alive;

  for (const auto& n : nodes) {
    if (!n.alive) continue;
    const double p = deec_probability(p_opt, n.residual_energy, mean);
    const long epoch = epoch_length(p);
    if (!history.eligible(n.id, round, epoch)) continue;
    if (rng.uniform() < rotating_threshold(p, round, epoch)) {
      out.push_back(n.id);
      history.last_ch_round[static_cast<std::size_t>(n.id)] = round;
    }
  }
  return out;
}

std::vector<int> select_relay(const Node& ch, const std::vector<Node>& nodes, const RadioParams& radio) {
  const auto k = radio.packet_bits;
  const double direct = tx_cost(k, distance_to_bs(ch.position), radio);

  std::optional<int> best;
  double best_cost = 0.0;
  for (const auto& r : nodes) {
    if (!r.alive || !r.region.is_inner() || r.id == ch.id) continue;
    const double cost = tx_cost(k, distance(ch.position, r.position), radio) + tx_cost(k, distance_to_bs(r.position), radio);
    if (!best || cost < best_cost) {
      best = r.id;
      best_cost = cost;
    }
  }
  if (!best || direct <= best_cost) return {ch.id, kBaseStation};
  return {ch.id, *best, kBaseStation};
}

TransmissionPlan build_plan(const std::vector<Node>& nodes, const std::vector<int>& ch_set,
                            const ProtocolKind& kind, const RadioParams& radio, int round) {
  TransmissionPlan plan;
  plan.round = round;
  plan.roles.assign(nodes.size(), Role{});

  std::vector<int> chs;
  for (int id : ch_set)
    if (nodes[static_cast<std::size_t>(id)].alive) chs.push_back(id);
  std::sort(chs.begin(), chs.end());
  for (int id : chs) plan.roles[static_cast<std::size_t>(id)] = {RoleKind::ClusterHead, -1};

  if (std::holds_alternative<AmDiscnt>(kind)) {
    std::array<int, RegionId::kSectors> sector_ch;
    sector_ch.fill(-1);
    for (int id : chs) {
      const auto& r = nodes[static_cast<std::size_t>(id)].region;
      if (!r.is_inner()) sector_ch[static_cast<std::size_t>(r.sector)] = id;
    }
    for (const auto& n : nodes) {
      auto& role = plan.roles[static_cast<std::size_t>(n.id)];
      if (!n.alive || role.kind == RoleKind::ClusterHead) continue;
      if (n.region.is_inner()) {
        role = {RoleKind::DirectToBS, -1};
      } else if (int ch = sector_ch[static_cast<std::size_t>(n.region.sector)]; ch >= 0) {
        role = {RoleKind::Member, ch};
      }
    }
    for (int id : chs) plan.routes[id] = select_relay(nodes[static_cast<std::size_t>(id)], nodes, radio);
    return plan;
  }

  // LEACH / DEEC: nearest CH anywhere, single hop to the BS.
  for (const auto& n : nodes) {
    auto& role = plan.roles[static_cast<std::size_t>(n.id)];
    if (!n.alive || role.kind == RoleKind::ClusterHead) continue;
    if (chs.empty()) {
      role = {RoleKind::DirectToBS, -1};
      continue;
    }
    int best = -1;
    double best_d = 0.0;
    for (int id : chs) {
      const double d = distance(n.position, nodes[static_cast<std::size_t>(id)].position);
      if (best < 0 || d < best_d) {
        best = id;
        best_d = d;
      }
    }
    role = {RoleKind::Member, best};
  }
  for (int id : chs) plan.routes[id] = {id, kBaseStation};
  return plan;
}

namespace {

class AmDiscntProtocol final : public Protocol {
public:
  explicit AmDiscntProtocol(RadioParams radio) : radio_(radio) {}
  TransmissionPlan plan_round(const std::vector<Node>& nodes, int round, Rng&) override {
    return build_plan(nodes, elect_chs_amdiscnt(nodes), AmDiscnt{}, radio_, round);
  }
  ProtocolKind kind() const override { return AmDiscnt{}; }

private:
  RadioParams radio_;
};

template <class Kind, auto Elect>
class RotatingProtocol final : public Protocol {
public:
  RotatingProtocol(Kind kind, std::size_t n, RadioParams radio) : kind_(kind), history_(n), radio_(radio) {}
  TransmissionPlan plan_round(const std::vector<Node>& nodes, int round, Rng& rng) override {
    auto chs = Elect(nodes, round, kind_.p_opt, rng, history_);
    return build_plan(nodes, chs, kind_, radio_, round);
  }
  ProtocolKind kind() const override { return kind_; }

private:
  Kind kind_;
  ElectionHistory history_;
  RadioParams radio_;
};

} // namespace

std::unique_ptr<Protocol> make_protocol(const ProtocolKind& kind, std::size_t n_nodes, const RadioParams& radio) {
  return std::visit(
      [&](const auto& k) -> std::unique_ptr<Protocol> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, AmDiscnt>) {
          return std::make_unique<AmDiscntProtocol>(radio);
        } else {
          if (!(k.p_opt > 0.0 && k.p_opt < 1.0)) throw ConfigError("p_opt must lie in (0, 1)");
          if constexpr (std::is_same_v<T, Leach>)
            return std::make_unique<RotatingProtocol<Leach, &elect_chs_leach>>(k, n_nodes, radio);
          else
            return std::make_unique<RotatingProtocol<Deec, &elect_chs_deec>>(k, n_nodes, radio);
        }
      },
      kind);
}

} // namespace amdiscnt
