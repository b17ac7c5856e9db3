#pragma once

#include <limits>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "amdiscnt/model.hpp"
#include "amdiscnt/random.hpp"

namespace amdiscnt {

inline constexpr int kBaseStation = -1;

struct AmDiscnt {
  bool operator==(const AmDiscnt&) const = default;
};
struct Leach {
  double p_opt = 0.1;
  bool operator==(const Leach&) const = default;
};
struct Deec {
  double p_opt = 0.1;
  bool operator==(const Deec&) const = default;
};
using ProtocolKind = std::variant<AmDiscnt, Leach, Deec>;

/// "amdiscnt", "leach" or "deec".
std::string protocol_name(const ProtocolKind& kind);
/// Inverse of protocol_name; p_opt applies to LEACH/DEEC. Throws std::invalid_argument.
ProtocolKind parse_protocol(const std::string& name, double p_opt = 0.1);

enum class RoleKind { Idle, ClusterHead, Member, DirectToBS };

struct Role {
  RoleKind kind = RoleKind::Idle;
  int ch_id = -1; // only for Member

  bool operator==(const Role&) const = default;
};

/// One round's roles and CH routes. Relaying is a tag on top of a node's own
/// role: a relay is any intermediate hop of some route.
struct TransmissionPlan {
  int round = 0;
  std::vector<Role> roles;                 // indexed by node id
  std::map<int, std::vector<int>> routes;  // ch id -> [ch, (relay), kBaseStation]

  std::vector<int> cluster_heads() const;
  std::vector<int> relays() const;
  std::vector<int> members_of(int ch_id) const;
};

/// Last round each node served as CH. Eligibility resets at every epoch
/// boundary (the set G of LEACH); DEEC uses each node's own epoch length.
struct ElectionHistory {
  static constexpr long kNever = std::numeric_limits<long>::min() / 2;
  std::vector<long> last_ch_round;

  explicit ElectionHistory(std::size_t n = 0) : last_ch_round(n, kNever) {}

  /// Not yet CH in the current epoch [floor(r/epoch)*epoch, +epoch).
  bool eligible(int id, int round, long epoch) const {
    const long last = last_ch_round[static_cast<std::size_t>(id)];
    return last == kNever || last < round - round % epoch;
  }
};

/// Max residual energy per populated outer sector; lowest id breaks ties.
/// Result is sorted by id.
std::vector<int> elect_chs_amdiscnt(const std::vector<Node>& nodes);

/// Rotating-epoch threshold p / (1 - p (r mod 1/p)).
double leach_threshold(double p, int round);

std::vector<int> elect_chs_leach(const std::vector<Node>& nodes, int round, double p_opt, Rng& rng,
                                 ElectionHistory& history);

/// DEEC probability p_opt * E_i / mean alive residual, capped at 1.
double deec_probability(double p_opt, double residual, double mean_residual);

std::vector<int> elect_chs_deec(const std::vector<Node>& nodes, int round, double p_opt, Rng& rng,
                                ElectionHistory& history);

/// Route for an AM-DisCNT CH: through the inner node minimizing the summed
/// transmit cost, unless direct is no worse.
std::vector<int> select_relay(const Node& ch, const std::vector<Node>& nodes, const RadioParams& radio);

TransmissionPlan build_plan(const std::vector<Node>& nodes, const std::vector<int>& ch_set,
                            const ProtocolKind& kind, const RadioParams& radio, int round = 0);

double distance(Position a, Position b);
double distance_to_bs(Position p);

/// Stateful per-simulation election + planning.
class Protocol {
public:
  virtual ~Protocol() = default;
  virtual TransmissionPlan plan_round(const std::vector<Node>& nodes, int round, Rng& rng) = 0;
  virtual ProtocolKind kind() const = 0;
};

std::unique_ptr<Protocol> make_protocol(const ProtocolKind& kind, std::size_t n_nodes, const RadioParams& radio);

} // namespace amdiscnt
