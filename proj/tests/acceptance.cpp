// Acceptance runner: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "amdiscnt/deployment.hpp"
#include "amdiscnt/energy.hpp"
#include "amdiscnt/experiment.hpp"
#include "reference_engine.hpp"

using namespace amdiscnt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Check {
public:
  void require(bool cond, const std::string& what) {
    if (!cond && out_.ok) {
      out_.ok = false;
      out_.detail = what;
    }
  }
  void note(const std::string& s) {
    if (out_.ok) out_.detail = s;
  }
  Outcome outcome() const { return out_; }

private:
  Outcome out_;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const MilestoneSummary& milestones_of(const ExperimentResult& r, const char* name) {
  for (const auto& p : r.per_protocol)
    if (protocol_name(p.kind) == name) return p.stats.milestones;
  throw std::logic_error(std::string("missing protocol ") + name);
}

ExperimentConfig battery(const char* preset) {
  return parse_config_text("", std::string(preset), "<acceptance>");
}

struct Battery {
  ExperimentResult result;
  double seconds = 0.0;
};

Battery run_battery(const char* preset) {
  const auto t0 = std::chrono::steady_clock::now();
  Battery b{run_experiment(battery(preset)), 0.0};
  b.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return b;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome fnd_ordering(const Battery& b, bool check_runtime) {
  Check c;
  const auto& am = milestones_of(b.result, "amdiscnt");
  const auto& le = milestones_of(b.result, "leach");
  const auto& de = milestones_of(b.result, "deec");
  c.require(am.mean_fnd > de.mean_fnd && de.mean_fnd > le.mean_fnd,
            fmt("FND am=%.1f deec=%.1f leach=%.1f", am.mean_fnd, de.mean_fnd, le.mean_fnd));
  if (check_runtime) c.require(b.seconds < 60.0, fmt("runtime %.2f s", b.seconds));
  c.note(fmt("FND am=%.1f deec=%.1f leach=%.1f", am.mean_fnd, de.mean_fnd, le.mean_fnd) +
         (check_runtime ? fmt(", %.2f s", b.seconds) : ""));
  return c.outcome();
}

Outcome throughput_ordering(const Battery& b) {
  Check c;
  const auto& am = milestones_of(b.result, "amdiscnt");
  const auto& le = milestones_of(b.result, "leach");
  const auto& de = milestones_of(b.result, "deec");
  const auto msg = fmt("throughput am=%.1f deec=%.1f leach=%.1f", am.mean_throughput, de.mean_throughput,
                       le.mean_throughput);
  c.require(am.mean_throughput > de.mean_throughput && am.mean_throughput > le.mean_throughput, msg);
  c.note(msg);
  return c.outcome();
}

// Steps every (protocol, seed) run of both presets, checking per-round
// conservation and, for AM-DisCNT, the CH count.
void step_all(Check& conservation, Check& ch_fixture) {
  long rounds = 0;
  double worst = 0.0;
  for (const char* preset : {"table1", "table2"}) {
    const auto cfg = battery(preset);
    for (const auto& kind : cfg.experiment.protocols) {
      for (auto seed : cfg.experiment.seeds) {
        NetworkConfig net = cfg.network;
        net.seed = seed;
        Simulation sim(net, kind);
        double before = 0.0;
        for (const auto& n : sim.nodes()) before += n.residual_energy;
        bool outer_death_seen = false;
        while (!sim.finished()) {
          bool sector_alive[8] = {};
          for (const auto& n : sim.nodes()) {
            if (n.region.is_inner()) continue;
            if (n.alive) sector_alive[n.region.sector] = true;
            else outer_death_seen = true;
          }
          int alive_sectors = 0;
          for (bool s : sector_alive) alive_sectors += s;

          const auto report = sim.step();
          ++rounds;
          const double after = report.metrics.total_residual_energy;
          const double drop = before - after;
          const double err = std::abs(drop - report.energy_charged);
          const double scale = std::max(report.energy_charged, 1e-300);
          worst = std::max(worst, err / scale);
          conservation.require(report.energy_charged == 0.0 ? drop == 0.0 : err <= 1e-9 * scale,
                               std::string(preset) + " " + protocol_name(kind) + " seed " + std::to_string(seed) +
                                   " round " + std::to_string(report.metrics.round) +
                                   fmt(": drop %.17g vs charged %.17g", drop, report.energy_charged));
          before = after;

          if (std::holds_alternative<AmDiscnt>(kind)) {
            const int expect = outer_death_seen ? alive_sectors : 8;
            ch_fixture.require(report.metrics.ch_count == expect,
                               std::string(preset) + " seed " + std::to_string(seed) + " round " +
                                   std::to_string(report.metrics.round) + ": ch_count " +
                                   std::to_string(report.metrics.ch_count) + " expected " + std::to_string(expect));
          }
        }
      }
    }
  }
  conservation.note(std::to_string(rounds) + fmt(" rounds, worst relative error %.3g", worst));
  ch_fixture.note("all AM-DisCNT rounds of both presets");
}

Outcome radio_checks() {
  Check c;
  const RadioParams radio;
  auto close = [](double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); };
  c.require(close(tx_cost(4000, 50.0, radio), 3.0e-4, 1e-12), fmt("tx(50) = %.17g", tx_cost(4000, 50.0, radio)));
  c.require(close(tx_cost(4000, 100.0, radio), 7.2e-4, 1e-12), fmt("tx(100) = %.17g", tx_cost(4000, 100.0, radio)));
  c.require(close(rx_cost(4000, radio), 2.0e-4, 1e-12), fmt("rx = %.17g", rx_cost(4000, radio)));
  const double d0 = crossover_distance(radio);
  c.require(std::abs(d0 - 87.7058) < 1e-4, fmt("d0 = %.10g", d0));
  const double below = tx_cost(4000, std::nextafter(d0, 0.0), radio);
  const double at = tx_cost(4000, d0, radio);
  c.require(close(below, at, 1e-12), fmt("continuity %.17g vs %.17g", below, at));
  c.note(fmt("d0 = %.6f m", d0));
  return c.outcome();
}

Outcome heterogeneity_totals() {
  Check c;
  const struct {
    HeterogeneitySpec spec;
    double expect;
  } cases[] = {{{TwoLevel{0.2, 1.0}, 0.5}, 60.0}, {{ThreeLevel{0.2, 0.5, 2.0, 3.0}, 0.5}, 85.0}};
  for (const auto& tc : cases) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      NetworkConfig net;
      net.heterogeneity = tc.spec;
      Rng rng(seed);
      const auto d = deploy(net, rng);
      double sum = 0.0;
      for (const auto& n : d.nodes) sum += n.initial_energy;
      c.require(sum == tc.expect && d.total_initial_energy == tc.expect,
                fmt("seed %.0f: total %.17g expected %.0f", double(seed), sum, tc.expect));
    }
  }
  c.note("60 J and 85 J over 20 seeds each");
  return c.outcome();
}

Outcome statistics_oracle() {
  Check c;
  const std::vector<double> s{2, 4, 6};
  const auto ci = confidence_interval(s, 0.95);
  c.require(std::abs(ci.lower - 2.1522) < 1e-3 && std::abs(ci.upper - 5.8478) < 1e-3,
            fmt("CI (%.6f, %.6f)", ci.lower, ci.upper));
  c.require(std::abs(population_stddev(s) - std::sqrt(8.0 / 3.0)) < 1e-12, "stddev [2,4,6]");
  c.require(population_stddev(std::vector<double>{5, 5, 5}) == 0.0, "stddev [5,5,5]");
  c.require(population_stddev(std::vector<double>{3.7}) == 0.0, "stddev single sample");

  Rng rng(7);
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> x(2 + rng.below(9));
    for (auto& v : x) v = 100.0 * (rng.uniform() - 0.5);
    const double shift = 1000.0 * (rng.uniform() - 0.5);
    const double scale = 0.01 + 10.0 * rng.uniform();
    std::vector<double> y;
    for (double v : x) y.push_back(scale * v + shift);
    const auto a = confidence_interval(x, 0.95);
    const auto b = confidence_interval(y, 0.95);
    const double mx = mean_of(x), my = mean_of(y);
    const double tol = 1e-9 * (std::abs(my) + scale * (a.upper - a.lower) + 1.0);
    c.require(std::abs(my - (scale * mx + shift)) <= tol, "mean not equivariant at trial " + std::to_string(t));
    c.require(std::abs((b.upper - my) - scale * (a.upper - mx)) <= tol,
              "half-width not equivariant at trial " + std::to_string(t));
  }
  c.note(fmt("CI (%.4f, %.4f), 1000 affine trials", ci.lower, ci.upper));
  return c.outcome();
}

Outcome determinism() {
  Check c;
  const auto base = fs::temp_directory_path() / "amdiscnt_acceptance";
  fs::remove_all(base);
  const auto first = emit_tables(run_experiment(battery("table1")), base / "a");
  const auto second = emit_tables(run_experiment(battery("table1")), base / "b");
  c.require(first.size() == second.size(), "manifest sizes differ");
  for (std::size_t i = 0; i < first.size() && i < second.size(); ++i)
    c.require(slurp(first[i]) == slurp(second[i]), first[i].filename().string() + " differs");
  c.note(std::to_string(first.size()) + " files identical");
  fs::remove_all(base);
  return c.outcome();
}

Outcome reference_oracle() {
  Check c;
  struct Case {
    std::string name;
    std::function<void(NetworkConfig&)> tweak;
    int rounds;
  };
  const std::vector<Case> cases{
      {"N=9", [](NetworkConfig&) {}, 3},
      {"N=9 starved", [](NetworkConfig& n) { n.heterogeneity = {Homogeneous{}, 7.0e-4}; }, 3},
      {"wide field with relays",
       [](NetworkConfig& n) {
         n.geometry = {60.0, 300.0};
         n.inner_fraction = 0.3;
         n.n_nodes = 12;
       },
       3},
      {"N=40 clusters", [](NetworkConfig& n) { n.n_nodes = 40; }, 3},
      {"N=40 to exhaustion",
       [](NetworkConfig& n) {
         n.n_nodes = 40;
         n.heterogeneity.e0 = 0.02;
       },
       200},
  };
  int compared = 0;
  for (const auto& tc : cases) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      NetworkConfig net;
      net.n_nodes = 9;
      net.seed = seed;
      tc.tweak(net);
      Simulation sim(net, AmDiscnt{});
      const auto expected = reference_amdiscnt(sim.nodes(), net, tc.rounds);
      for (int r = 0; r < tc.rounds && !sim.finished(); ++r) {
        const auto got = sim.step().metrics;
        ++compared;
        const auto& want = expected[static_cast<std::size_t>(r)];
        c.require(got == want, tc.name + " seed " + std::to_string(seed) + " round " + std::to_string(r) +
                                    fmt(": energy %.17g vs %.17g", got.total_residual_energy,
                                        want.total_residual_energy));
      }
    }
  }
  c.note(std::to_string(compared) + " rounds matched field for field");
  return c.outcome();
}

} // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* title, const Outcome& o) {
    std::printf("%s criterion %d: %s (%s)\n", o.ok ? "PASS" : "FAIL", id, title, o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  };
  auto guarded = [](auto&& fn) -> Outcome {
    try {
      return fn();
    } catch (const std::exception& e) {
      return {false, std::string("exception: ") + e.what()};
    }
  };

  Battery table1, table2;
  Outcome battery_error;
  try {
    table1 = run_battery("table1");
    table2 = run_battery("table2");
  } catch (const std::exception& e) {
    battery_error = {false, std::string("exception: ") + e.what()};
  }

  Check conservation, ch_fixture;
  Outcome step_error;
  try {
    step_all(conservation, ch_fixture);
  } catch (const std::exception& e) {
    step_error = {false, std::string("exception: ") + e.what()};
  }

  report(1, "first-node-death ordering, Table I", battery_error.ok ? fnd_ordering(table1, true) : battery_error);
  report(2, "AM-DisCNT cluster-head count", step_error.ok ? ch_fixture.outcome() : step_error);
  report(3, "throughput ordering, Table I", battery_error.ok ? throughput_ordering(table1) : battery_error);
  report(4, "energy conservation", step_error.ok ? conservation.outcome() : step_error);
  report(5, "radio model", guarded(radio_checks));
  report(6, "heterogeneity totals", guarded(heterogeneity_totals));
  report(7, "statistics oracle", guarded(statistics_oracle));
  report(8, "determinism", guarded(determinism));
  report(9, "small-instance reference", guarded(reference_oracle));
  Outcome t2 = battery_error;
  if (battery_error.ok) {
    const auto f = fnd_ordering(table2, false);
    const auto t = throughput_ordering(table2);
    t2 = {f.ok && t.ok, f.detail + "; " + t.detail};
  }
  report(10, "orderings under Table II", t2);

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
