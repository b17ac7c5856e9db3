#include "amdiscnt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace amdiscnt {

namespace {

bool all_equal(std::span<const double> s) {
  return std::adjacent_find(s.begin(), s.end(), std::not_equal_to<>()) == s.end();
}

// Summing in sorted order makes results independent of run order.
std::vector<double> sorted(std::span<const double> s) {
  std::vector<double> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

} // namespace

double mean_of(std::span<const double> samples) {
  if (samples.empty()) throw std::domain_error("mean of empty sample set");
  if (all_equal(samples)) return samples.front();
  double sum = 0.0;
  for (double x : sorted(samples)) sum += x;
  return sum / static_cast<double>(samples.size());
}

double population_stddev(std::span<const double> samples) {
  if (samples.empty()) throw std::domain_error("standard deviation of empty sample set");
  if (all_equal(samples)) return 0.0;
  const double mean = mean_of(samples);
  double ss = 0.0;
  for (double x : sorted(samples)) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(samples.size()));
}

double z_quantile(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::domain_error("confidence must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + confidence / 2.0);
}

Interval confidence_interval(std::span<const double> samples, double confidence) {
  const double mean = mean_of(samples);
  const double half =
      z_quantile(confidence) * population_stddev(samples) / std::sqrt(static_cast<double>(samples.size()));
  return {mean - half, mean + half};
}

double metric_value(const RoundMetrics& m, Metric metric) {
  switch (metric) {
  case Metric::Alive: return m.alive;
  case Metric::Dead: return m.dead;
  case Metric::Sent: return static_cast<double>(m.packets_sent_to_bs);
  case Metric::Received: return static_cast<double>(m.packets_received_by_bs);
  case Metric::ClusterHeads: return m.ch_count;
  case Metric::Delay: return m.mean_delay;
  case Metric::Energy: return m.total_residual_energy;
  }
  return 0.0;
}

MultiRunStats aggregate_runs(const std::vector<SimulationResult>& results, int max_rounds, double confidence) {
  if (results.empty()) throw std::invalid_argument("aggregate_runs: no results");
  for (const auto& r : results) {
    const auto len = static_cast<int>(r.per_round.size());
    const bool exhausted = !r.per_round.empty() && r.per_round.back().alive == 0;
    if (len > max_rounds || (len < max_rounds && !exhausted))
      throw std::invalid_argument("aggregate_runs: run length " + std::to_string(len) +
                                  " does not match max_rounds " + std::to_string(max_rounds));
  }

  MultiRunStats out;
  out.runs = static_cast<int>(results.size());
  for (auto& s : out.series) {
    s.mean.reserve(static_cast<std::size_t>(max_rounds));
    s.ci.reserve(static_cast<std::size_t>(max_rounds));
  }

  std::vector<double> samples(results.size());
  for (int round = 0; round < max_rounds; ++round) {
    for (std::size_t k = 0; k < kMetricCount; ++k) {
      const auto metric = static_cast<Metric>(k);
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& series = results[i].per_round;
        if (round < static_cast<int>(series.size())) {
          samples[i] = metric_value(series[static_cast<std::size_t>(round)], metric);
        } else {
          RoundMetrics pad = series.back();
          pad.packets_sent_to_bs = pad.packets_received_by_bs = 0;
          pad.ch_count = 0;
          pad.mean_delay = 0.0;
          samples[i] = metric_value(pad, metric);
        }
      }
      out.series[k].mean.push_back(mean_of(samples));
      out.series[k].ci.push_back(confidence_interval(samples, confidence));
    }
  }

  auto milestone_mean = [&](auto get) {
    std::vector<double> v;
    for (const auto& r : results) v.push_back(static_cast<double>(get(r).value_or(max_rounds)));
    return mean_of(v);
  };
  out.milestones.mean_fnd = milestone_mean([](const SimulationResult& r) { return r.first_node_death; });
  out.milestones.mean_hnd = milestone_mean([](const SimulationResult& r) { return r.half_nodes_death; });
  out.milestones.mean_lnd = milestone_mean([](const SimulationResult& r) { return r.last_node_death; });
  std::vector<double> thr;
  for (const auto& r : results) thr.push_back(static_cast<double>(r.cumulative_received));
  out.milestones.mean_throughput = mean_of(thr);
  return out;
}

} // namespace amdiscnt
