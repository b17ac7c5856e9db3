#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amdiscnt/engine.hpp"

namespace amdiscnt {

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool operator==(const Interval&) const = default;
};

/// Divide-by-n standard deviation. Throws std::domain_error on empty input.
double population_stddev(std::span<const double> samples);

double mean_of(std::span<const double> samples);

/// Two-sided standard-normal quantile z such that P(|Z| <= z) = confidence.
double z_quantile(double confidence);

/// mean +/- z * sigma / sqrt(n), sigma the population deviation.
Interval confidence_interval(std::span<const double> samples, double confidence);

enum class Metric { Alive, Dead, Sent, Received, ClusterHeads, Delay, Energy };
inline constexpr std::size_t kMetricCount = 7;
inline constexpr std::array<std::string_view, kMetricCount> kMetricNames{"alive", "dead",  "sent",  "received",
                                                                          "ch",    "delay", "energy"};

double metric_value(const RoundMetrics& m, Metric metric);

struct SeriesStats {
  std::vector<double> mean;
  std::vector<Interval> ci;

  bool operator==(const SeriesStats&) const = default;
};

struct MilestoneSummary {
  double mean_fnd = 0.0;
  double mean_hnd = 0.0;
  double mean_lnd = 0.0;
  double mean_throughput = 0.0; // cumulative packets received by the BS

  bool operator==(const MilestoneSummary&) const = default;
};

struct MultiRunStats {
  int runs = 0;
  std::array<SeriesStats, kMetricCount> series;
  MilestoneSummary milestones;

  const SeriesStats& operator[](Metric m) const { return series[static_cast<std::size_t>(m)]; }
  bool operator==(const MultiRunStats&) const = default;
};

/// Per-round mean and CI over runs. Runs that ended early (every node dead)
/// are padded to max_rounds with their terminal state and zero traffic;
/// missing milestones count as max_rounds.
MultiRunStats aggregate_runs(const std::vector<SimulationResult>& results, int max_rounds,
                             double confidence);

} // namespace amdiscnt
