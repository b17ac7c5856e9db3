#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "amdiscnt/config_io.hpp"
#include "amdiscnt/stats.hpp"

namespace amdiscnt {

struct ProtocolStats {
  ProtocolKind kind;
  MultiRunStats stats;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ProtocolStats> per_protocol; // in request order
};

/// Runs every (protocol, seed) pair and aggregates per protocol. `workers`
/// threads share the pairs (0 = hardware concurrency); the output does not
/// depend on scheduling.
ExperimentResult run_experiment(const ExperimentConfig& config, unsigned workers = 0);

class OutputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Writes <protocol>.csv per protocol, summary.csv and meta.txt into out_dir
/// (created if missing). Returns the written paths in that order.
std::vector<std::filesystem::path> emit_tables(const ExperimentResult& result, const std::filesystem::path& out_dir);

std::string series_header();

/// Parses a <protocol>.csv back into per-metric series.
std::array<SeriesStats, kMetricCount> read_series_table(const std::filesystem::path& path);

struct SummaryRow {
  std::string protocol;
  int runs = 0;
  MilestoneSummary milestones;
};
std::vector<SummaryRow> read_summary_table(const std::filesystem::path& path);

} // namespace amdiscnt
