#include "amdiscnt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "amdiscnt/engine.hpp"

namespace amdiscnt {

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned workers) {
  const auto& spec = config.experiment;
  if (spec.protocols.empty()) throw ConfigError("experiment needs at least one protocol");
  if (spec.seeds.empty()) throw ConfigError("experiment needs at least one seed");
  if (!(spec.confidence > 0.0 && spec.confidence < 1.0)) throw ConfigError("confidence must lie in (0, 1)");
  require_valid(config.network);

  const std::size_t n_seeds = spec.seeds.size();
  const std::size_t total = spec.protocols.size() * n_seeds;
  std::vector<SimulationResult> runs(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        NetworkConfig c = config.network;
        c.seed = spec.seeds[i % n_seeds];
        runs[i] = run_simulation(c, spec.protocols[i / n_seeds]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult out{config, {}};
  for (std::size_t p = 0; p < spec.protocols.size(); ++p) {
    std::vector<SimulationResult> group(runs.begin() + static_cast<long>(p * n_seeds),
                                        runs.begin() + static_cast<long>((p + 1) * n_seeds));
    out.per_protocol.push_back(
        {spec.protocols[p], aggregate_runs(group, config.network.max_rounds, spec.confidence)});
  }
  return out;
}

std::string series_header() {
  std::string h = "round";
  for (auto name : kMetricNames) {
    const std::string n(name);
    h += "," + n + "_mean," + n + "_lo," + n + "_hi";
  }
  return h;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw OutputError("failed writing " + path.string());
}

std::string series_csv(const MultiRunStats& s) {
  std::ostringstream o;
  o << series_header() << "\n";
  const std::size_t rounds = s.series[0].mean.size();
  for (std::size_t r = 0; r < rounds; ++r) {
    o << r;
    for (const auto& m : s.series)
      o << "," << format_number(m.mean[r]) << "," << format_number(m.ci[r].lower) << ","
        << format_number(m.ci[r].upper);
    o << "\n";
  }
  return o.str();
}

std::string summary_csv(const ExperimentResult& result) {
  std::ostringstream o;
  o << "protocol,runs,fnd_mean,hnd_mean,lnd_mean,throughput_mean\n";
  for (const auto& p : result.per_protocol) {
    const auto& m = p.stats.milestones;
    o << protocol_name(p.kind) << "," << p.stats.runs << "," << format_number(m.mean_fnd) << ","
      << format_number(m.mean_hnd) << "," << format_number(m.mean_lnd) << "," << format_number(m.mean_throughput)
      << "\n";
  }
  return o.str();
}

std::string meta_text(const ExperimentResult& result) {
  const auto& c = result.config;
  std::ostringstream o;
  std::string seeds;
  for (auto s : c.experiment.seeds) seeds += (seeds.empty() ? "" : ",") + std::to_string(s);
  o << "seeds = " << seeds << "\n"
    << "confidence = " << format_number(c.experiment.confidence) << "\n"
    << "z = " << format_number(z_quantile(c.experiment.confidence)) << "\n"
    << "ci_formula = mean +/- z * sigma / sqrt(n); sigma = population (divide-by-n) deviation over n runs\n"
    << "delay_mode = " << delay_mode_name(c.network.delay_mode) << "\n";
  if (std::holds_alternative<HopCountDelay>(c.network.delay_mode))
    o << "delay_interpretation = hops from originator to BS; an aggregate counts its route plus one member hop\n";
  else
    o << "delay_interpretation = sum over hops of per_hop + distance / speed; an aggregate adds its slowest member hop\n";
  o << "deployment_mode = " << deployment_mode_name(c.network.deployment_mode) << "\n"
    << "padding = runs ending before max_rounds are extended with their terminal state and zero traffic\n"
    << "milestones = first round index with dead >= 1 / dead >= N/2 / dead == N; missing counts as max_rounds\n"
    << "\n# configuration\n"
    << serialize_config(c);
  return o.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

} // namespace

std::vector<std::filesystem::path> emit_tables(const ExperimentResult& result, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw OutputError("cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> manifest;
  for (const auto& p : result.per_protocol) {
    auto path = out_dir / (protocol_name(p.kind) + ".csv");
    write_file(path, series_csv(p.stats));
    manifest.push_back(path);
  }
  manifest.push_back(out_dir / "summary.csv");
  write_file(manifest.back(), summary_csv(result));
  manifest.push_back(out_dir / "meta.txt");
  write_file(manifest.back(), meta_text(result));
  return manifest;
}

std::array<SeriesStats, kMetricCount> read_series_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw OutputError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != series_header())
    throw OutputError(path.string() + ": unexpected header");

  std::array<SeriesStats, kMetricCount> out;
  for (int lineno = 2; std::getline(in, line); ++lineno) {
    auto cells = split_csv(line);
    if (cells.size() != 1 + 3 * kMetricCount)
      throw OutputError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(1 + 3 * kMetricCount) + " columns");
    for (std::size_t k = 0; k < kMetricCount; ++k) {
      out[k].mean.push_back(parse_number(cells[1 + 3 * k]));
      out[k].ci.push_back({parse_number(cells[2 + 3 * k]), parse_number(cells[3 + 3 * k])});
    }
  }
  return out;
}

std::vector<SummaryRow> read_summary_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw OutputError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<SummaryRow> out;
  while (std::getline(in, line)) {
    auto c = split_csv(line);
    if (c.size() != 6) throw OutputError(path.string() + ": malformed row '" + line + "'");
    out.push_back({c[0], static_cast<int>(parse_number(c[1])),
                   {parse_number(c[2]), parse_number(c[3]), parse_number(c[4]), parse_number(c[5])}});
  }
  return out;
}

} // namespace amdiscnt
