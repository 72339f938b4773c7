#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "relreg/environment.hpp"
#include "relreg/planner.hpp"

namespace relreg {

/// A sampler entry of a benchmark, e.g. "relevant" or "transition:0.1".
struct SamplerSpec {
  std::string label;
  SamplerKind kind = SamplerKind::relevant;
  double t_init = 1.0;
};

/// Throws ConfigError on unknown names or a malformed temperature suffix.
SamplerSpec parse_sampler_spec(const std::string& text);

struct BenchConfig {
  std::vector<SamplerSpec> samplers;
  int trials = 1;
  std::uint64_t seed = 1;  // trial t runs with seed + t
  std::string out_dir = "bench_out";
  int threads = 1;
  /// Iteration budgets only; elapsed_ms is left blank so output is reproducible byte for byte.
  bool deterministic = false;

  void validate() const;
};

struct RunConfig {
  EnvironmentConfig environment;
  PlannerConfig planner;
  BenchConfig bench;

  /// Builds the environment and validates every section; throws ConfigError.
  void validate() const;
};

struct BenchRow {
  std::string sampler;
  BenchRecord record;
};

struct CheckpointStat {
  double clock = 0.0;  // ms or iterations
  double median = kInfinity;
  double q1 = kInfinity;
  double q3 = kInfinity;
  double mean = kInfinity;  // over trials with a solution
  double stddev = 0.0;
  int solved = 0;
};

struct SamplerSummary {
  std::string label;
  int trials = 0;
  int successes = 0;
  int failed_trials = 0;  // trials that threw and were quarantined
  double success_rate = 0.0;
  std::vector<CheckpointStat> checkpoints;  // last entry is the budget horizon
  CheckpointStat final;                     // each trial's last record
};

struct BenchSummary {
  std::string world;
  bool by_time = false;
  std::vector<SamplerSummary> samplers;
};

struct BenchResult {
  std::vector<BenchRow> rows;  // ordered by (sampler, trial, iteration)
  BenchSummary summary;
};

/// Linear-interpolation quantile of sorted data; +inf entries are allowed.
double quantile_sorted(const std::vector<double>& sorted, double q);

BenchResult run_benchmark(const RunConfig& config);
BenchResult run_benchmark(const RunConfig& config, const Environment& env);

BenchSummary summarize(const std::vector<BenchRow>& rows, const RunConfig& config,
                       const std::string& world, const std::vector<int>& failed_per_sampler);

inline constexpr const char* kCsvHeader = "sampler,trial,iteration,elapsed_ms,best_cost,vertices";

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool include_timing = true);
void emit_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path,
              bool include_timing = true);
std::vector<BenchRow> read_csv(std::istream& in);

/// matplotlib script with the summary embedded as a plain data literal: one
/// convergence chart (median with quartile band) and one success-rate bar chart.
std::string plot_script(const BenchSummary& summary, const std::string& csv_name);
void emit_plot_script(const BenchSummary& summary, const std::filesystem::path& path,
                      const std::string& csv_name);

std::string summary_json(const BenchSummary& summary);

/// Writes records.csv, summary.json and plot.py into config.bench.out_dir.
void write_outputs(const BenchResult& result, const RunConfig& config);

}  // namespace relreg
