#include "relreg/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "relreg/error.hpp"

namespace relreg {

namespace {

std::string format_number(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buffer, end);
}

double parse_number(const std::string& text) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw std::runtime_error("CSV: invalid number '" + text + "'");
  return value;
}

double record_clock(const BenchRecord& r, bool by_time) {
  return by_time ? r.elapsed_ms : static_cast<double>(r.iteration);
}

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json stat_json(const CheckpointStat& s) {
  return {{"clock", s.clock},   {"median", number_or_null(s.median)}, {"q1", number_or_null(s.q1)},
          {"q3", number_or_null(s.q3)}, {"mean", number_or_null(s.mean)}, {"stddev", s.stddev},
          {"solved", s.solved}};
}

}  // namespace

SamplerSpec parse_sampler_spec(const std::string& text) {
  SamplerSpec spec;
  spec.label = text;
  const auto colon = text.find(':');
  spec.kind = parse_sampler_kind(text.substr(0, colon));
  if (text.find(',') != std::string::npos) throw ConfigError("sampler label must not contain commas");
  if (colon != std::string::npos) {
    if (spec.kind != SamplerKind::transition)
      throw ConfigError("only the transition sampler takes a temperature suffix: '" + text + "'");
    try {
      spec.t_init = parse_number(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError("invalid initial temperature in '" + text + "'");
    }
    if (!(spec.t_init > 0.0)) throw ConfigError("initial temperature must be positive in '" + text + "'");
  }
  return spec;
}

void BenchConfig::validate() const {
  if (trials < 1) throw ConfigError("bench: trials must be at least 1");
  if (threads < 1) throw ConfigError("bench: threads must be at least 1");
  if (samplers.empty()) throw ConfigError("bench: no samplers configured");
  for (std::size_t i = 0; i < samplers.size(); ++i)
    for (std::size_t j = i + 1; j < samplers.size(); ++j)
      if (samplers[i].label == samplers[j].label)
        throw ConfigError("bench: duplicate sampler '" + samplers[i].label + "'");
}

void RunConfig::validate() const {
  build_environment(environment);
  planner.validate();
  bench.validate();
  if (bench.deterministic && planner.time_budget_ms)
    throw ConfigError("bench: deterministic runs take an iteration budget only (drop time_budget_ms)");
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return kInfinity;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  if (frac == 0.0 || sorted[lo] == sorted[hi]) return sorted[lo];
  if (!std::isfinite(sorted[hi])) return kInfinity;
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BenchResult run_benchmark(const RunConfig& config) {
  config.validate();
  const Environment env = build_environment(config.environment);
  return run_benchmark(config, env);
}

BenchResult run_benchmark(const RunConfig& config, const Environment& env) {
  config.planner.validate();
  config.bench.validate();
  const auto& bench = config.bench;
  const std::size_t jobs = bench.samplers.size() * static_cast<std::size_t>(bench.trials);

  std::vector<std::vector<BenchRecord>> series(jobs);
  std::vector<char> failed(jobs, 0);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const auto& spec = bench.samplers[job / bench.trials];
      const int trial = static_cast<int>(job % bench.trials);
      PlannerConfig pc = config.planner;
      pc.sampler = spec.kind;
      pc.t_init = spec.t_init;
      pc.seed = bench.seed + static_cast<std::uint64_t>(trial);
      try {
        series[job] = plan(env, pc, trial).records;
      } catch (const std::exception&) {
        failed[job] = 1;
        series[job].clear();
      }
    }
  };
  const auto thread_count = std::min<std::size_t>(static_cast<std::size_t>(bench.threads), jobs);
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < thread_count; ++i) pool.emplace_back(worker);
  }

  BenchResult result;
  std::vector<int> failed_per_sampler(bench.samplers.size(), 0);
  for (std::size_t job = 0; job < jobs; ++job) {
    const auto& label = bench.samplers[job / bench.trials].label;
    if (failed[job]) ++failed_per_sampler[job / bench.trials];
    for (const auto& rec : series[job]) result.rows.push_back(BenchRow{label, rec});
  }
  result.summary = summarize(result.rows, config, env.name, failed_per_sampler);
  return result;
}

BenchSummary summarize(const std::vector<BenchRow>& rows, const RunConfig& config,
                       const std::string& world, const std::vector<int>& failed_per_sampler) {
  const auto schedule = CheckpointSchedule::for_config(config.planner);
  BenchSummary summary;
  summary.world = world;
  summary.by_time = schedule.by_time;
  const double horizon = schedule.by_time ? *config.planner.time_budget_ms
                                          : static_cast<double>(config.planner.max_iterations.value_or(0));
  const auto points = schedule.points(horizon);

  for (std::size_t s = 0; s < config.bench.samplers.size(); ++s) {
    const auto& label = config.bench.samplers[s].label;
    std::vector<std::vector<BenchRecord>> trials(static_cast<std::size_t>(config.bench.trials));
    for (const auto& row : rows)
      if (row.sampler == label && row.record.trial >= 0 && row.record.trial < config.bench.trials)
        trials[static_cast<std::size_t>(row.record.trial)].push_back(row.record);

    auto stat_at = [&](double clock, bool final_only) {
      CheckpointStat stat;
      stat.clock = clock;
      std::vector<double> values;
      for (const auto& series : trials) {
        if (series.empty()) {
          values.push_back(kInfinity);
          continue;
        }
        const BenchRecord* pick = &series.back();
        if (!final_only)
          for (const auto& rec : series)
            if (record_clock(rec, schedule.by_time) >= clock) {
              pick = &rec;
              break;
            }
        values.push_back(pick->best_cost.value_or(kInfinity));
      }
      std::sort(values.begin(), values.end());
      stat.median = quantile_sorted(values, 0.5);
      stat.q1 = quantile_sorted(values, 0.25);
      stat.q3 = quantile_sorted(values, 0.75);
      double sum = 0.0, sum_sq = 0.0;
      for (double v : values)
        if (std::isfinite(v)) {
          ++stat.solved;
          sum += v;
          sum_sq += v * v;
        }
      if (stat.solved > 0) {
        stat.mean = sum / stat.solved;
        stat.stddev = std::sqrt(std::max(0.0, sum_sq / stat.solved - stat.mean * stat.mean));
      }
      return stat;
    };

    SamplerSummary ss;
    ss.label = label;
    ss.trials = config.bench.trials;
    ss.failed_trials = s < failed_per_sampler.size() ? failed_per_sampler[s] : 0;
    for (double p : points) ss.checkpoints.push_back(stat_at(p, false));
    ss.final = stat_at(horizon, true);
    ss.successes = ss.final.solved;
    ss.success_rate = static_cast<double>(ss.successes) / ss.trials;
    summary.samplers.push_back(std::move(ss));
  }
  return summary;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool include_timing) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) {
    const auto& r = row.record;
    out << row.sampler << ',' << r.trial << ',' << r.iteration << ','
        << (include_timing ? format_number(r.elapsed_ms) : std::string()) << ','
        << (r.best_cost ? format_number(*r.best_cost) : std::string()) << ',' << r.vertices << '\n';
  }
}

void emit_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path, bool include_timing) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(out, rows, include_timing);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<BenchRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("CSV: unexpected header");
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 6) throw std::runtime_error("CSV: expected 6 fields in '" + line + "'");
    BenchRow row;
    row.sampler = fields[0];
    row.record.trial = static_cast<int>(parse_number(fields[1]));
    row.record.iteration = static_cast<std::int64_t>(parse_number(fields[2]));
    row.record.elapsed_ms = fields[3].empty() ? 0.0 : parse_number(fields[3]);
    if (!fields[4].empty()) row.record.best_cost = parse_number(fields[4]);
    row.record.vertices = static_cast<std::size_t>(parse_number(fields[5]));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string summary_json(const BenchSummary& summary) {
  nlohmann::json j;
  j["world"] = summary.world;
  j["clock"] = summary.by_time ? "elapsed_ms" : "iteration";
  j["samplers"] = nlohmann::json::array();
  for (const auto& s : summary.samplers) {
    nlohmann::json checkpoints = nlohmann::json::array();
    for (const auto& c : s.checkpoints) checkpoints.push_back(stat_json(c));
    j["samplers"].push_back({{"label", s.label},
                             {"trials", s.trials},
                             {"successes", s.successes},
                             {"failed_trials", s.failed_trials},
                             {"success_rate", s.success_rate},
                             {"checkpoints", checkpoints},
                             {"final", stat_json(s.final)}});
  }
  return j.dump(2) + "\n";
}

std::string plot_script(const BenchSummary& summary, const std::string& csv_name) {
  std::ostringstream out;
  out << R"py(#!/usr/bin/env python3
"""Convergence and success-rate plots for one benchmark run.

Generated by relreg. Raw per-trial records: )py"
      << csv_name << R"py(
"""
import json

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV_PATH = ")py" << csv_name << R"py("
SUMMARY = json.loads(r""")py" << summary_json(summary) << R"py(""")


def convergence(ax, summary):
    for sampler in summary["samplers"]:
        points = [c for c in sampler["checkpoints"] if c["median"] is not None]
        if not points:
            ax.plot([], [], label=sampler["label"] + " (no solution)")
            continue
        xs = [c["clock"] for c in points]
        line, = ax.plot(xs, [c["median"] for c in points], label=sampler["label"])
        q1 = [c["q1"] for c in points]
        q3 = [c["q3"] if c["q3"] is not None else c["median"] for c in points]
        ax.fill_between(xs, q1, q3, color=line.get_color(), alpha=0.25)
    ax.set_xscale("log")
    ax.set_xlabel("time [ms]" if summary["clock"] == "elapsed_ms" else "iterations")
    ax.set_ylabel("best solution cost (median, quartile band)")
    ax.set_title(summary["world"])
    ax.legend()


def success_rate(ax, summary):
    labels = [s["label"] for s in summary["samplers"]]
    rates = [100.0 * s["success_rate"] for s in summary["samplers"]]
    ax.bar(labels, rates)
    ax.set_ylim(0, 100)
    ax.set_ylabel("successful trials [%]")
    ax.set_title(summary["world"] + ": success rate")


def main():
    fig, ax = plt.subplots(figsize=(7, 4.5))
    convergence(ax, SUMMARY)
    fig.tight_layout()
    fig.savefig(SUMMARY["world"] + "_convergence.png", dpi=150)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    success_rate(ax, SUMMARY)
    fig.tight_layout()
    fig.savefig(SUMMARY["world"] + "_success_rate.png", dpi=150)


if __name__ == "__main__":
    main()
)py";
  return out.str();
}

void emit_plot_script(const BenchSummary& summary, const std::filesystem::path& path,
                      const std::string& csv_name) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << plot_script(summary, csv_name);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_outputs(const BenchResult& result, const RunConfig& config) {
  const std::filesystem::path dir = config.bench.out_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
  emit_csv(result.rows, dir / "records.csv", !config.bench.deterministic);
  {
    std::ofstream out(dir / "summary.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / "summary.json").string());
    out << summary_json(result.summary);
  }
  emit_plot_script(result.summary, dir / "plot.py", "records.csv");
}

}  // namespace relreg
