#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spikewave/core/config.hpp"
#include "spikewave/eval/metrics.hpp"

namespace spikewave {

// Flags shared by every command.
struct CliOptions {
  std::filesystem::path config;  // empty: built-in defaults
  std::filesystem::path data;    // <root>/<class>/*.pgm; empty: synthetic
  bool synthetic = false;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = "runs";
  double noise_sigma = 0.0;
  std::string variant;  // snn1..snn4
  bool force = false;
  std::optional<int> iterations;
  std::optional<int> snapshot_every;
};

// Config file (or defaults), then --variant, --seed, --iterations and
// --snapshot-every on top. Validated.
RunConfig resolve_config(const CliOptions& opt);

// Trains one run into run_directory(out, cfg); returns that directory.
// Refuses to touch a completed run unless opt.force.
std::filesystem::path cmd_train(const CliOptions& opt, std::ostream& log);

struct EvalRequest {
  // Run directories (all of their snapshots) or individual snapshot files.
  std::vector<std::filesystem::path> inputs;
  // Per-run metrics file name inside each run directory; empty picks
  // metrics.csv or metrics_noise<sigma>.csv.
  std::string csv_name;
  // Also evaluate the untrained bank as iteration 0.
  bool include_initial = false;
  // Optional multi-run file: seed,iteration,accuracy_eq,roc_auc,selected_weights
  std::filesystem::path summary;
};

// Evaluates every snapshot; returns the rows of the last input.
std::vector<RunRecord> cmd_eval(const CliOptions& opt, const EvalRequest& req,
                                std::ostream& log);

// Writes feature_00.pgm ... into `out_dir`; returns the number written.
int cmd_reconstruct(const std::filesystem::path& snapshot,
                    const std::filesystem::path& out_dir);

struct SweepRow {
  Rule rule = Rule::Original;
  double ratio = 0.0;
  double selected_weights = 0.0;
  double accuracy_eq = 0.0;
  double roc_auc = 0.0;
};

// The ratios 4/9, 4/8, 4/7, 4/6, 4/5, 4/4, 4/3, 4/2, 4, 8.
std::vector<double> default_sweep_ratios();

// One full training run per (rule, ratio); metrics of the final bank.
std::vector<SweepRow> cmd_sweep_ratio(const CliOptions& opt,
                                      const std::vector<double>& ratios,
                                      const std::vector<Rule>& rules,
                                      const std::filesystem::path& csv,
                                      std::ostream& log);

struct StatsResult {
  std::vector<double> peaks_a;
  std::vector<double> peaks_b;
  TTestResult test;
  std::string stars;
};

// Peak accuracy per seed from two summary files, then the two-tailed
// t-test. Prints "t=... df=... p=... band=...".
StatsResult cmd_stats(const std::filesystem::path& a,
                      const std::filesystem::path& b, std::ostream& out);

// seed -> peak accuracy_eq, from a summary file.
std::vector<double> summary_peaks(const std::filesystem::path& path);

}  // namespace spikewave
