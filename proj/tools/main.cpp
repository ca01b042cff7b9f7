#include <CLI11.hpp>
#include <iostream>

#include "spikewave/experiment/commands.hpp"

namespace fs = std::filesystem;
using namespace spikewave;

int main(int argc, char** argv) {
  CLI::App app{"Event-driven spiking S1-C1-S2-C2 network: training and evaluation"};
  app.require_subcommand(1);
  app.fallthrough();

  CliOptions opt;
  std::uint64_t seed = 0;
  app.add_option("--config", opt.config, "JSON config file");
  app.add_option("--data", opt.data, "dataset root: <root>/<class>/*.pgm");
  app.add_flag("--synthetic", opt.synthetic, "use the built-in synthetic dataset");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  app.add_option("--out", opt.out, "output root for run directories")->capture_default_str();
  app.add_option("--noise-sigma", opt.noise_sigma, "test-image noise for eval");
  app.add_option("--variant", opt.variant, "snn1|snn2|snn3|snn4")
      ->check(CLI::IsMember({"snn1", "snn2", "snn3", "snn4"}));
  app.add_flag("--force", opt.force, "overwrite a completed run");

  auto* train = app.add_subcommand("train", "train one run and write snapshots");
  int iterations = 0;
  int snapshot_every = 0;
  auto* it_opt = train->add_option("--iterations", iterations, "image presentations");
  auto* snap_opt = train->add_option("--snapshot-every", snapshot_every, "snapshot period");

  auto* eval = app.add_subcommand("eval", "score snapshots and write metrics CSVs");
  EvalRequest req;
  eval->add_option("inputs", req.inputs, "run directories or snapshot files")->required();
  eval->add_option("--csv-name", req.csv_name, "metrics file name inside each run");
  eval->add_flag("--include-initial", req.include_initial, "also score the untrained bank");
  eval->add_option("--summary", req.summary, "combined seed,iteration,... CSV");

  auto* recon = app.add_subcommand("reconstruct", "render each feature as a PGM");
  fs::path snapshot;
  fs::path recon_dir;
  recon->add_option("snapshot", snapshot, "weights_XXXX.snap")->required();
  recon->add_option("--output-dir", recon_dir, "default: <snapshot dir>/features");

  auto* sweep = app.add_subcommand("sweep-ratio", "train over a+/a- ratios");
  std::vector<double> ratios = default_sweep_ratios();
  std::vector<std::string> rule_names{"original", "probabilistic"};
  fs::path sweep_csv;
  sweep->add_option("--ratios", ratios, "ratios a+/a-");
  sweep->add_option("--rules", rule_names, "rules to sweep");
  sweep->add_option("--csv", sweep_csv, "default: <out>/sweep_ratio.csv");

  auto* stats = app.add_subcommand("stats", "t-test on peak accuracies of two summaries");
  fs::path file_a;
  fs::path file_b;
  stats->add_option("a", file_a, "summary CSV")->required();
  stats->add_option("b", file_b, "summary CSV")->required();

  CLI11_PARSE(app, argc, argv);
  if (*seed_opt) opt.seed = seed;
  if (*it_opt) opt.iterations = iterations;
  if (*snap_opt) opt.snapshot_every = snapshot_every;

  try {
    if (*train) {
      cmd_train(opt, std::cout);
    } else if (*eval) {
      cmd_eval(opt, req, std::cout);
    } else if (*recon) {
      if (recon_dir.empty()) recon_dir = snapshot.parent_path() / "features";
      const int n = cmd_reconstruct(snapshot, recon_dir);
      std::cout << n << " features written to " << recon_dir.string() << "\n";
    } else if (*sweep) {
      std::vector<Rule> rules;
      for (const std::string& name : rule_names) rules.push_back(parse_rule(name));
      if (sweep_csv.empty()) {
        fs::create_directories(opt.out);
        sweep_csv = opt.out / "sweep_ratio.csv";
      }
      cmd_sweep_ratio(opt, ratios, rules, sweep_csv, std::cout);
    } else if (*stats) {
      cmd_stats(file_a, file_b, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
