#include "spikewave/experiment/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "spikewave/core/error.hpp"
#include "spikewave/core/snapshot.hpp"
#include "spikewave/experiment/experiment.hpp"
#include "spikewave/ingestion/image_io.hpp"
#include "spikewave/network/reconstruct.hpp"

namespace spikewave {
namespace fs = std::filesystem;
namespace {

constexpr const char* kRunInfo = "run.json";

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

fs::path data_root(const CliOptions& opt) {
  if (opt.synthetic && !opt.data.empty()) {
    throw ConfigError("--synthetic and --data are mutually exclusive");
  }
  return opt.synthetic ? fs::path{} : opt.data;
}

std::vector<std::pair<int, fs::path>> list_snapshots(const fs::path& dir) {
  std::vector<std::pair<int, fs::path>> snaps;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (const auto it = snapshot_iteration(entry.path())) {
      snaps.emplace_back(*it, entry.path());
    }
  }
  std::sort(snaps.begin(), snaps.end());
  return snaps;
}

// One evaluation context: a config, its data and encoded split.
struct EvalContext {
  RunConfig cfg;
  Network net;
  EncodedSplit data;

  EvalContext(const RunConfig& c, const fs::path& root, double sigma)
      : cfg(c), net(c) {
    const Split split = build_split(cfg, root);
    data = encode_split(split, net);
    if (sigma > 0.0) {
      const Split noisy = with_test_noise(split, sigma, cfg.seed);
      EncodedSplit enc = encode_split(noisy, net);
      data.test = std::move(enc.test);
    }
  }
};

void check_bank(const SynapseBank& bank, const RunConfig& cfg,
                const fs::path& path) {
  const auto rf = static_cast<std::size_t>(cfg.s2_rf);
  const TensorShape want{rf, rf, static_cast<std::size_t>(cfg.n_orientations)};
  if (bank.n_features() != static_cast<std::size_t>(cfg.n_features) ||
      bank.shape() != want) {
    throw DimensionError(path.string() + ": snapshot dimensions do not match the config");
  }
}

RunRecord score_bank(const SynapseBank& bank, int iteration, EvalContext& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto train = c2_features(bank, ctx.data.train, ctx.data.train_labels, ctx.net);
  const auto test = c2_features(bank, ctx.data.test, ctx.data.test_labels, ctx.net);
  const RbfModel model = rbf_train(train, ctx.cfg.ridge);
  const std::vector<double> scores = model.score_all(test);
  RunRecord r;
  r.iteration = iteration;
  r.accuracy_eq = equilibrium_accuracy(scores, ctx.data.test_labels).accuracy;
  r.roc_auc = roc_auc(scores, ctx.data.test_labels);
  r.selected_weights = count_selected_weights(bank, selection_threshold(ctx.cfg.rule));
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

RunConfig resolve_config(const CliOptions& opt) {
  RunConfig cfg = opt.config.empty() ? RunConfig{} : load_config(opt.config);
  if (!opt.variant.empty()) apply_variant(cfg, opt.variant);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.iterations) cfg.n_iterations = *opt.iterations;
  if (opt.snapshot_every) cfg.snapshot_every = *opt.snapshot_every;
  cfg.validate();
  return cfg;
}

fs::path cmd_train(const CliOptions& opt, std::ostream& log) {
  const RunConfig cfg = resolve_config(opt);
  const fs::path root = data_root(opt);
  const fs::path dir = run_directory(opt.out, cfg);
  if (fs::exists(dir / kCompleteMarker) && !opt.force) {
    throw IoError(dir.string() + " is already complete (use --force to overwrite)");
  }
  if (fs::exists(dir)) fs::remove_all(dir);
  fs::create_directories(dir);
  save_config(cfg, dir / "config.json");
  {
    std::ofstream info(dir / kRunInfo);
    info << nlohmann::json{{"data", root.string()}}.dump(2) << "\n";
  }
  log << config_to_json(cfg) << "\n";

  std::ofstream train_log(dir / "train.log");
  train_log << "iteration,wall_time\n";
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.n_iterations > 0) {
    const Split split = build_split(cfg, root);
    Network net(cfg);
    const EncodedSplit data = encode_split(split, net);
    const auto order = presentation_order(split, cfg);
    train_run(cfg, data, order, net, [&](int done, const SynapseBank& bank) {
      save_snapshot(bank, dir / snapshot_filename(done));
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      train_log << done << "," << format("%.3f", secs) << "\n";
      log << "iteration " << done << ": snapshot saved, " << format("%.1f", secs) << " s\n";
    });
  }
  train_log.close();
  std::ofstream(dir / kCompleteMarker) << "ok\n";
  log << "run directory: " << dir.string() << "\n";
  return dir;
}

std::vector<RunRecord> cmd_eval(const CliOptions& opt, const EvalRequest& req,
                                std::ostream& log) {
  if (req.inputs.empty()) throw ConfigError("eval needs a run directory or snapshot");
  if (!(opt.noise_sigma >= 0.0)) throw ConfigError("--noise-sigma must be >= 0");
  std::ofstream summary;
  if (!req.summary.empty()) {
    summary.open(req.summary);
    if (!summary) throw IoError("cannot write " + req.summary.string());
    summary << "seed,iteration,accuracy_eq,roc_auc,selected_weights\n";
  }

  std::vector<RunRecord> rows;
  for (const fs::path& input : req.inputs) {
    if (!fs::exists(input)) throw IoError("missing snapshot or run: " + input.string());
    const bool is_run = fs::is_directory(input);
    const fs::path run_dir = is_run ? input : input.parent_path();
    const bool has_cfg = fs::exists(run_dir / "config.json");
    const RunConfig cfg = has_cfg ? load_config(run_dir / "config.json") : resolve_config(opt);

    fs::path root = data_root(opt);
    if (opt.data.empty() && !opt.synthetic && fs::exists(run_dir / kRunInfo)) {
      std::ifstream f(run_dir / kRunInfo);
      root = nlohmann::json::parse(f).value("data", std::string{});
    }

    std::vector<std::pair<int, fs::path>> snaps;
    if (is_run) {
      snaps = list_snapshots(input);
    } else {
      snaps.emplace_back(snapshot_iteration(input).value_or(0), input);
    }
    if (snaps.empty() && !req.include_initial) {
      throw IoError(input.string() + " contains no snapshots");
    }

    EvalContext ctx(cfg, root, opt.noise_sigma);
    rows.clear();
    if (req.include_initial) {
      Rng init = rng_create(cfg.seed).split("init");
      rows.push_back(score_bank(init_bank(cfg, init), 0, ctx));
    }
    for (const auto& [iteration, path] : snaps) {
      const SynapseBank bank = load_snapshot(path);
      check_bank(bank, cfg, path);
      rows.push_back(score_bank(bank, iteration, ctx));
    }
    for (const RunRecord& r : rows) {
      log << input.string() << " iteration " << r.iteration << ": accuracy_eq "
          << format("%.4f", r.accuracy_eq) << " roc_auc " << format("%.4f", r.roc_auc)
          << " selected " << format("%.2f", r.selected_weights) << "\n";
      if (summary.is_open()) {
        char line[160];
        std::snprintf(line, sizeof line, "%llu,%d,%.6f,%.6f,%.3f\n",
                      static_cast<unsigned long long>(cfg.seed), r.iteration,
                      r.accuracy_eq, r.roc_auc, r.selected_weights);
        summary << line;
      }
    }
    if (is_run) {
      std::string name = req.csv_name;
      if (name.empty()) {
        name = opt.noise_sigma > 0.0
                   ? "metrics_noise" + format("%.2f", opt.noise_sigma) + ".csv"
                   : "metrics.csv";
      }
      write_metrics_csv(rows, input / name);
    }
  }
  return rows;
}

int cmd_reconstruct(const fs::path& snapshot, const fs::path& out_dir) {
  if (!fs::exists(snapshot)) throw IoError("missing snapshot: " + snapshot.string());
  const SynapseBank bank = load_snapshot(snapshot);
  const auto kernels = make_oriented_kernels(
      static_cast<int>(bank.shape().orientations), kKernelSize);
  fs::create_directories(out_dir);
  for (std::size_t f = 0; f < bank.n_features(); ++f) {
    char name[32];
    std::snprintf(name, sizeof name, "feature_%02zu.pgm", f);
    save_pgm_levels(reconstruct_feature(bank.feature(f), bank.shape(), kernels),
                    out_dir / name);
  }
  return static_cast<int>(bank.n_features());
}

std::vector<double> default_sweep_ratios() {
  return {4.0 / 9, 4.0 / 8, 4.0 / 7, 4.0 / 6, 4.0 / 5, 4.0 / 4, 4.0 / 3, 4.0 / 2, 4.0, 8.0};
}

std::vector<SweepRow> cmd_sweep_ratio(const CliOptions& opt,
                                      const std::vector<double>& ratios,
                                      const std::vector<Rule>& rules,
                                      const fs::path& csv, std::ostream& log) {
  if (ratios.empty()) throw ConfigError("sweep-ratio needs at least one ratio");
  const RunConfig base = resolve_config(opt);
  const fs::path root = data_root(opt);
  const Split split = build_split(base, root);
  const auto order = presentation_order(split, base);

  std::vector<SweepRow> rows;
  for (Rule rule : rules) {
    RunConfig cfg = base;
    cfg.rule = rule;
    cfg.validate();
    Network net(cfg);
    const EncodedSplit data = encode_split(split, net);
    for (double ratio : ratios) {
      cfg.ratio = ratio;
      cfg.validate();
      const SynapseBank bank = train_run(cfg, data, order, net, nullptr);
      const Scored s = evaluate_bank(bank, data, net, cfg.ridge);
      rows.push_back({rule, ratio,
                      count_selected_weights(bank, selection_threshold(rule)),
                      s.eq.accuracy, s.auc});
      log << to_string(rule) << " ratio " << format("%.4f", ratio) << ": selected "
          << format("%.2f", rows.back().selected_weights) << " accuracy_eq "
          << format("%.4f", s.eq.accuracy) << "\n";
    }
  }

  std::ofstream f(csv);
  if (!f) throw IoError("cannot write " + csv.string());
  f << "rule,ratio,selected_weights,accuracy_eq,roc_auc\n";
  for (const SweepRow& r : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "%s,%.6f,%.3f,%.6f,%.6f\n",
                  std::string(to_string(r.rule)).c_str(), r.ratio,
                  r.selected_weights, r.accuracy_eq, r.roc_auc);
    f << line;
  }
  return rows;
}

std::vector<double> summary_peaks(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path.string());
  std::string line;
  if (!std::getline(f, line) ||
      line.rfind("seed,iteration,accuracy_eq,roc_auc,selected_weights", 0) != 0) {
    throw IoError(path.string() + ": expected a seed,iteration,accuracy_eq,... summary");
  }
  std::map<unsigned long long, double> peaks;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    unsigned long long seed = 0;
    int iteration = 0;
    double acc = 0.0;
    double auc = 0.0;
    double sel = 0.0;
    if (std::sscanf(line.c_str(), "%llu,%d,%lf,%lf,%lf", &seed, &iteration,
                    &acc, &auc, &sel) != 5) {
      throw IoError(path.string() + ": malformed row '" + line + "'");
    }
    const auto [it, fresh] = peaks.emplace(seed, acc);
    if (!fresh) it->second = std::max(it->second, acc);
  }
  std::vector<double> out;
  for (const auto& [seed, acc] : peaks) out.push_back(acc);
  return out;
}

StatsResult cmd_stats(const fs::path& a, const fs::path& b, std::ostream& out) {
  StatsResult r;
  r.peaks_a = summary_peaks(a);
  r.peaks_b = summary_peaks(b);
  r.test = t_test_two_tailed(r.peaks_a, r.peaks_b);
  r.stars = significance_stars(r.test.p);
  out << "t=" << format("%.6f", r.test.t) << " df=" << format("%.0f", r.test.df)
      << " p=" << format("%.6f", r.test.p)
      << " band=" << (r.stars.empty() ? "n.s." : r.stars) << "\n";
  return r;
}

}  // namespace spikewave
