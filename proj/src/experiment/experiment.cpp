#include "spikewave/experiment/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spikewave/core/error.hpp"
#include "spikewave/core/rng.hpp"
#include "spikewave/ingestion/image_io.hpp"
#include "spikewave/plasticity/learner.hpp"

namespace spikewave {

EncodedSplit encode_split(const Split& split, const Network& net) {
  EncodedSplit out;
  out.train.reserve(split.train.size());
  out.test.reserve(split.test.size());
  for (const LabeledImage& li : split.train) {
    out.train.push_back(net.encode(li.image));
    out.train_labels.push_back(li.positive ? 1 : 0);
  }
  for (const LabeledImage& li : split.test) {
    out.test.push_back(net.encode(li.image));
    out.test_labels.push_back(li.positive ? 1 : 0);
  }
  return out;
}

Split with_test_noise(const Split& split, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw DomainError("noise sigma must be non-negative");
  Split out = split;
  Rng rng = rng_create(seed).split("noise");
  for (LabeledImage& li : out.test) li.image = add_gaussian_noise(li.image, sigma, rng);
  return out;
}

std::vector<std::size_t> presentation_order(const Split& split,
                                            const RunConfig& cfg) {
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < split.train.size(); ++i) {
    if (split.train[i].positive) pool.push_back(i);
  }
  std::vector<std::size_t> order;
  if (cfg.n_iterations <= 0) return order;
  if (pool.empty()) throw ContractViolation("no positive training images");
  Rng rng = rng_create(cfg.seed).split("order");
  const auto n = static_cast<std::size_t>(cfg.n_iterations);
  order.reserve(n);
  while (order.size() < n) {
    std::vector<std::size_t> pass = pool;
    rng.shuffle(pass);
    for (std::size_t i : pass) {
      if (order.size() == n) break;
      order.push_back(i);
    }
  }
  return order;
}

SynapseBank train_run(const RunConfig& cfg, const EncodedSplit& data,
                      const std::vector<std::size_t>& order, Network& net,
                      const SnapshotSink& sink) {
  Rng init = rng_create(cfg.seed).split("init");
  SynapseBank bank = init_bank(cfg, init);
  Learner learner(cfg);
  const WaveOptions opt{.spiking = true, .learner = &learner};
  for (std::size_t it = 0; it < order.size(); ++it) {
    net.present(data.train.at(order[it]), bank, opt);
    const int done = static_cast<int>(it + 1);
    if (sink && done % cfg.snapshot_every == 0) sink(done, bank);
  }
  return bank;
}

std::vector<FeatureVector> c2_features(const SynapseBank& bank,
                                       const std::vector<EncodedImage>& images,
                                       const std::vector<std::uint8_t>& labels,
                                       Network& net) {
  std::vector<FeatureVector> out;
  out.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    out.push_back({net.features(images[i], bank), labels[i] != 0});
  }
  return out;
}

Scored evaluate_bank(const SynapseBank& bank, const EncodedSplit& data,
                     Network& net, double ridge) {
  const auto train = c2_features(bank, data.train, data.train_labels, net);
  const auto test = c2_features(bank, data.test, data.test_labels, net);
  const RbfModel model = rbf_train(train, ridge);
  Scored s;
  s.scores = model.score_all(test);
  s.eq = equilibrium_accuracy(s.scores, data.test_labels);
  s.auc = roc_auc(s.scores, data.test_labels);
  return s;
}

std::filesystem::path run_directory(const std::filesystem::path& out,
                                    const RunConfig& cfg) {
  char name[64];
  std::snprintf(name, sizeof name, "run_%016llx_s%llu",
                static_cast<unsigned long long>(config_hash(cfg)),
                static_cast<unsigned long long>(cfg.seed));
  return out / name;
}

void write_metrics_csv(const std::vector<RunRecord>& rows,
                       const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path.string());
  f << "iteration,accuracy_eq,roc_auc,selected_weights\n";
  char line[128];
  for (const RunRecord& r : rows) {
    std::snprintf(line, sizeof line, "%d,%.6f,%.6f,%.3f\n", r.iteration,
                  r.accuracy_eq, r.roc_auc, r.selected_weights);
    f << line;
  }
  if (!f) throw IoError("failed writing " + path.string());
}

std::vector<RunRecord> read_metrics_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path.string());
  std::string line;
  if (!std::getline(f, line) ||
      line.rfind("iteration,accuracy_eq,roc_auc,selected_weights", 0) != 0) {
    throw IoError(path.string() + ": not a metrics CSV");
  }
  std::vector<RunRecord> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    RunRecord r;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf%c", &r.iteration,
                    &r.accuracy_eq, &r.roc_auc, &r.selected_weights,
                    &tail) != 4) {
      throw IoError(path.string() + ": malformed row '" + line + "'");
    }
    rows.push_back(r);
  }
  return rows;
}

double peak_accuracy(const std::vector<RunRecord>& rows) {
  if (rows.empty()) throw DomainError("no metrics rows");
  double best = rows.front().accuracy_eq;
  for (const RunRecord& r : rows) best = std::max(best, r.accuracy_eq);
  return best;
}

}  // namespace spikewave
