#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spikewave/core/config.hpp"
#include "spikewave/core/types.hpp"
#include "spikewave/eval/metrics.hpp"
#include "spikewave/ingestion/dataset.hpp"
#include "spikewave/network/trainer.hpp"

namespace spikewave {

// A split with every image already run through S1/C1.
struct EncodedSplit {
  std::vector<EncodedImage> train;
  std::vector<EncodedImage> test;
  std::vector<std::uint8_t> train_labels;
  std::vector<std::uint8_t> test_labels;
};

EncodedSplit encode_split(const Split& split, const Network& net);

// Copy of the test images with N(0, sigma^2) pixel noise, from the seed's
// "noise" stream.
Split with_test_noise(const Split& split, double sigma, std::uint64_t seed);

// Order of training presentations: the positive training images, reshuffled
// on every pass, truncated to n_iterations.
std::vector<std::size_t> presentation_order(const Split& split,
                                            const RunConfig& cfg);

using SnapshotSink = std::function<void(int iteration, const SynapseBank&)>;

// Full training run; `sink` sees the bank every snapshot_every iterations.
SynapseBank train_run(const RunConfig& cfg, const EncodedSplit& data,
                      const std::vector<std::size_t>& order, Network& net,
                      const SnapshotSink& sink);

struct Scored {
  std::vector<double> scores;
  EquilibriumPoint eq;
  double auc = 0.0;
};

// C2 features of both sets (plasticity off), RBF fitted on the training
// features, scored on the test features.
Scored evaluate_bank(const SynapseBank& bank, const EncodedSplit& data,
                     Network& net, double ridge);

std::vector<FeatureVector> c2_features(const SynapseBank& bank,
                                       const std::vector<EncodedImage>& images,
                                       const std::vector<std::uint8_t>& labels,
                                       Network& net);

// Output directory of one run: <out>/run_<16 hex digits of the config
// hash>_s<seed>.
std::filesystem::path run_directory(const std::filesystem::path& out,
                                    const RunConfig& cfg);

inline constexpr const char* kCompleteMarker = "COMPLETE";

// Metrics CSV: iteration,accuracy_eq,roc_auc,selected_weights
void write_metrics_csv(const std::vector<RunRecord>& rows,
                       const std::filesystem::path& path);
std::vector<RunRecord> read_metrics_csv(const std::filesystem::path& path);

// Highest accuracy_eq in a metrics file.
double peak_accuracy(const std::vector<RunRecord>& rows);

}  // namespace spikewave
