#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace spikewave {

enum class Rule { Original, Nessler, Probabilistic };
enum class NeuronModel { IF, IzhikevichRS };

std::string_view to_string(Rule rule);
std::string_view to_string(NeuronModel neuron);
Rule parse_rule(std::string_view text);
NeuronModel parse_neuron(std::string_view text);

// Everything a run needs. Serialized as a flat JSON object whose keys are the
// field names below; unknown keys are rejected on load.
struct RunConfig {
  // hierarchy
  int n_scales = 5;
  int n_orientations = 4;
  int n_features = 10;
  std::vector<double> scale_factors{1.0, 0.71, 0.5, 0.35, 0.25};
  int image_size = 64;
  double s1_threshold = 0.05;
  int c1_window = 4;
  int c1_stride = 3;
  int s2_rf = 8;
  int inhibition_radius = 3;

  // learning
  Rule rule = Rule::Original;
  double a_plus_init = 0.015625;  // 2^-6
  double a_plus_max = 0.25;       // 2^-2
  double ratio = 4.0 / 3.0;       // a+ / a-
  int schedule_period = 400;
  double epsilon = 0.1;
  int n_iterations = 1000;
  int snapshot_every = 100;
  std::uint64_t seed = 0;

  // neurons; zero thresholds / charge scale mean "derive from geometry"
  NeuronModel neuron = NeuronModel::IF;
  double if_threshold = 0.0;
  double izh_a = 0.03;
  double izh_b = -2.0;
  double izh_C = 100.0;
  double izh_k = 0.7;
  double izh_vth = 0.49;
  double izh_vrest = 0.0;
  double izh_qscale = 0.0;

  // data and evaluation
  std::vector<std::string> classes{"target", "clutter"};
  int n_sample = 175;
  int synthetic_per_class = 436;
  double ridge = 1e-3;

  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// SNN1..SNN4 shortcut: (neuron, rule) pairs.
void apply_variant(RunConfig& cfg, std::string_view variant);

std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);
void save_config(const RunConfig& cfg, const std::filesystem::path& path);

// Stable 64-bit digest of every field except the seed.
std::uint64_t config_hash(const RunConfig& cfg);

struct RunRecord {
  int iteration = 0;
  double accuracy_eq = 0.0;
  double roc_auc = 0.0;
  double selected_weights = 0.0;
  double wall_time = 0.0;
};

}  // namespace spikewave
