#pragma once

#include <optional>
#include <vector>

#include "spikewave/core/config.hpp"
#include "spikewave/core/types.hpp"
#include "spikewave/network/encoding.hpp"
#include "spikewave/neurons/neurons.hpp"
#include "spikewave/plasticity/learner.hpp"

namespace spikewave {

// Wave duration in latency units; Izhikevich cells are integrated up to it.
inline constexpr double kWaveEnd = 1.0;

// Resolved S2 neuron settings (config zeros replaced by derived values).
struct NeuronConfig {
  NeuronModel model = NeuronModel::IF;
  double if_threshold = 1.0;
  IzhikevichParams izh;
  double q_scale = 1.0;
  double dt = 1e-3;

  static NeuronConfig from_config(const RunConfig& cfg);
};

// Mean of the uniform initial weight range used for `rule`.
double initial_weight_mean(Rule rule);

// Threshold used when if_threshold is 0: a third of the receptive-field
// area (rf x rf positions) at the original rule's mean initial weight. The
// same value is used for both rules so variants differ only in the rule.
double derived_if_threshold(const RunConfig& cfg);

struct S2Location {
  std::uint32_t scale = 0;
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  friend bool operator==(const S2Location&, const S2Location&) = default;
};

struct WaveOptions {
  // false: thresholds are disabled and every cell integrates the whole wave
  // (used to read out graded potentials with plasticity off).
  bool spiking = true;
  // Non-null: STDP on the firing feature's shared tensor at every S2 spike.
  Learner* learner = nullptr;
};

struct S2Output {
  std::vector<SpikeEvent> spikes;  // SpikeOrder
  // End-of-wave potential in weight units, max over positions and scales.
  std::vector<double> max_potential;
  std::vector<std::optional<S2Location>> max_location;
};

struct WaveResult {
  std::vector<Latency> c2_latency;
  std::vector<double> c2_potential;  // max potential / sum of weights
  std::vector<std::optional<S2Location>> winner;
};

// Event-driven S2 layer with reusable scratch state. Cells are
// (scale, row, col, feature); a cell's receptive field is rf x rf C1
// positions times all orientations, read from the feature's single shared
// tensor. When a cell fires, every feature at the same scale within
// inhibition_radius (Chebyshev) is silenced for the rest of the wave.
class S2Layer {
 public:
  S2Layer(NetworkGeometry geom, NeuronConfig neuron);

  const NetworkGeometry& geometry() const { return geom_; }
  const NeuronConfig& neuron() const { return neuron_; }

  // Requires enc.events in SpikeOrder.
  S2Output run(const EncodedImage& enc, SynapseBank& bank,
               const WaveOptions& opt);
  // Read-only pass; opt.learner must be null.
  S2Output run(const EncodedImage& enc, const SynapseBank& bank,
               const WaveOptions& opt);

 private:
  enum Status : std::uint8_t { kActive = 0, kFired = 1, kInhibited = 2 };

  struct ScaleState {
    std::size_t rows = 0;  // S2 grid
    std::size_t cols = 0;
    std::vector<double> v;       // [pos][feature]
    std::vector<double> u;       // Izhikevich only
    std::vector<std::uint8_t> status;
    std::vector<double> time;    // per position, Izhikevich only
    std::vector<std::uint8_t> touched;  // per position, Izhikevich only
  };

  void prepare(const EncodedImage& enc, const SynapseBank& bank);
  void refresh_feature(const SynapseBank& bank, std::size_t f);
  void fire(const EncodedImage& enc, SynapseBank& bank, const WaveOptions& opt,
            std::size_t s, std::size_t pr, std::size_t pc, std::size_t f,
            double t);
  void advance_izh(const EncodedImage& enc, SynapseBank& bank,
                   const WaveOptions& opt, std::size_t s, std::size_t pos,
                   double until);
  double readout(double v) const;

  NetworkGeometry geom_;
  NeuronConfig neuron_;
  std::size_t n_features_ = 0;
  std::size_t n_afferents_ = 0;
  std::vector<double> wt_;  // [afferent][feature]
  std::vector<ScaleState> scales_;
  std::vector<std::uint8_t> ltp_mask_;
  std::vector<std::uint8_t> pending_;
  std::vector<double> active_;  // 1.0 for cells still integrating
  std::vector<SpikeEvent> spikes_;
};

// One-shot convenience wrapper around S2Layer.
S2Output s2_wave(const EncodedImage& enc, SynapseBank& bank,
                 const NetworkGeometry& geom, const NeuronConfig& neuron,
                 const WaveOptions& opt);

// Global pooling: per feature, the earliest S2 spike (C2 latency) and the
// largest end-of-wave potential normalised by the feature's weight sum.
WaveResult c2_pool(const S2Output& s2, const SynapseBank& bank);

}  // namespace spikewave
