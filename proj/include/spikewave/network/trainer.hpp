#pragma once

#include <span>
#include <vector>

#include "spikewave/core/config.hpp"
#include "spikewave/core/rng.hpp"
#include "spikewave/core/types.hpp"
#include "spikewave/network/encoding.hpp"
#include "spikewave/network/kernels.hpp"
#include "spikewave/network/wave.hpp"
#include "spikewave/plasticity/learner.hpp"

namespace spikewave {

// The whole S1 -> C2 pipeline for one configuration.
class Network {
 public:
  explicit Network(const RunConfig& cfg);

  const NetworkGeometry& geometry() const { return geom_; }
  const NeuronConfig& neuron() const { return layer_.neuron(); }
  std::span<const OrientedKernel> kernels() const { return kernels_; }

  EncodedImage encode(const Image& image) const;

  // One spike wave. `bank` is only modified when opt.learner is set.
  WaveResult present(const EncodedImage& enc, SynapseBank& bank,
                     const WaveOptions& opt);

  // C2 potentials with thresholds off and plasticity off.
  std::vector<double> features(const EncodedImage& enc,
                               const SynapseBank& bank);

 private:
  NetworkGeometry geom_;
  std::vector<OrientedKernel> kernels_;
  S2Layer layer_;
};

// Uniform [0.6, 1.0) for the original rule, [0, 0.3) for the probabilistic
// rule.
SynapseBank init_bank(const RunConfig& cfg, Rng& rng);

// Presents `images` in order with plasticity on; returns the S2 spike count
// of every wave.
std::vector<std::size_t> train_epoch(std::span<const EncodedImage> images,
                                     Network& net, SynapseBank& bank,
                                     Learner& learner);

}  // namespace spikewave
