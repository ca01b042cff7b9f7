#include "spikewave/network/trainer.hpp"

namespace spikewave {

Network::Network(const RunConfig& cfg)
    : geom_(NetworkGeometry::from_config(cfg)),
      kernels_(make_oriented_kernels(cfg.n_orientations, kKernelSize)),
      layer_(geom_, NeuronConfig::from_config(cfg)) {}

EncodedImage Network::encode(const Image& image) const {
  return encode_image(image, geom_, kernels_);
}

WaveResult Network::present(const EncodedImage& enc, SynapseBank& bank,
                            const WaveOptions& opt) {
  const S2Output s2 = layer_.run(enc, bank, opt);
  return c2_pool(s2, bank);
}

std::vector<double> Network::features(const EncodedImage& enc,
                                      const SynapseBank& bank) {
  const S2Output s2 = layer_.run(enc, bank, WaveOptions{.spiking = false});
  return c2_pool(s2, bank).c2_potential;
}

SynapseBank init_bank(const RunConfig& cfg, Rng& rng) {
  const auto rf = static_cast<std::size_t>(cfg.s2_rf);
  SynapseBank bank(static_cast<std::size_t>(cfg.n_features),
                   {rf, rf, static_cast<std::size_t>(cfg.n_orientations)});
  const bool prob = cfg.rule == Rule::Probabilistic;
  const double lo = prob ? 0.0 : 0.6;
  const double hi = prob ? 0.3 : 1.0;
  for (double& w : bank.all()) w = rng.uniform(lo, hi);
  return bank;
}

std::vector<std::size_t> train_epoch(std::span<const EncodedImage> images,
                                     Network& net, SynapseBank& bank,
                                     Learner& learner) {
  std::vector<std::size_t> counts;
  counts.reserve(images.size());
  const WaveOptions opt{.spiking = true, .learner = &learner};
  for (const EncodedImage& enc : images) {
    const std::uint64_t before = learner.post_spikes();
    net.present(enc, bank, opt);
    counts.push_back(static_cast<std::size_t>(learner.post_spikes() - before));
  }
  return counts;
}

}  // namespace spikewave
