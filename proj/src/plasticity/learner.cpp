#include "spikewave/plasticity/learner.hpp"

#include "spikewave/core/error.hpp"

namespace spikewave {

Learner::Learner(const RunConfig& cfg)
    : cfg_(cfg),
      rule_(cfg.rule),
      a_plus_(static_cast<std::size_t>(cfg.n_features),
              schedule_advance(cfg.a_plus_init, 0, cfg)),
      counts_(static_cast<std::size_t>(cfg.n_features), 0) {
  if (rule_ == Rule::Nessler) {
    throw ConfigError("the Nessler rule cannot train excitatory weights");
  }
}

void Learner::on_post_spike(std::size_t f, std::span<double> tensor,
                            std::span<const std::uint8_t> ltp) {
  if (f >= counts_.size()) throw ContractViolation("feature index out of range");
  if (tensor.size() != ltp.size()) {
    throw ContractViolation("LTP mask does not match the tensor");
  }
  const StdpParams params{a_plus_[f], cfg_.ratio, cfg_.epsilon};
  if (params.a_plus > 0.0) {
    for (std::size_t k = 0; k < tensor.size(); ++k) {
      tensor[k] = stdp_apply(rule_, tensor[k], ltp[k] != 0, params);
    }
  }
  ++counts_[f];
  ++total_;
  a_plus_[f] = schedule_advance(a_plus_[f], counts_[f], cfg_);
}

}  // namespace spikewave
