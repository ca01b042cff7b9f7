#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spikewave/core/config.hpp"
#include "spikewave/plasticity/stdp.hpp"

namespace spikewave {

// Applies the configured rule to a feature tensor on every postsynaptic
// spike of that feature and advances the feature's learning-rate schedule.
// Each feature keeps its own cumulative spike count, so one Learner should
// live for a whole training run.
class Learner {
 public:
  explicit Learner(const RunConfig& cfg);

  Rule rule() const { return rule_; }
  std::size_t n_features() const { return counts_.size(); }
  double a_plus(std::size_t f) const { return a_plus_.at(f); }
  double a_minus(std::size_t f) const { return a_plus_.at(f) / cfg_.ratio; }
  std::uint64_t post_spikes(std::size_t f) const { return counts_.at(f); }
  std::uint64_t post_spikes() const { return total_; }

  // ltp[k] != 0 marks afferent k as having fired no later than the
  // postsynaptic spike; every other afferent is depressed.
  void on_post_spike(std::size_t f, std::span<double> tensor,
                     std::span<const std::uint8_t> ltp);

 private:
  RunConfig cfg_;
  Rule rule_;
  std::vector<double> a_plus_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

}  // namespace spikewave
