#pragma once

// Constant-current probes of a single Izhikevich neuron.

#include <cmath>

#include "spikewave/neurons/neurons.hpp"

namespace spikewave::oracle {

inline constexpr double kDt = 1e-3;
inline constexpr double kWave = 1.0;

// First-spike latency under a constant current held over one wave.
inline Latency constant_current_latency(const IzhikevichParams& p, double current) {
  NeuronState s = NeuronState::resting(p);
  const int steps = static_cast<int>(std::lround(kWave / kDt));
  for (int i = 0; i < steps && !s.fired; ++i) s = izh_step(s, p, current, kDt);
  return s.fire_time;
}

// Smallest firing current, by bisection to 1e-4.
inline double rheobase(const IzhikevichParams& p) {
  double lo = 0.0;
  double hi = 1.0;
  while (!constant_current_latency(p, hi).fired()) hi *= 2.0;
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    (constant_current_latency(p, mid).fired() ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace spikewave::oracle
