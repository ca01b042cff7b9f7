#include "spikewave/network/wave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace spikewave {

double initial_weight_mean(Rule rule) {
  return rule == Rule::Probabilistic ? 0.15 : 0.8;
}

double derived_if_threshold(const RunConfig& cfg) {
  const double area = static_cast<double>(cfg.s2_rf) * cfg.s2_rf;
  return area / 3.0 * initial_weight_mean(Rule::Original);
}

NeuronConfig NeuronConfig::from_config(const RunConfig& cfg) {
  NeuronConfig n;
  n.model = cfg.neuron;
  n.if_threshold = cfg.if_threshold > 0.0 ? cfg.if_threshold
                                          : derived_if_threshold(cfg);
  n.izh = {.a = cfg.izh_a,
           .b = cfg.izh_b,
           .C = cfg.izh_C,
           .k = cfg.izh_k,
           .v_rest = cfg.izh_vrest,
           .v_th = cfg.izh_vth,
           .u0 = 0.0};
  n.izh.validate();
  // Same charge-to-threshold ratio as the IF unit: if_threshold weight units
  // lift V from rest to V_th.
  n.q_scale = cfg.izh_qscale > 0.0
                  ? cfg.izh_qscale
                  : (n.izh.v_th - n.izh.v_rest) * n.izh.C / n.if_threshold;
  return n;
}

S2Layer::S2Layer(NetworkGeometry geom, NeuronConfig neuron)
    : geom_(std::move(geom)), neuron_(neuron) {
  if (neuron_.model == NeuronModel::IzhikevichRS) neuron_.izh.validate();
  if (!(neuron_.dt > 0.0)) throw ContractViolation("dt must be > 0");
}

void S2Layer::refresh_feature(const SynapseBank& bank, std::size_t f) {
  const auto w = bank.feature(f);
  for (std::size_t k = 0; k < n_afferents_; ++k) wt_[k * n_features_ + f] = w[k];
}

void S2Layer::prepare(const EncodedImage& enc, const SynapseBank& bank) {
  const auto rf = static_cast<std::size_t>(geom_.rf);
  const auto orient = static_cast<std::size_t>(geom_.n_orientations);
  if (bank.shape() != TensorShape{rf, rf, orient}) {
    throw DimensionError("synapse bank shape does not match the S2 geometry");
  }
  n_features_ = bank.n_features();
  n_afferents_ = bank.shape().size();
  wt_.resize(n_afferents_ * n_features_);
  for (std::size_t f = 0; f < n_features_; ++f) refresh_feature(bank, f);
  ltp_mask_.resize(n_afferents_);
  pending_.resize(n_features_);
  active_.resize(n_features_);
  spikes_.clear();

  const bool izh = neuron_.model == NeuronModel::IzhikevichRS;
  const double v0 = izh ? neuron_.izh.v_rest : 0.0;
  scales_.resize(enc.scales.size());
  for (std::size_t s = 0; s < enc.scales.size(); ++s) {
    const C1Scale& c1 = enc.scales[s];
    ScaleState& st = scales_[s];
    if (c1.orientations != 0 && c1.orientations != orient) {
      throw DimensionError("C1 orientation count does not match the bank");
    }
    st.rows = c1.rows >= rf ? c1.rows - rf + 1 : 0;
    st.cols = c1.cols >= rf ? c1.cols - rf + 1 : 0;
    if (st.rows == 0 || st.cols == 0) st.rows = st.cols = 0;
    const std::size_t cells = st.rows * st.cols * n_features_;
    st.v.assign(cells, v0);
    st.status.assign(cells, kActive);
    if (izh) {
      st.u.assign(cells, neuron_.izh.u0);
      st.time.assign(st.rows * st.cols, 0.0);
      st.touched.assign(st.rows * st.cols, 0);
    }
  }
}

double S2Layer::readout(double v) const {
  if (neuron_.model == NeuronModel::IF) return v;
  return (v - neuron_.izh.v_rest) * neuron_.izh.C / neuron_.q_scale;
}

void S2Layer::fire(const EncodedImage& enc, SynapseBank& bank,
                   const WaveOptions& opt, std::size_t s, std::size_t pr,
                   std::size_t pc, std::size_t f, double t) {
  ScaleState& st = scales_[s];
  const std::size_t F = n_features_;
  st.status[(pr * st.cols + pc) * F + f] = kFired;
  spikes_.push_back({Layer::S2, static_cast<std::uint32_t>(s),
                     static_cast<std::uint32_t>(f),
                     static_cast<std::uint32_t>(pr),
                     static_cast<std::uint32_t>(pc), Latency(t)});

  const auto rad = static_cast<std::size_t>(geom_.inhibition_radius);
  const std::size_t r0 = pr >= rad ? pr - rad : 0;
  const std::size_t c0 = pc >= rad ? pc - rad : 0;
  const std::size_t r1 = std::min(pr + rad, st.rows - 1);
  const std::size_t cl = std::min(pc + rad, st.cols - 1);
  for (std::size_t r = r0; r <= r1; ++r) {
    for (std::size_t c = c0; c <= cl; ++c) {
      std::uint8_t* status = &st.status[(r * st.cols + c) * F];
      for (std::size_t g = 0; g < F; ++g) {
        if (status[g] == kActive) status[g] = kInhibited;
      }
    }
  }

  if (opt.learner == nullptr) return;
  const C1Scale& c1 = enc.scales[s];
  const auto rf = static_cast<std::size_t>(geom_.rf);
  const std::size_t orient = c1.orientations;
  for (std::size_t i = 0; i < rf; ++i) {
    for (std::size_t j = 0; j < rf; ++j) {
      for (std::size_t o = 0; o < orient; ++o) {
        const Latency pre = c1.at(o, pr + i, pc + j);
        ltp_mask_[(i * rf + j) * orient + o] = pre.fired() && pre.value() <= t;
      }
    }
  }
  opt.learner->on_post_spike(f, bank.feature(f), ltp_mask_);
  refresh_feature(bank, f);
}

void S2Layer::advance_izh(const EncodedImage& enc, SynapseBank& bank,
                          const WaveOptions& opt, std::size_t s,
                          std::size_t pos, double until) {
  ScaleState& st = scales_[s];
  const std::size_t F = n_features_;
  double& time = st.time[pos];
  if (!st.touched[pos] || time >= until) {
    // Resting cells sit on a fixed point of the dynamics.
    time = std::max(time, until);
    return;
  }
  double* v = &st.v[pos * F];
  double* u = &st.u[pos * F];
  const std::uint8_t* status = &st.status[pos * F];
  double* act = active_.data();
  const auto refresh_mask = [&] {
    bool any = false;
    for (std::size_t f = 0; f < F; ++f) {
      act[f] = status[f] == kActive ? 1.0 : 0.0;
      any |= status[f] == kActive;
    }
    return any;
  };
  if (!refresh_mask()) {
    time = until;
    return;
  }
  const IzhikevichParams& p = neuron_.izh;
  const double inv_c = 1.0 / p.C;
  while (time < until) {
    const double h = std::min(neuron_.dt, until - time);
    // Same arithmetic as izh_euler with zero input; frozen cells get a
    // zero increment.
    for (std::size_t f = 0; f < F; ++f) {
      const double dv = (p.k * (v[f] - p.v_rest) * (v[f] - p.v_th) - u[f]) * inv_c;
      const double du = p.a * (p.b * (v[f] - p.v_rest) - u[f]);
      v[f] += act[f] * (h * dv);
      u[f] += act[f] * (h * du);
    }
    time += h;
    if (!opt.spiking) continue;
    bool crossed = false;
    for (std::size_t f = 0; f < F; ++f) crossed |= act[f] != 0.0 && v[f] >= p.v_th;
    if (!crossed) continue;
    for (std::size_t f = 0; f < F; ++f) pending_[f] = act[f] != 0.0 && v[f] >= p.v_th;
    for (std::size_t f = 0; f < F; ++f) {
      if (pending_[f] && status[f] == kActive) {
        fire(enc, bank, opt, s, pos / st.cols, pos % st.cols, f, time);
      }
    }
    if (!refresh_mask()) {
      time = until;
      break;
    }
  }
  for (std::size_t f = 0; f < F; ++f) {
    if (!std::isfinite(v[f]) || !std::isfinite(u[f])) {
      throw NumericalError("Izhikevich S2 state diverged");
    }
  }
}

S2Output S2Layer::run(const EncodedImage& enc, SynapseBank& bank,
                      const WaveOptions& opt) {
  if (!std::is_sorted(enc.events.begin(), enc.events.end(), SpikeOrder{})) {
    throw ContractViolation("C1 events must be sorted by latency");
  }
  prepare(enc, bank);
  const auto rf = static_cast<std::size_t>(geom_.rf);
  const std::size_t F = n_features_;
  const bool izh = neuron_.model == NeuronModel::IzhikevichRS;
  const double threshold = izh ? neuron_.izh.v_th : neuron_.if_threshold;
  const double gain = izh ? neuron_.q_scale / neuron_.izh.C : 1.0;

  for (const SpikeEvent& e : enc.events) {
    if (e.scale >= scales_.size()) continue;
    ScaleState& st = scales_[e.scale];
    if (st.rows == 0) continue;
    const double t = e.latency.value();
    const std::size_t orient = enc.scales[e.scale].orientations;
    const std::size_t r = e.row;
    const std::size_t c = e.col;
    const std::size_t pr0 = r + 1 >= rf ? r + 1 - rf : 0;
    const std::size_t pc0 = c + 1 >= rf ? c + 1 - rf : 0;
    const std::size_t pr1 = std::min(r, st.rows - 1);
    const std::size_t pc1 = std::min(c, st.cols - 1);
    if (pr0 > pr1 || pc0 > pc1) continue;

    for (std::size_t pr = pr0; pr <= pr1; ++pr) {
      for (std::size_t pc = pc0; pc <= pc1; ++pc) {
        const std::size_t pos = pr * st.cols + pc;
        const std::size_t k = ((r - pr) * rf + (c - pc)) * orient + e.channel;
        const double* w = &wt_[k * F];
        double* v = &st.v[pos * F];
        std::uint8_t* status = &st.status[pos * F];
        if (izh) {
          advance_izh(enc, bank, opt, e.scale, pos, t);
          st.touched[pos] = 1;
        }
        if (!opt.spiking) {
          for (std::size_t f = 0; f < F; ++f) v[f] += gain * w[f];
          continue;
        }
        for (std::size_t f = 0; f < F; ++f) {
          if (status[f] != kActive) continue;
          v[f] += gain * w[f];
          if (v[f] >= threshold) {
            fire(enc, bank, opt, e.scale, pr, pc, f, t);
            // fire() may have rewritten the weight cache for feature f only;
            // `w` still points at the same row.
          }
        }
      }
    }
  }

  if (izh) {
    for (std::size_t s = 0; s < scales_.size(); ++s) {
      for (std::size_t pos = 0; pos < scales_[s].rows * scales_[s].cols; ++pos) {
        advance_izh(enc, bank, opt, s, pos, kWaveEnd);
      }
    }
  }

  S2Output out;
  out.max_potential.assign(F, 0.0);
  out.max_location.assign(F, std::nullopt);
  std::vector<double> best(F, -std::numeric_limits<double>::infinity());
  for (std::size_t s = 0; s < scales_.size(); ++s) {
    const ScaleState& st = scales_[s];
    for (std::size_t pos = 0; pos < st.rows * st.cols; ++pos) {
      for (std::size_t f = 0; f < F; ++f) {
        const double pot = readout(st.v[pos * F + f]);
        if (pot > best[f]) {
          best[f] = pot;
          out.max_location[f] = S2Location{static_cast<std::uint32_t>(s),
                                           static_cast<std::uint32_t>(pos / st.cols),
                                           static_cast<std::uint32_t>(pos % st.cols)};
        }
      }
    }
  }
  for (std::size_t f = 0; f < F; ++f) {
    if (out.max_location[f]) out.max_potential[f] = best[f];
  }
  out.spikes = spikes_;
  std::sort(out.spikes.begin(), out.spikes.end(), SpikeOrder{});
  return out;
}

S2Output S2Layer::run(const EncodedImage& enc, const SynapseBank& bank,
                      const WaveOptions& opt) {
  if (opt.learner != nullptr) {
    throw ContractViolation("a read-only wave cannot apply plasticity");
  }
  // Without a learner the bank is never written.
  return run(enc, const_cast<SynapseBank&>(bank), opt);
}

S2Output s2_wave(const EncodedImage& enc, SynapseBank& bank,
                 const NetworkGeometry& geom, const NeuronConfig& neuron,
                 const WaveOptions& opt) {
  S2Layer layer(geom, neuron);
  return layer.run(enc, bank, opt);
}

WaveResult c2_pool(const S2Output& s2, const SynapseBank& bank) {
  const std::size_t F = bank.n_features();
  if (s2.max_potential.size() != F) {
    throw DimensionError("S2 output does not match the synapse bank");
  }
  WaveResult res;
  res.c2_latency.assign(F, Latency::never());
  res.c2_potential.assign(F, 0.0);
  res.winner = s2.max_location;
  std::vector<bool> seen(F, false);
  for (const SpikeEvent& e : s2.spikes) {  // earliest first
    if (e.channel >= F || seen[e.channel]) continue;
    seen[e.channel] = true;
    res.c2_latency[e.channel] = e.latency;
    res.winner[e.channel] = S2Location{e.scale, e.row, e.col};
  }
  for (std::size_t f = 0; f < F; ++f) {
    const auto w = bank.feature(f);
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    if (sum > 0.0) res.c2_potential[f] = std::max(0.0, s2.max_potential[f] / sum);
  }
  return res;
}

}  // namespace spikewave
