#include "spikewave/neurons/neurons.hpp"

#include <algorithm>
#include <cmath>

namespace spikewave {

void IzhikevichParams::validate() const {
  if (!(C > 0.0)) throw ContractViolation("Izhikevich C must be > 0");
  if (!(k > 0.0)) throw ContractViolation("Izhikevich k must be > 0");
  if (!(v_th > v_rest)) {
    throw ContractViolation("Izhikevich V_th must exceed V_rest");
  }
}

NeuronState if_deliver(NeuronState state, double weight, double threshold,
                       Latency at) {
  if (!(weight >= 0.0)) throw ContractViolation("synaptic weight must be >= 0");
  if (state.fired) return state;
  state.v += weight;
  if (state.v >= threshold) {
    state.fired = true;
    state.fire_time = at;
  }
  return state;
}

NeuronState izh_step(NeuronState state, const IzhikevichParams& p,
                     double i_tot, double dt) {
  if (!(dt > 0.0)) throw ContractViolation("time step must be > 0");
  if (state.fired) return state;
  izh_euler(state.v, state.u, p, i_tot, dt);
  state.time += dt;
  if (!std::isfinite(state.v) || !std::isfinite(state.u)) {
    throw NumericalError("Izhikevich state diverged");
  }
  if (state.v >= p.v_th) {
    state.fired = true;
    state.fire_time = Latency(state.time);
  }
  return state;
}

NeuronState izh_advance(NeuronState state, const IzhikevichParams& p,
                        double until, double dt) {
  while (!state.fired && state.time < until) {
    state = izh_step(state, p, 0.0, std::min(dt, until - state.time));
  }
  return state;
}

NeuronState izh_deliver(NeuronState state, const IzhikevichParams& p,
                        double weight, double q_scale, Latency at) {
  if (!(weight >= 0.0)) throw ContractViolation("synaptic weight must be >= 0");
  if (state.fired) return state;
  state.v += (q_scale / p.C) * weight;
  if (state.v >= p.v_th) {
    state.fired = true;
    state.fire_time = at;
  }
  return state;
}

}  // namespace spikewave
