#pragma once

#include "spikewave/core/types.hpp"

namespace spikewave {

struct IzhikevichParams {
  double a = 0.03;
  double b = -2.0;
  double C = 100.0;
  double k = 0.7;
  double v_rest = 0.0;
  double v_th = 0.49;
  double u0 = 0.0;

  void validate() const;
};

// First-spike neuron state. `time` is the clock the state has been
// integrated up to (Izhikevich only); IF units are event-driven and ignore it.
struct NeuronState {
  double v = 0.0;
  double u = 0.0;
  bool fired = false;
  Latency fire_time;
  double time = 0.0;

  static NeuronState resting(const IzhikevichParams& p) {
    NeuronState s;
    s.v = p.v_rest;
    s.u = p.u0;
    return s;
  }
};

// Non-leaky integrate-and-fire: V += w, fire once when V >= threshold.
NeuronState if_deliver(NeuronState state, double weight, double threshold,
                       Latency at);

// One forward-Euler step of
//   C dV/dt = k (V - V_rest)(V - V_th) - U + I
//     dU/dt = a (b (V - V_rest) - U)
inline void izh_euler(double& v, double& u, const IzhikevichParams& p,
                      double i_tot, double dt) {
  const double dv = (p.k * (v - p.v_rest) * (v - p.v_th) - u + i_tot) * (1.0 / p.C);
  const double du = p.a * (p.b * (v - p.v_rest) - u);
  v += dt * dv;
  u += dt * du;
}

// Advances the clock by dt; fires at the new clock value if V reaches V_th.
// Throws NumericalError if the state stops being finite.
NeuronState izh_step(NeuronState state, const IzhikevichParams& p,
                     double i_tot, double dt);

// Integrates with zero input from state.time up to `until` in steps of at
// most dt, stopping early if the neuron fires.
NeuronState izh_advance(NeuronState state, const IzhikevichParams& p,
                        double until, double dt);

// Instantaneous charge: V += w * q_scale / C, then the threshold check.
NeuronState izh_deliver(NeuronState state, const IzhikevichParams& p,
                        double weight, double q_scale, Latency at);

}  // namespace spikewave
