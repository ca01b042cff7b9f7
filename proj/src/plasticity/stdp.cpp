#include "spikewave/plasticity/stdp.hpp"

#include <algorithm>
#include <cmath>

#include "spikewave/core/error.hpp"

namespace spikewave {

double stdp_original(double w, bool pre_before_post, const StdpParams& p) {
  if (!(w > 0.0 && w < 1.0)) {
    throw ContractViolation("original STDP requires 0 < w < 1");
  }
  const double slope = w * (1.0 - w);
  return pre_before_post ? p.a_plus * slope : -p.a_minus() * slope;
}

double stdp_nessler(double w, double dt, const StdpParams& p) {
  if (dt > 0.0 && dt < p.epsilon) return std::exp(-w) - 1.0;
  return -1.0;
}

double stdp_probabilistic(double w, bool pre_before_post, const StdpParams& p) {
  if (!(w >= 0.0)) {
    throw ContractViolation("probabilistic STDP requires w >= 0");
  }
  return pre_before_post ? p.a_plus * std::exp(-w) : -p.a_minus();
}

double stdp_apply(Rule rule, double w, bool pre_before_post,
                  const StdpParams& p) {
  switch (rule) {
    case Rule::Original:
      return std::clamp(w + stdp_original(w, pre_before_post, p),
                        kOriginalWeightFloor, kOriginalWeightCeil);
    case Rule::Probabilistic:
      return std::max(0.0, w + stdp_probabilistic(w, pre_before_post, p));
    case Rule::Nessler:
      break;
  }
  throw ContractViolation("the Nessler rule is not applied to network weights");
}

double ltp_recursion(double w0, double a_plus, std::uint64_t n) {
  double w = w0;
  for (std::uint64_t i = 0; i < n; ++i) w += a_plus * std::exp(-w);
  return w;
}

double ltp_bound_claimed(double a_plus, std::uint64_t n) {
  if (!(a_plus > 0.0)) throw DomainError("ltp_bound_claimed requires a+ > 0");
  return a_plus * (1.0 - std::exp(-static_cast<double>(n) * a_plus)) /
         (1.0 - std::exp(-a_plus));
}

double ltp_bound_claimed_limit(double a_plus) {
  if (!(a_plus > 0.0)) throw DomainError("ltp_bound_claimed requires a+ > 0");
  return a_plus / (1.0 - std::exp(-a_plus));
}

double equilibrium_weight(double p_star, const StdpParams& p) {
  if (!(p_star > 0.0 && p_star < 1.0)) {
    throw DomainError("equilibrium_weight requires 0 < p* < 1");
  }
  return std::log(p.a_plus / p.a_minus()) + std::log(p_star / (1.0 - p_star));
}

double equilibrium_mc(double p_star, const StdpParams& p,
                      std::uint64_t n_events, Rng& rng) {
  if (n_events < 10'000) {
    throw ContractViolation("equilibrium_mc needs at least 1e4 events");
  }
  double w = 0.0;
  double sum = 0.0;
  const std::uint64_t burn_in = n_events / 2;
  for (std::uint64_t i = 0; i < n_events; ++i) {
    const bool ltp = rng.uniform() < p_star;
    w = std::max(0.0, w + stdp_probabilistic(w, ltp, p));
    if (i >= burn_in) sum += w;
  }
  return sum / static_cast<double>(n_events - burn_in);
}

double schedule_advance(double /*current_a_plus*/,
                        std::uint64_t post_spikes_seen, const RunConfig& cfg) {
  const auto doublings = post_spikes_seen / static_cast<std::uint64_t>(
                                                cfg.schedule_period);
  // Past ~1100 doublings the product overflows; the cap applies long before.
  if (doublings > 1000) return cfg.a_plus_init > 0.0 ? cfg.a_plus_max : 0.0;
  return std::min(cfg.a_plus_max,
                  std::ldexp(cfg.a_plus_init, static_cast<int>(doublings)));
}

}  // namespace spikewave
