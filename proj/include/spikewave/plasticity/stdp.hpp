#pragma once

#include <cstdint>
#include <span>

#include "spikewave/core/config.hpp"
#include "spikewave/core/rng.hpp"
#include "spikewave/core/types.hpp"

namespace spikewave {

struct StdpParams {
  double a_plus = 0.015625;
  double ratio = 4.0 / 3.0;  // a+ / a-
  double epsilon = 0.1;      // coincidence window, Nessler rule only

  double a_minus() const { return a_plus / ratio; }
};

// Open-interval guard for the multiplicative rule.
inline constexpr double kOriginalWeightFloor = 1e-6;
inline constexpr double kOriginalWeightCeil = 1.0 - 1e-6;

// a+ w (1-w) when the presynaptic spike precedes (or coincides with) the
// postsynaptic one, -a- w (1-w) otherwise. Requires 0 < w < 1.
double stdp_original(double w, bool pre_before_post, const StdpParams& p);

// Reference rule with negative weights: e^-w - 1 inside (0, epsilon),
// -1 otherwise. Not used by the trainer.
double stdp_nessler(double w, double dt, const StdpParams& p);

// a+ e^-w on LTP, -a- on LTD. Requires w >= 0.
double stdp_probabilistic(double w, bool pre_before_post, const StdpParams& p);

// Applies one update of `rule` and the rule's clamp; returns the new weight.
double stdp_apply(Rule rule, double w, bool pre_before_post,
                  const StdpParams& p);

// w <- w + a+ e^-w, n times.
double ltp_recursion(double w0, double a_plus, std::uint64_t n);

// The closed form a+ (1 - e^{-n a+}) / (1 - e^{-a+}), evaluated verbatim.
// It is often quoted as a ceiling for ltp_recursion, but direct iteration
// already exceeds it at n = 3 for a+ = 1; the recursion is unbounded and
// grows like ln(n a+). Kept for comparison only.
double ltp_bound_claimed(double a_plus, std::uint64_t n);
// n -> infinity limit of ltp_bound_claimed: a+ / (1 - e^{-a+}).
double ltp_bound_claimed_limit(double a_plus);

// Fixed point of the probabilistic rule: ln(a+/a-) + logit(p_star).
double equilibrium_weight(double p_star, const StdpParams& p);

// Monte-Carlo check of equilibrium_weight: a single synapse receives LTP with
// probability p_star per postsynaptic event (LTD otherwise), floor-clamped at
// zero, starting from w = 0. Returns the mean over the trailing half.
double equilibrium_mc(double p_star, const StdpParams& p,
                      std::uint64_t n_events, Rng& rng);

// a+ after `post_spikes_seen` postsynaptic spikes: the initial value doubled
// every schedule_period spikes, capped at a_plus_max.
double schedule_advance(double current_a_plus, std::uint64_t post_spikes_seen,
                        const RunConfig& cfg);

}  // namespace spikewave
