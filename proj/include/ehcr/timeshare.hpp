#pragma once

#include "ehcr/channel.hpp"
#include "ehcr/params.hpp"

namespace ehcr {

// Outcome of one slot's harvest/transmit split.
struct SlotDecision {
  double alpha = 1.0;     // transmit-phase fraction, (0, 1]
  double rate = 0.0;      // bits/s/Hz
  double tx_power = 0.0;  // SU transmit power, watts
  bool outage = false;    // PU threshold exceeded during this slot
};

// Rate of a slot that harvests for (1 - alpha) T and then spends the whole
// harvest over alpha T:  alpha * log2(1 + (1 - alpha) / alpha * s).
// Throws std::domain_error for alpha outside (0, 1] or s < 0.
double rate_f(double alpha, double s);

// Unique root z0 > 1 of z ln z - z - s + 1 = 0, for s > 0.
double solve_z0(double s);

// Maximizer of rate_f(., s):  s / (s + z0 - 1). An s = 0 slot idles at
// alpha = 1 (nothing to gain from transmitting).
double alpha_unconstrained(double s);

// Smallest transmit fraction that keeps the PU interference at or below
// gamma_th when the whole harvest is spent:  q / (q + gamma_th) with
// q = g * pt * z. Always in [0, 1).
double alpha_boundary(const ChannelDraw& d, const SystemParams& params);

// True when alpha lies strictly below the boundary; the boundary itself is
// safe.
bool outage_indicator(double alpha, const ChannelDraw& d, const SystemParams& params);

// (1 - alpha) / alpha * g * pt: the power that drains the harvested energy
// exactly over the transmit phase. Zero at alpha = 1.
double transmit_power(double alpha, double g, double pt);

// Penalized per-slot rule. Takes the unconstrained optimum a1 when it is
// safe; otherwise transmits at a1 anyway if its rate minus lambda still
// beats the boundary rate, and backs off to the boundary a2 if not (ties
// back off).
SlotDecision choose_alpha(const ChannelDraw& d, const SystemParams& params, double lambda);

}  // namespace ehcr
