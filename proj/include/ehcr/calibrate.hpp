#pragma once

#include <optional>
#include <span>

#include "ehcr/channel.hpp"
#include "ehcr/params.hpp"

namespace ehcr {

struct CalibrationResult {
  double lambda = 0.0;
  double train_outage_fraction = 0.0;
  bool binding = false;  // false when lambda = 0 already meets the target
};

// Fraction of draws that choose_alpha(., ., lambda) leaves in outage.
// Throws std::invalid_argument on an empty set.
double outage_fraction(std::span<const ChannelDraw> draws, const SystemParams& params,
                       double lambda);

// Smallest penalty at which the slot stops outaging, or nullopt when its
// unconstrained optimum is already safe. choose_alpha(d, p, lambda) outages
// for lambda below the returned value and is safe at and above it.
std::optional<double> critical_lambda(const ChannelDraw& d, const SystemParams& params);

// Smallest lambda whose training outage count stays within
// K = floor(epsilon * m): zero when at most K slots have a critical penalty,
// otherwise the (K+1)-th largest critical penalty. Ties at the chosen
// lambda do not outage, so the count never exceeds K.
CalibrationResult calibrate_lambda(std::span<const ChannelDraw> train,
                                   const SystemParams& params);

}  // namespace ehcr
