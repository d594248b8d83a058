#pragma once

#include <cstdint>

#include "ehcr/params.hpp"
#include "ehcr/rng.hpp"

namespace ehcr {

// Power gains of the four links during one block-fading slot.
struct ChannelDraw {
  double x = 0.0;
  double y = 0.0;
  double g = 0.0;
  double z = 0.0;
};

// Disjoint substreams for a fixed seed.
enum class Stream : std::uint64_t { kEval = 0, kTrain = 1 };

// Consumes exactly four uniforms, in x, y, g, z order.
ChannelDraw draw_slot(CounterRng& rng, const SystemParams& params);

// Slot i of a stream as a pure function of (seed, stream, i).
ChannelDraw draw_for_slot(const SystemParams& params, Stream stream, std::uint64_t slot);

// S = g * pt * x / (y * pt + noise), the SNR factor that multiplies
// (1 - alpha) / alpha in the slot rate.
double snr_factor(const ChannelDraw& d, const SystemParams& params);

}  // namespace ehcr
