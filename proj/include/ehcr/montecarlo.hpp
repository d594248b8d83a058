#pragma once

#include <cstdint>
#include <vector>

#include "ehcr/calibrate.hpp"
#include "ehcr/channel.hpp"
#include "ehcr/params.hpp"
#include "ehcr/timeshare.hpp"

namespace ehcr {

// A per-slot time-share rule.
struct Policy {
  enum class Kind { kOptimal, kFixedAlpha, kUnconstrained };

  // Penalized rule with a fixed lambda >= 0.
  static Policy optimal(double lambda);
  // Constant split in (0, 1); outages are recorded but never enforced.
  static Policy fixed_alpha(double alpha);
  // Always the per-slot optimum a1: the rate upper bound.
  static Policy unconstrained();

  Kind kind = Kind::kUnconstrained;
  double lambda = 0.0;
  double alpha = 0.5;
};

struct RunMetrics {
  double avg_rate = 0.0;         // bits/s/Hz
  double p_he = 0.0;             // mean SU transmit power (= harvest drain), watts
  double outage_fraction = 0.0;
  std::uint64_t m_slots = 0;
};

struct SlotRecord {
  std::uint64_t slot = 0;
  ChannelDraw draw;
  SlotDecision decision;
};

struct RunOptions {
  int threads = 1;
  std::uint64_t first_slot = 0;   // evaluate slots [first_slot, first_slot + m_slots)
  std::uint64_t trace_slots = 0;  // record the first N evaluated slots
};

struct RunResult {
  RunMetrics metrics;
  std::vector<SlotRecord> trace;
};

SlotDecision decide(const Policy& policy, const ChannelDraw& d, const SystemParams& params);

// Evaluates m_slots slots of the evaluation stream under one policy.
// Aggregation is blocked pairwise summation with a fixed reduction order,
// so the metrics are identical for any thread count.
RunResult run(const Policy& policy, const SystemParams& params, const RunOptions& opts = {});

struct ScenarioOptions {
  double fixed_alpha = 0.5;
  bool in_sample = false;  // calibrate on the evaluation draws themselves
  int threads = 1;
};

struct ScenarioResult {
  CalibrationResult calibration;
  RunMetrics optimal;
  RunMetrics fixed;
  RunMetrics unconstrained;
};

// Calibrates lambda on m_train training draws, then runs the calibrated,
// fixed-alpha and unconstrained policies over the same evaluation draws.
ScenarioResult run_scenario(const SystemParams& params, const ScenarioOptions& opts = {});

}  // namespace ehcr
