#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehcr/montecarlo.hpp"
#include "ehcr/params.hpp"

namespace ehcr {

// Command-line or plan-level mistakes; the message names the flag at fault.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SweepAxis { kMuX, kMuY, kMuG, kMuZ, kEpsilon, kGammaThDbm, kPtDbw };

std::string axis_name(SweepAxis axis);
SweepAxis axis_from_name(const std::string& name);

struct ExperimentPlan {
  SystemParams base;
  std::string preset = "custom";
  SweepAxis axis = SweepAxis::kMuG;
  // Sweep values in axis units: dBm for gamma_th_dbm, dBW for pt_dbw,
  // linear otherwise. Non-empty and strictly monotonic.
  std::vector<double> values;
  std::vector<Policy::Kind> policies = {Policy::Kind::kOptimal, Policy::Kind::kFixedAlpha,
                                        Policy::Kind::kUnconstrained};
  double fixed_alpha = 0.5;
  bool in_sample = false;
  int threads = 1;
  std::uint64_t trace_slots = 0;
  std::string out_path = "sweep.csv";
  bool help = false;

  void validate() const;  // throws UsageError
};

// fig3 | fig4 | fig5 | fig6.
ExperimentPlan preset_plan(const std::string& name);

// argv-style tokens (program name excluded). Throws UsageError on bad
// input; returns plan.help = true for -h/--help.
ExperimentPlan parse_args(const std::vector<std::string>& args);

std::string usage();

// Returns base with one axis value applied (dB axes are converted here).
SystemParams apply_axis(const SystemParams& base, SweepAxis axis, double value);

// Runs every sweep point (lambda recalibrated at each), writes the CSV to
// plan.out_path and a one-line-per-point summary to the stream.
void run_plan(const ExperimentPlan& plan, std::ostream& summary);

}  // namespace ehcr
