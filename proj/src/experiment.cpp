#include "ehcr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <utility>

#include "CLI11.hpp"

#include "ehcr/units.hpp"

namespace ehcr {

namespace {

constexpr const char* kCsvHeader =
    "preset,sweep_axis,sweep_value,policy,lambda,avg_rate_bps_hz,p_he_dbm,"
    "outage_fraction,epsilon,gamma_th_dbm,pt_dbw,mu_x,mu_y,mu_g,mu_z,m_slots,"
    "m_train,seed";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string policy_name(Policy::Kind kind) {
  switch (kind) {
    case Policy::Kind::kOptimal: return "optimal";
    case Policy::Kind::kFixedAlpha: return "fixed";
    case Policy::Kind::kUnconstrained: return "unconstrained";
  }
  return "?";
}

Policy make_policy(Policy::Kind kind, double lambda, double fixed_alpha) {
  switch (kind) {
    case Policy::Kind::kOptimal: return Policy::optimal(lambda);
    case Policy::Kind::kFixedAlpha: return Policy::fixed_alpha(fixed_alpha);
    case Policy::Kind::kUnconstrained: return Policy::unconstrained();
  }
  throw std::logic_error("make_policy: bad kind");
}

const RunMetrics& metrics_for(const ScenarioResult& sr, Policy::Kind kind) {
  switch (kind) {
    case Policy::Kind::kOptimal: return sr.optimal;
    case Policy::Kind::kFixedAlpha: return sr.fixed;
    case Policy::Kind::kUnconstrained: return sr.unconstrained;
  }
  throw std::logic_error("metrics_for: bad kind");
}

bool is_log_axis(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kMuX:
    case SweepAxis::kMuY:
    case SweepAxis::kMuG:
    case SweepAxis::kMuZ:
      return true;
    default:
      return false;
  }
}

std::vector<double> make_sweep_values(SweepAxis axis, double start, double stop,
                                      std::size_t n) {
  if (n < 2) throw UsageError("--sweep: point count must be >= 2");
  if (start == stop) throw UsageError("--sweep: start and stop must differ");
  std::vector<double> values(n);
  if (is_log_axis(axis)) {
    if (!(start > 0.0) || !(stop > 0.0)) {
      throw UsageError("--sweep: " + axis_name(axis) + " values must be > 0");
    }
    const double ratio = std::log(stop / start);
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = start * std::exp(ratio * static_cast<double>(i) /
                                   static_cast<double>(n - 1));
    }
  } else {
    const double step = (stop - start) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = start + step * static_cast<double>(i);
    }
  }
  values.front() = start;
  values.back() = stop;
  return values;
}

double parse_double(const std::string& token, const std::string& flag) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw UsageError(flag + ": '" + token + "' is not a number");
  }
}

std::vector<double> parse_value_list(const std::string& token, const std::string& flag) {
  std::vector<double> values;
  std::size_t begin = 0;
  while (begin <= token.size()) {
    const std::size_t comma = token.find(',', begin);
    const std::string item =
        token.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
    values.push_back(parse_double(item, flag));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return values;
}

std::vector<Policy::Kind> parse_policies(const std::string& csv) {
  std::vector<Policy::Kind> kinds;
  std::size_t begin = 0;
  while (begin <= csv.size()) {
    const std::size_t comma = csv.find(',', begin);
    const std::string item =
        csv.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
    Policy::Kind kind;
    if (item == "optimal") {
      kind = Policy::Kind::kOptimal;
    } else if (item == "fixed") {
      kind = Policy::Kind::kFixedAlpha;
    } else if (item == "unconstrained") {
      kind = Policy::Kind::kUnconstrained;
    } else {
      throw UsageError("--policies: unknown policy '" + item +
                       "' (expected optimal, fixed, unconstrained)");
    }
    if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) kinds.push_back(kind);
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  if (kinds.empty()) throw UsageError("--policies: empty policy list");
  return kinds;
}

void write_csv_row(std::ofstream& csv, const ExperimentPlan& plan, double sweep_value,
                   const SystemParams& p, Policy::Kind kind, double lambda,
                   const RunMetrics& m) {
  csv << plan.preset << ',' << axis_name(plan.axis) << ',' << fmt(sweep_value) << ','
      << policy_name(kind) << ',' << fmt(kind == Policy::Kind::kOptimal ? lambda : 0.0)
      << ',' << fmt(m.avg_rate) << ',' << fmt(watts_to_dbm(m.p_he)) << ','
      << fmt(m.outage_fraction) << ',' << fmt(p.epsilon) << ','
      << fmt(watts_to_dbm(p.gamma_th)) << ',' << fmt(watts_to_dbw(p.pt)) << ','
      << fmt(p.mu_x) << ',' << fmt(p.mu_y) << ',' << fmt(p.mu_g) << ',' << fmt(p.mu_z)
      << ',' << p.m_slots << ',' << p.m_train << ',' << p.seed << '\n';
}

}  // namespace

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kMuX: return "mu_x";
    case SweepAxis::kMuY: return "mu_y";
    case SweepAxis::kMuG: return "mu_g";
    case SweepAxis::kMuZ: return "mu_z";
    case SweepAxis::kEpsilon: return "epsilon";
    case SweepAxis::kGammaThDbm: return "gamma_th_dbm";
    case SweepAxis::kPtDbw: return "pt_dbw";
  }
  return "?";
}

SweepAxis axis_from_name(const std::string& name) {
  if (name == "mu_x") return SweepAxis::kMuX;
  if (name == "mu_y") return SweepAxis::kMuY;
  if (name == "mu_g") return SweepAxis::kMuG;
  if (name == "mu_z") return SweepAxis::kMuZ;
  if (name == "epsilon") return SweepAxis::kEpsilon;
  if (name == "gamma_th_dbm") return SweepAxis::kGammaThDbm;
  if (name == "pt_dbw") return SweepAxis::kPtDbw;
  throw UsageError("--sweep: unknown axis '" + name +
                   "' (expected mu_x, mu_y, mu_g, mu_z, epsilon, gamma_th_dbm, pt_dbw)");
}

void ExperimentPlan::validate() const {
  if (values.empty()) {
    throw UsageError("no sweep points; pass --preset or --sweep");
  }
  const bool ascending = values.size() < 2 || values[1] > values[0];
  for (std::size_t i = 1; i < values.size(); ++i) {
    const bool ok = ascending ? values[i] > values[i - 1] : values[i] < values[i - 1];
    if (!ok) throw UsageError("--sweep: values must be strictly monotonic");
  }
  if (policies.empty()) throw UsageError("--policies: empty policy list");
  if (!(fixed_alpha > 0.0) || !(fixed_alpha < 1.0)) {
    throw UsageError("fixed alpha must be in (0, 1)");
  }
  if (threads < 1) throw UsageError("--threads must be >= 1");
  if (out_path.empty()) throw UsageError("--out: empty path");
}

ExperimentPlan preset_plan(const std::string& name) {
  ExperimentPlan plan;
  plan.preset = name;
  plan.base = SystemParams{};  // 30 dBW PU power, -90 dBm noise and threshold
  if (name == "fig3") {
    // Best-case link mix; harvesting channel swept over its realistic range.
    plan.base.mu_x = 1e-3;
    plan.base.mu_y = 1e-7;
    plan.base.mu_z = 1e-9;
    plan.base.epsilon = 0.01;
    plan.axis = SweepAxis::kMuG;
    plan.values = make_sweep_values(plan.axis, 1e-8, 1e-2, 13);
  } else if (name == "fig4") {
    // Weak PU-side interference channel: the calibrated rule tracks the
    // unconstrained upper bound across this range.
    plan.base.mu_x = 1e-3;
    plan.base.mu_y = 1e-7;
    plan.base.mu_z = 1e-8;
    plan.base.epsilon = 0.01;
    plan.axis = SweepAxis::kMuG;
    plan.values = make_sweep_values(plan.axis, 1e-10, 1e-8, 9);
  } else if (name == "fig5") {
    plan.base.mu_x = 1e-5;
    plan.base.mu_y = 1e-7;
    plan.base.mu_z = 1e-6;
    plan.base.mu_g = 1e-5;
    plan.axis = SweepAxis::kEpsilon;
    plan.values = {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  } else if (name == "fig6") {
    plan.base.mu_x = 1e-5;
    plan.base.mu_y = 1e-7;
    plan.base.mu_z = 1e-6;
    plan.base.mu_g = 1e-5;
    plan.base.epsilon = 0.01;
    plan.axis = SweepAxis::kGammaThDbm;
    plan.values = make_sweep_values(plan.axis, -90.0, -30.0, 13);
  } else {
    throw UsageError("--preset: unknown preset '" + name +
                     "' (expected fig3, fig4, fig5, fig6)");
  }
  return plan;
}

SystemParams apply_axis(const SystemParams& base, SweepAxis axis, double value) {
  SystemParams p = base;
  switch (axis) {
    case SweepAxis::kMuX: p.mu_x = value; break;
    case SweepAxis::kMuY: p.mu_y = value; break;
    case SweepAxis::kMuG: p.mu_g = value; break;
    case SweepAxis::kMuZ: p.mu_z = value; break;
    case SweepAxis::kEpsilon: p.epsilon = value; break;
    case SweepAxis::kGammaThDbm: p.gamma_th = dbm_to_watts(value); break;
    case SweepAxis::kPtDbw: p.pt = dbw_to_watts(value); break;
  }
  return p;
}

ExperimentPlan parse_args(const std::vector<std::string>& args) {
  CLI::App app{"underlay energy-harvesting link simulator"};

  std::string preset;
  std::vector<std::string> sweep;
  double mu_x = 0, mu_y = 0, mu_g = 0, mu_z = 0;
  double gamma_th_dbm = 0, pt_dbw = 0, epsilon = 0;
  std::uint64_t slots = 0, train_slots = 0, seed = 0, trace = 0;
  int threads = 1;
  bool in_sample = false;
  std::string policies, out_path;

  app.add_option("--preset", preset, "fig3 | fig4 | fig5 | fig6");
  auto* sweep_opt =
      app.add_option("--sweep", sweep,
                     "<axis> <start> <stop> <npoints|v1,v2,...> (mu axes log-spaced)")
          ->expected(4);
  auto* mu_x_opt = app.add_option("--mu-x", mu_x, "mean gain, SU-TX to SU-RX (linear)");
  auto* mu_y_opt = app.add_option("--mu-y", mu_y, "mean gain, PU-TX to SU-RX (linear)");
  auto* mu_g_opt = app.add_option("--mu-g", mu_g, "mean gain, PU-TX to harvester (linear)");
  auto* mu_z_opt = app.add_option("--mu-z", mu_z, "mean gain, SU-TX to PU-RX (linear)");
  auto* gamma_opt =
      app.add_option("--gamma-th-dbm", gamma_th_dbm, "PU interference threshold, dBm");
  auto* eps_opt = app.add_option("--epsilon", epsilon, "allowed outage fraction, [0, 1)");
  auto* pt_opt = app.add_option("--pt-dbw", pt_dbw, "PU transmit power, dBW");
  auto* slots_opt = app.add_option("--slots", slots, "evaluation slots per sweep point");
  auto* train_opt =
      app.add_option("--train-slots", train_slots, "calibration slots (default: --slots)");
  auto* seed_opt = app.add_option("--seed", seed, "base RNG seed");
  auto* policies_opt = app.add_option(
      "--policies", policies, "comma list of optimal, fixed, unconstrained");
  auto* out_opt = app.add_option("--out", out_path, "CSV output path");
  auto* trace_opt = app.add_option("--trace", trace, "print the first N slot records");
  auto* threads_opt = app.add_option("--threads", threads, "worker threads per run");
  app.add_flag("--in-sample", in_sample, "calibrate on the evaluation draws");

  ExperimentPlan plan;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    plan.help = true;
    return plan;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (!preset.empty()) plan = preset_plan(preset);

  if (mu_x_opt->count() != 0u) plan.base.mu_x = mu_x;
  if (mu_y_opt->count() != 0u) plan.base.mu_y = mu_y;
  if (mu_g_opt->count() != 0u) plan.base.mu_g = mu_g;
  if (mu_z_opt->count() != 0u) plan.base.mu_z = mu_z;
  for (const auto& [opt, name, v] :
       {std::tuple{mu_x_opt, "--mu-x", mu_x}, std::tuple{mu_y_opt, "--mu-y", mu_y},
        std::tuple{mu_g_opt, "--mu-g", mu_g}, std::tuple{mu_z_opt, "--mu-z", mu_z}}) {
    if (opt->count() != 0u && (!std::isfinite(v) || v <= 0.0)) {
      throw UsageError(std::string(name) + ": mean gain must be finite and > 0");
    }
  }
  if (gamma_opt->count() != 0u) plan.base.gamma_th = dbm_to_watts(gamma_th_dbm);
  if (pt_opt->count() != 0u) plan.base.pt = dbw_to_watts(pt_dbw);
  if (eps_opt->count() != 0u) {
    if (!(epsilon >= 0.0) || epsilon >= 1.0) {
      throw UsageError("--epsilon: must be in [0, 1)");
    }
    plan.base.epsilon = epsilon;
  }
  if (slots_opt->count() != 0u) {
    if (slots == 0) throw UsageError("--slots: must be >= 1");
    plan.base.m_slots = slots;
    plan.base.m_train = slots;
  }
  if (train_opt->count() != 0u) {
    if (train_slots == 0) throw UsageError("--train-slots: must be >= 1");
    plan.base.m_train = train_slots;
  }
  if (seed_opt->count() != 0u) plan.base.seed = seed;
  if (policies_opt->count() != 0u) plan.policies = parse_policies(policies);
  if (out_opt->count() != 0u) plan.out_path = out_path;
  if (trace_opt->count() != 0u) plan.trace_slots = trace;
  if (threads_opt->count() != 0u) {
    if (threads < 1) throw UsageError("--threads: must be >= 1");
    plan.threads = threads;
  }
  plan.in_sample = in_sample;

  if (sweep_opt->count() != 0u) {
    plan.axis = axis_from_name(sweep[0]);
    const double start = parse_double(sweep[1], "--sweep");
    const double stop = parse_double(sweep[2], "--sweep");
    if (sweep[3].find(',') != std::string::npos) {
      plan.values = parse_value_list(sweep[3], "--sweep");
      if (plan.values.front() != start || plan.values.back() != stop) {
        throw UsageError("--sweep: list endpoints must match start and stop");
      }
    } else {
      const double n = parse_double(sweep[3], "--sweep");
      if (!(n >= 2.0) || n != std::floor(n) || n > 1e6) {
        throw UsageError("--sweep: point count must be an integer >= 2");
      }
      plan.values = make_sweep_values(plan.axis, start, stop, static_cast<std::size_t>(n));
    }
  }

  return plan;
}

std::string usage() {
  return
      "usage: ehcr_sim [--preset fig3|fig4|fig5|fig6] [options]\n"
      "\n"
      "  --preset NAME                 load a figure preset (sweep + parameters)\n"
      "  --sweep AXIS START STOP N     sweep AXIS over N points (mu axes log-spaced,\n"
      "                                others linear); the 4th token may instead be a\n"
      "                                comma list v1,v2,... whose endpoints match\n"
      "                                START/STOP. Axes: mu_x mu_y mu_g mu_z epsilon\n"
      "                                gamma_th_dbm pt_dbw\n"
      "  --mu-x V --mu-y V --mu-g V --mu-z V   mean channel power gains (linear)\n"
      "  --gamma-th-dbm V              PU interference threshold, dBm\n"
      "  --epsilon V                   allowed outage fraction, [0, 1)\n"
      "  --pt-dbw V                    PU transmit power, dBW\n"
      "  --slots N                     evaluation slots per point (default 10000)\n"
      "  --train-slots N               calibration slots (default: --slots)\n"
      "  --seed N                      base RNG seed (default 42)\n"
      "  --policies LIST               optimal,fixed,unconstrained (default all)\n"
      "  --out PATH                    CSV output path (default sweep.csv)\n"
      "  --trace N                     print the first N slot records per point\n"
      "  --threads N                   worker threads per run (default 1)\n"
      "  --in-sample                   calibrate on the evaluation draws\n";
}

void run_plan(const ExperimentPlan& plan, std::ostream& summary) {
  plan.validate();

  std::ofstream csv(plan.out_path);
  if (!csv) throw std::runtime_error("cannot open output file: " + plan.out_path);
  csv << kCsvHeader << '\n';

  for (const double value : plan.values) {
    const SystemParams p = apply_axis(plan.base, plan.axis, value);
    p.validate();

    ScenarioOptions so;
    so.fixed_alpha = plan.fixed_alpha;
    so.in_sample = plan.in_sample;
    so.threads = plan.threads;
    const ScenarioResult sr = run_scenario(p, so);

    summary << '[' << plan.preset << "] " << axis_name(plan.axis) << '=' << fmt(value)
            << " lambda=" << fmt(sr.calibration.lambda);
    for (const Policy::Kind kind : plan.policies) {
      const RunMetrics& m = metrics_for(sr, kind);
      write_csv_row(csv, plan, value, p, kind, sr.calibration.lambda, m);
      summary << " | " << policy_name(kind) << " rate=" << fmt(m.avg_rate)
              << " phe_dbm=" << fmt(watts_to_dbm(m.p_he))
              << " outage=" << fmt(m.outage_fraction);
    }
    summary << '\n';

    for (const Policy::Kind kind : plan.policies) {
      if (plan.trace_slots == 0) break;
      const Policy pol = make_policy(kind, sr.calibration.lambda, plan.fixed_alpha);
      const std::uint64_t n = std::min<std::uint64_t>(plan.trace_slots, p.m_slots);
      for (std::uint64_t i = 0; i < n; ++i) {
        const ChannelDraw d = draw_for_slot(p, Stream::kEval, i);
        const SlotDecision dec = decide(pol, d, p);
        summary << "  trace " << policy_name(kind) << " slot=" << i << " x=" << fmt(d.x)
                << " y=" << fmt(d.y) << " g=" << fmt(d.g) << " z=" << fmt(d.z)
                << " alpha=" << fmt(dec.alpha) << " rate=" << fmt(dec.rate)
                << " tx_w=" << fmt(dec.tx_power) << " outage=" << (dec.outage ? 1 : 0)
                << '\n';
      }
    }
  }
  if (!csv.flush()) throw std::runtime_error("failed writing " + plan.out_path);
}

}  // namespace ehcr
