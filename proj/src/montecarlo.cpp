#include "ehcr/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "ehcr/pairwise_sum.hpp"

namespace ehcr {

namespace {

// Fixed block size so the reduction tree never depends on the thread count.
constexpr std::uint64_t kBlockSlots = 1 << 16;

struct BlockSums {
  double rate = 0.0;
  double power = 0.0;
  std::uint64_t outages = 0;
};

BlockSums eval_block(const Policy& policy, const SystemParams& params, std::uint64_t begin,
                     std::uint64_t end) {
  PairwiseSum rate;
  PairwiseSum power;
  std::uint64_t outages = 0;
  for (std::uint64_t slot = begin; slot < end; ++slot) {
    const ChannelDraw d = draw_for_slot(params, Stream::kEval, slot);
    const SlotDecision dec = decide(policy, d, params);
    rate.add(dec.rate);
    power.add(dec.tx_power);
    outages += dec.outage ? 1 : 0;
  }
  return {rate.total(), power.total(), outages};
}

}  // namespace

Policy Policy::optimal(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("Policy::optimal: lambda must be finite and >= 0");
  }
  Policy p;
  p.kind = Kind::kOptimal;
  p.lambda = lambda;
  return p;
}

Policy Policy::fixed_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("Policy::fixed_alpha: alpha must be in (0, 1)");
  }
  Policy p;
  p.kind = Kind::kFixedAlpha;
  p.alpha = alpha;
  return p;
}

Policy Policy::unconstrained() { return Policy{}; }

SlotDecision decide(const Policy& policy, const ChannelDraw& d, const SystemParams& params) {
  if (policy.kind == Policy::Kind::kOptimal) {
    return choose_alpha(d, params, policy.lambda);
  }
  const double s = snr_factor(d, params);
  const double alpha =
      policy.kind == Policy::Kind::kFixedAlpha ? policy.alpha : alpha_unconstrained(s);
  return {alpha, rate_f(alpha, s), transmit_power(alpha, d.g, params.pt),
          outage_indicator(alpha, d, params)};
}

RunResult run(const Policy& policy, const SystemParams& params, const RunOptions& opts) {
  params.validate();
  if (opts.threads < 1) throw std::invalid_argument("run: threads must be >= 1");

  const std::uint64_t m = params.m_slots;
  const std::uint64_t first = opts.first_slot;
  const std::uint64_t nblocks = (m + kBlockSlots - 1) / kBlockSlots;

  std::vector<BlockSums> partial(nblocks);
  auto block_range = [&](std::uint64_t b) {
    const std::uint64_t begin = first + b * kBlockSlots;
    return std::pair{begin, std::min(begin + kBlockSlots, first + m)};
  };

  const auto nworkers =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(opts.threads), nblocks);
  if (nworkers <= 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b) {
      const auto [begin, end] = block_range(b);
      partial[b] = eval_block(policy, params, begin, end);
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
      for (std::uint64_t b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1)) {
        const auto [begin, end] = block_range(b);
        partial[b] = eval_block(policy, params, begin, end);
      }
    };
    std::vector<std::future<void>> futures;
    futures.reserve(nworkers);
    for (std::uint64_t i = 0; i < nworkers; ++i) {
      futures.push_back(std::async(std::launch::async, worker));
    }
    for (auto& f : futures) f.get();
  }

  PairwiseSum rate;
  PairwiseSum power;
  std::uint64_t outages = 0;
  for (const BlockSums& b : partial) {
    rate.add(b.rate);
    power.add(b.power);
    outages += b.outages;
  }

  RunResult result;
  result.metrics.avg_rate = rate.total() / static_cast<double>(m);
  result.metrics.p_he = power.total() / static_cast<double>(m);
  result.metrics.outage_fraction = static_cast<double>(outages) / static_cast<double>(m);
  result.metrics.m_slots = m;

  const std::uint64_t ntrace = std::min(opts.trace_slots, m);
  result.trace.reserve(ntrace);
  for (std::uint64_t i = 0; i < ntrace; ++i) {
    const ChannelDraw d = draw_for_slot(params, Stream::kEval, first + i);
    result.trace.push_back({first + i, d, decide(policy, d, params)});
  }
  return result;
}

ScenarioResult run_scenario(const SystemParams& params, const ScenarioOptions& opts) {
  params.validate();

  const Stream train_stream = opts.in_sample ? Stream::kEval : Stream::kTrain;
  std::vector<ChannelDraw> train(params.m_train);
  for (std::uint64_t i = 0; i < params.m_train; ++i) {
    train[i] = draw_for_slot(params, train_stream, i);
  }

  ScenarioResult result;
  result.calibration = calibrate_lambda(train, params);

  RunOptions ro;
  ro.threads = opts.threads;
  result.optimal = run(Policy::optimal(result.calibration.lambda), params, ro).metrics;
  result.fixed = run(Policy::fixed_alpha(opts.fixed_alpha), params, ro).metrics;
  result.unconstrained = run(Policy::unconstrained(), params, ro).metrics;
  return result;
}

}  // namespace ehcr
