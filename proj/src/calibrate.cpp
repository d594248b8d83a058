#include "ehcr/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ehcr/timeshare.hpp"

namespace ehcr {

double outage_fraction(std::span<const ChannelDraw> draws, const SystemParams& params,
                       double lambda) {
  if (draws.empty()) throw std::invalid_argument("outage_fraction: empty draw set");
  std::size_t outages = 0;
  for (const ChannelDraw& d : draws) {
    outages += choose_alpha(d, params, lambda).outage ? 1 : 0;
  }
  return static_cast<double>(outages) / static_cast<double>(draws.size());
}

std::optional<double> critical_lambda(const ChannelDraw& d, const SystemParams& params) {
  const double s = snr_factor(d, params);
  if (s == 0.0) return std::nullopt;
  const double a1 = alpha_unconstrained(s);
  const double a2 = alpha_boundary(d, params);
  if (!(a1 < a2)) return std::nullopt;
  const double f1 = rate_f(a1, s);
  const double f2 = rate_f(a2, s);
  double lambda = f1 - f2;
  // Rounding in f1 - lambda can leave the penalized rate a hair above f2,
  // which would make the slot outage at its own critical penalty. Nudge up
  // until the exact comparison used by choose_alpha flips to the safe side.
  while (f1 - lambda > f2) {
    lambda = std::nextafter(lambda, std::numeric_limits<double>::infinity());
  }
  return lambda;
}

CalibrationResult calibrate_lambda(std::span<const ChannelDraw> train,
                                   const SystemParams& params) {
  if (train.empty()) throw std::invalid_argument("calibrate_lambda: empty training set");

  std::vector<double> criticals;
  criticals.reserve(train.size());
  for (const ChannelDraw& d : train) {
    if (auto lambda = critical_lambda(d, params)) criticals.push_back(*lambda);
  }

  const auto budget =
      static_cast<std::size_t>(std::floor(params.epsilon * static_cast<double>(train.size())));

  CalibrationResult result;
  if (criticals.size() > budget) {
    // (budget+1)-th largest critical penalty: everything strictly above it
    // outages (at most `budget` slots), ties at it stay safe.
    std::nth_element(criticals.begin(), criticals.begin() + static_cast<std::ptrdiff_t>(budget),
                     criticals.end(), std::greater<>());
    result.lambda = criticals[budget];
    result.binding = result.lambda > 0.0;
  }
  const auto outages = static_cast<std::size_t>(
      std::count_if(criticals.begin(), criticals.end(),
                    [&](double l) { return l > result.lambda; }));
  result.train_outage_fraction =
      static_cast<double>(outages) / static_cast<double>(train.size());
  return result;
}

}  // namespace ehcr
