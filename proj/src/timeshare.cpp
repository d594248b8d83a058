#include "ehcr/timeshare.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ehcr {

namespace {

// h(w) = (1+w) ln(1+w) - w - s, the root function shifted by w = z - 1.
// Strictly increasing for w > 0 (h' = ln(1+w)) with h(0) = -s. The direct
// form cancels to noise below w ~ 1e-8, where the true value is ~w^2/2, so
// small w switches to the series (1+w)ln(1+w) - w = w^2/2 - w^3/6 + w^4/12 - ...
double h_shifted(double w, double s) {
  if (w < 1e-4) {
    return w * w * (0.5 - w / 6.0 + w * w / 12.0) - s;
  }
  return (1.0 + w) * std::log1p(w) - w - s;
}

// Root of h_shifted: bracket by doubling, then safeguarded Newton (any step
// that leaves the bracket falls back to bisection). Convergence is judged on
// w itself, not on the residual, so small roots keep full relative accuracy.
double solve_w(double s) {
  double lo = 0.0;
  double hi = (s > 3.0) ? s / std::log(s) : std::sqrt(2.0 * s);
  if (!(hi > 0.0)) hi = 1e-300;
  while (h_shifted(hi, s) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }

  constexpr double rel = 4.0 * std::numeric_limits<double>::epsilon();
  double w = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double hv = h_shifted(w, s);
    if (hv == 0.0) return w;
    if (hv < 0.0) {
      lo = w;
    } else {
      hi = w;
    }
    double next = w - hv / std::log1p(w);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - w) <= rel * next) return next;
    w = next;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double rate_f(double alpha, double s) {
  if (!(alpha > 0.0) || alpha > 1.0) throw std::domain_error("rate_f: alpha outside (0, 1]");
  if (!(s >= 0.0)) throw std::domain_error("rate_f: s must be >= 0");
  if (alpha == 1.0 || s == 0.0) return 0.0;
  const double ratio = s * ((1.0 - alpha) / alpha);
  return alpha * std::log1p(ratio) / std::numbers::ln2;
}

double solve_z0(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::domain_error("solve_z0: s must be finite and > 0");
  return 1.0 + solve_w(s);
}

double alpha_unconstrained(double s) {
  if (!(s >= 0.0)) throw std::domain_error("alpha_unconstrained: s must be >= 0");
  if (s == 0.0) return 1.0;
  return s / (s + solve_w(s));
}

double alpha_boundary(const ChannelDraw& d, const SystemParams& params) {
  const double q = d.g * params.pt * d.z;
  if (std::isinf(q)) return 1.0;
  return q / (q + params.gamma_th);
}

bool outage_indicator(double alpha, const ChannelDraw& d, const SystemParams& params) {
  return alpha < alpha_boundary(d, params);
}

double transmit_power(double alpha, double g, double pt) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw std::domain_error("transmit_power: alpha outside (0, 1]");
  }
  return (1.0 - alpha) / alpha * g * pt;
}

SlotDecision choose_alpha(const ChannelDraw& d, const SystemParams& params, double lambda) {
  const double s = snr_factor(d, params);
  if (s == 0.0) {
    return {1.0, 0.0, 0.0, false};  // dead information link: idle the slot
  }
  const double a1 = alpha_unconstrained(s);
  const double a2 = alpha_boundary(d, params);
  double alpha = a1;
  double rate = rate_f(a1, s);
  if (a1 < a2) {
    // a1 violates the threshold: keep it only if the penalized rate still
    // beats the boundary rate; ties back off.
    const double boundary_rate = rate_f(a2, s);
    if (!(rate - lambda > boundary_rate)) {
      alpha = a2;
      rate = boundary_rate;
    }
  }
  return {alpha, rate, transmit_power(alpha, d.g, params.pt),
          outage_indicator(alpha, d, params)};
}

}  // namespace ehcr
