#include "ehcr/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ehcr {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("SystemParams: " + what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

constexpr std::uint64_t kDrawsPerSlot = 4;

}  // namespace

void SystemParams::validate() const {
  require(positive(mu_x), "mu_x must be finite and > 0");
  require(positive(mu_y), "mu_y must be finite and > 0");
  require(positive(mu_g), "mu_g must be finite and > 0");
  require(positive(mu_z), "mu_z must be finite and > 0");
  require(positive(pt), "pt must be finite and > 0");
  require(positive(noise), "noise must be finite and > 0");
  require(positive(gamma_th), "gamma_th must be finite and > 0");
  require(epsilon >= 0.0 && epsilon < 1.0, "epsilon must be in [0, 1)");
  require(m_slots >= 1, "m_slots must be >= 1");
  require(m_train >= 1, "m_train must be >= 1");
}

ChannelDraw draw_slot(CounterRng& rng, const SystemParams& params) {
  ChannelDraw d;
  d.x = rng.next_exponential(params.mu_x);
  d.y = rng.next_exponential(params.mu_y);
  d.g = rng.next_exponential(params.mu_g);
  d.z = rng.next_exponential(params.mu_z);
  return d;
}

ChannelDraw draw_for_slot(const SystemParams& params, Stream stream, std::uint64_t slot) {
  CounterRng rng(params.seed, static_cast<std::uint64_t>(stream), slot * kDrawsPerSlot);
  return draw_slot(rng, params);
}

double snr_factor(const ChannelDraw& d, const SystemParams& params) {
  return d.g * params.pt * d.x / (d.y * params.pt + params.noise);
}

}  // namespace ehcr
