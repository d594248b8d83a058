#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "ehcr/channel.hpp"
#include "ehcr/rng.hpp"

using namespace ehcr;

TEST_CASE("counter rng is deterministic and stream-separated") {
  CounterRng a(42, 0);
  CounterRng b(42, 0);
  for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());

  CounterRng c(42, 1);
  CounterRng d(43, 0);
  std::set<std::uint64_t> seen;
  CounterRng e(42, 0);
  for (int i = 0; i < 64; ++i) {
    seen.insert(e.next_u64());
    seen.insert(c.next_u64());
    seen.insert(d.next_u64());
  }
  CHECK(seen.size() == 192);  // no collisions across seeds or streams
}

TEST_CASE("counter rng start offset matches sequential draws") {
  CounterRng seq(7, 3);
  std::vector<std::uint64_t> first(10);
  for (auto& v : first) v = seq.next_u64();

  CounterRng jump(7, 3, 6);
  CHECK(jump.next_u64() == first[6]);
  CHECK(jump.next_u64() == first[7]);
}

TEST_CASE("unit doubles stay in [0, 1)") {
  CounterRng r(99, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("exponential draws match mean and tail statistics") {
  const int n = 1000000;
  const double mean = 2.5;
  CounterRng r(2024, 0);
  double sum = 0.0;
  int above_mean = 0;
  double min_v = 1e300;
  for (int i = 0; i < n; ++i) {
    const double v = r.next_exponential(mean);
    CHECK(v >= 0.0);
    sum += v;
    if (v > mean) ++above_mean;
    min_v = std::min(min_v, v);
  }
  // mean: se = mean/sqrt(n); tail P(X > mean) = exp(-1), se = sqrt(p(1-p)/n)
  const double se_mean = mean / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(sum / n - mean) < 5.0 * se_mean);
  const double p = std::exp(-1.0);
  const double se_tail = std::sqrt(p * (1.0 - p) / n);
  CHECK(std::abs(static_cast<double>(above_mean) / n - p) < 5.0 * se_tail);
  CHECK(min_v < mean * 1e-4);
}

TEST_CASE("slot draws are addressable out of order") {
  SystemParams p;
  p.seed = 77;
  std::vector<ChannelDraw> forward(20);
  for (std::uint64_t i = 0; i < 20; ++i) forward[i] = draw_for_slot(p, Stream::kEval, i);

  for (std::uint64_t i = 20; i-- > 0;) {
    const ChannelDraw d = draw_for_slot(p, Stream::kEval, i);
    CHECK(d.x == forward[i].x);
    CHECK(d.y == forward[i].y);
    CHECK(d.g == forward[i].g);
    CHECK(d.z == forward[i].z);
  }

  // sequential generation through one rng agrees with per-slot addressing
  CounterRng r(p.seed, static_cast<std::uint64_t>(Stream::kEval));
  for (std::uint64_t i = 0; i < 20; ++i) {
    const ChannelDraw d = draw_slot(r, p);
    CHECK(d.x == forward[i].x);
    CHECK(d.z == forward[i].z);
  }
}

TEST_CASE("train and eval streams are distinct") {
  SystemParams p;
  const ChannelDraw a = draw_for_slot(p, Stream::kEval, 0);
  const ChannelDraw b = draw_for_slot(p, Stream::kTrain, 0);
  CHECK(a.x != b.x);
  CHECK(a.g != b.g);
}

TEST_CASE("draw means track the configured channel gains") {
  SystemParams p;
  p.mu_x = 1e-3;
  p.mu_y = 1e-7;
  p.mu_g = 1e-5;
  p.mu_z = 1e-9;
  p.seed = 5;
  const int n = 200000;
  double sx = 0, sy = 0, sg = 0, sz = 0;
  CounterRng r(p.seed, 0);
  for (int i = 0; i < n; ++i) {
    const ChannelDraw d = draw_slot(r, p);
    sx += d.x;
    sy += d.y;
    sg += d.g;
    sz += d.z;
  }
  const double tol = 5.0 / std::sqrt(static_cast<double>(n));  // 5 se, relative
  CHECK(std::abs(sx / n / p.mu_x - 1.0) < tol);
  CHECK(std::abs(sy / n / p.mu_y - 1.0) < tol);
  CHECK(std::abs(sg / n / p.mu_g - 1.0) < tol);
  CHECK(std::abs(sz / n / p.mu_z - 1.0) < tol);
}

TEST_CASE("snr factor composes the draw with system power levels") {
  SystemParams p;
  p.pt = 1000.0;
  p.noise = 1e-12;
  ChannelDraw d{2e-3, 3e-7, 5e-6, 1e-9};
  // g*pt*x / (y*pt + noise) = 5e-6*1000*2e-3 / (3e-7*1000 + 1e-12)
  const double expect = 1e-5 / 3.00000000001e-4;
  CHECK(snr_factor(d, p) == doctest::Approx(expect).epsilon(1e-9));

  d.y = 0.0;  // noise-limited corner
  CHECK(snr_factor(d, p) == doctest::Approx(5e-6 * 1000.0 * 2e-3 / 1e-12).epsilon(1e-12));

  const ChannelDraw strong{1e-3, 0.0, 1e-3, 0.0};
  CHECK(snr_factor(strong, p) == doctest::Approx(1e9).epsilon(1e-12));

  ChannelDraw dead = strong;
  dead.x = 0.0;
  CHECK(snr_factor(dead, p) == 0.0);

  ChannelDraw drowned = strong;
  drowned.y = 1e30;  // interference-dominated: S pushed to nothing
  CHECK(snr_factor(drowned, p) < 1e-20);
}

TEST_CASE("parameter validation names the offending field") {
  SystemParams p;
  CHECK_NOTHROW(p.validate());

  SystemParams bad = p;
  bad.mu_x = 0.0;
  CHECK_THROWS_WITH_AS(bad.validate(), "SystemParams: mu_x must be finite and > 0",
                       std::invalid_argument);
  bad = p;
  bad.epsilon = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.epsilon = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.m_slots = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.gamma_th = -1e-12;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.noise = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
