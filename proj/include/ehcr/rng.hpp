#pragma once

#include <cmath>
#include <cstdint>

namespace ehcr {

namespace detail {

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

}  // namespace detail

// Counter-based uniform generator. Output n of stream (seed, stream_id) is
// mix64(base + (n+1) * golden), so any position is computable on its own:
// no sequential state to advance, which keeps slot draws independent of
// evaluation order and thread count.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t start = 0)
      : base_(detail::mix64(detail::mix64(seed) + detail::kGolden * (stream_id + 1))),
        counter_(start) {}

  std::uint64_t next_u64() { return detail::mix64(base_ + detail::kGolden * ++counter_); }

  // [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Inverse-CDF exponential with the given mean.
  double next_exponential(double mean) { return -mean * std::log1p(-next_unit()); }

 private:
  std::uint64_t base_;
  std::uint64_t counter_;
};

}  // namespace ehcr
