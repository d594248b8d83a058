#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ehcr {

// Pairwise (binary-counter) summation. The reduction tree is a function of
// the number and order of pushed values only, so totals reproduce bit for
// bit across runs and thread counts whenever the push order is fixed, and
// rounding error grows like log2(n) instead of n.
class PairwiseSum {
 public:
  void add(double v) {
    std::size_t level = 0;
    for (std::uint64_t m = count_; m & 1u; m >>= 1, ++level) {
      v += levels_[level];
    }
    if (level == levels_.size()) {
      levels_.push_back(v);
    } else {
      levels_[level] = v;
    }
    ++count_;
  }

  double total() const {
    double t = 0.0;
    std::uint64_t m = count_;
    for (std::size_t level = 0; m != 0; m >>= 1, ++level) {
      if (m & 1u) t += levels_[level];
    }
    return t;
  }

  std::uint64_t count() const { return count_; }

 private:
  std::vector<double> levels_;
  std::uint64_t count_ = 0;
};

}  // namespace ehcr
