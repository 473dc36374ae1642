#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sizecache/types.hpp"

namespace sizecache {

struct SketchParams {
  std::size_t depth = 4;
  // Rounded up to a power of two.
  std::size_t width = 1024;
  std::uint64_t sample_size = 10240;
  std::uint32_t counter_cap = 10;
  std::uint64_t seed = 0;
};

/**
 * TinyLFU frequency sketch.
 *
 * A depth x width matrix of 8-bit counters updated with the minimal-increment
 * (conservative update) rule: on record(), only the key's counters that equal
 * the current minimum are incremented. Counters saturate at counter_cap, and
 * every sample_size records the whole matrix is halved (integer floor), which
 * ages out stale popularity.
 *
 * estimate() is the minimum over the key's counters, so it never falls below
 * an exact counter that follows the same cap-and-halve rules.
 *
 * Not thread-safe.
 */
class FrequencySketch {
 public:
  static constexpr std::uint32_t kMaxCounter = 255;

  explicit FrequencySketch(const SketchParams& params = {});

  void record(ObjectKey key);
  Frequency estimate(ObjectKey key) const;

  // Halves every counter and resets the sample clock.
  void halve();
  void clear();

  // Aging period for subsequent records. A value at or below the current
  // record count triggers halving on the next record.
  void set_sample_size(std::uint64_t sample_size);

  std::size_t depth() const { return depth_; }
  std::size_t width() const { return width_; }
  std::uint64_t sample_size() const { return sample_size_; }
  std::uint32_t counter_cap() const { return counter_cap_; }
  std::uint64_t recorded() const { return recorded_; }
  std::uint64_t halvings() const { return halvings_; }

  // Column hit by `key` in `row`; exposed for collision analysis.
  std::size_t index_of(ObjectKey key, std::size_t row) const;
  std::uint8_t counter(std::size_t row, std::size_t column) const {
    return counters_[row * width_ + column];
  }

 private:
  std::size_t depth_;
  std::size_t width_;
  std::uint64_t sample_size_;
  std::uint32_t counter_cap_;
  std::uint64_t recorded_ = 0;
  std::uint64_t halvings_ = 0;
  std::vector<std::uint64_t> seeds_;
  std::vector<std::uint8_t> counters_;
};

}  // namespace sizecache
