#include "sizecache/frequency_sketch.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace sizecache {
namespace {

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

FrequencySketch::FrequencySketch(const SketchParams& params)
    : depth_(params.depth),
      width_(std::bit_ceil(std::max<std::size_t>(params.width, 1))),
      sample_size_(params.sample_size),
      counter_cap_(std::clamp<std::uint32_t>(params.counter_cap, 1, kMaxCounter)) {
  if (depth_ == 0) throw std::invalid_argument("sketch depth must be positive");
  if (sample_size_ == 0) throw std::invalid_argument("sketch sample size must be positive");
  seeds_.reserve(depth_);
  std::uint64_t state = params.seed;
  for (std::size_t row = 0; row < depth_; ++row) {
    state = mix64(state + row);
    seeds_.push_back(state | 1);
  }
  counters_.assign(depth_ * width_, 0);
}

std::size_t FrequencySketch::index_of(ObjectKey key, std::size_t row) const {
  return static_cast<std::size_t>(mix64(key ^ seeds_[row]) & (width_ - 1));
}

void FrequencySketch::record(ObjectKey key) {
  const Frequency minimum = estimate(key);
  if (minimum < counter_cap_) {
    for (std::size_t row = 0; row < depth_; ++row) {
      auto& cell = counters_[row * width_ + index_of(key, row)];
      if (cell == minimum) ++cell;
    }
  }
  if (++recorded_ >= sample_size_) halve();
}

Frequency FrequencySketch::estimate(ObjectKey key) const {
  std::uint8_t minimum = std::numeric_limits<std::uint8_t>::max();
  for (std::size_t row = 0; row < depth_; ++row) {
    minimum = std::min(minimum, counters_[row * width_ + index_of(key, row)]);
  }
  return minimum;
}

void FrequencySketch::halve() {
  for (auto& c : counters_) c = static_cast<std::uint8_t>(c >> 1);
  recorded_ = 0;
  ++halvings_;
}

void FrequencySketch::clear() {
  std::fill(counters_.begin(), counters_.end(), 0);
  recorded_ = 0;
}

void FrequencySketch::set_sample_size(std::uint64_t sample_size) {
  if (sample_size == 0) throw std::invalid_argument("sketch sample size must be positive");
  sample_size_ = sample_size;
}

}  // namespace sizecache
