#include "sizecache/size_aware_cache.hpp"

#include <algorithm>
#include <bit>

namespace sizecache {
namespace {

constexpr std::size_t kMinSketchWidth = 16;
constexpr std::size_t kMaxSketchWidth = std::size_t{1} << 22;
constexpr std::uint64_t kSketchSeedSalt = 0x5ca1ab1e0ddba11ULL;

SketchParams initial_sketch(const PolicyConfig& config) {
  if (config.sketch.fixed) return *config.sketch.fixed;
  // Placeholder until the first access provides a size estimate.
  return SketchParams{.depth = config.sketch.depth,
                      .width = kMinSketchWidth,
                      .sample_size = 1,
                      .counter_cap = 1,
                      .seed = config.rng_seed ^ kSketchSeedSalt};
}

}  // namespace

SizeAwareCache::SizeAwareCache(const PolicyConfig& config)
    : CachePolicy((config.validate(), config)),
      window_(EvictionPolicy::Lru, config.window_capacity(), SegmentTag::Window),
      main_(config.eviction, config.main_capacity(), SegmentTag::Main),
      sketch_(initial_sketch(config)),
      rng_(config.rng_seed),
      sketch_tuned_(config.sketch.fixed.has_value()) {}

bool SizeAwareCache::contains(ObjectKey key) const {
  return window_.contains(key) || main_.contains(key);
}

void SizeAwareCache::tune_sketch() {
  const PolicyConfig& cfg = config();
  if (cfg.sketch.fixed || size_count_ == 0) return;

  const long double mean = size_sum_ / static_cast<long double>(size_count_);
  const auto items = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(static_cast<long double>(cfg.capacity_bytes) / mean));
  const std::uint64_t sample_size = std::uint64_t{cfg.sketch.sample_factor} * items;
  const std::uint32_t bit_limit = (1U << cfg.sketch.counter_bits) - 1;
  const auto cap = static_cast<std::uint32_t>(
      std::clamp<std::uint64_t>(sample_size / items, 1, std::min(bit_limit, FrequencySketch::kMaxCounter)));
  const std::size_t width = std::clamp<std::size_t>(std::bit_ceil(items), kMinSketchWidth, kMaxSketchWidth);

  if (!sketch_tuned_ || width > sketch_.width()) {
    sketch_ = FrequencySketch(SketchParams{.depth = cfg.sketch.depth,
                                           .width = width,
                                           .sample_size = sample_size,
                                           .counter_cap = cap,
                                           .seed = cfg.rng_seed ^ kSketchSeedSalt});
    sketch_tuned_ = true;
  } else {
    sketch_.set_sample_size(sample_size);
  }
  seen_halvings_ = sketch_.halvings();
}

AccessOutcome SizeAwareCache::do_access(ObjectKey key, Bytes size) {
  Segment* home = window_.contains(key) ? &window_ : main_.contains(key) ? &main_ : nullptr;
  const bool same_size = home && home->find(key)->size == size;

  if (!same_size) {
    size_sum_ += size;
    ++size_count_;
    if (!sketch_tuned_) tune_sketch();
  }
  sketch_.record(key);
  if (sketch_.halvings() != seen_halvings_) tune_sketch();

  if (!home) {
    on_miss(key, size);
    return AccessOutcome::Miss;
  }
  home->on_hit(key);
  if (!same_size) resize_resident(*home, key, size);
  return AccessOutcome::Hit;
}

// No admission check for the resized entry itself; overflow goes out through
// the segment's usual path. Window overflow feeds Main candidates, Main
// overflow is evicted outright.
void SizeAwareCache::resize_resident(Segment& home, ObjectKey key, Bytes size) {
  home.resize(key, size);
  if (&home == &window_) {
    drain_window();
    return;
  }
  const FrequencyFn frequency = [this](ObjectKey k) { return sketch_.estimate(k); };
  while (main_.over_capacity()) {
    note_eviction(main_.pop_victim(main_.used_bytes() - main_.capacity(), rng_, frequency));
  }
}

void SizeAwareCache::drain_window() {
  candidates_.clear();
  const FrequencyFn frequency = [this](ObjectKey k) { return sketch_.estimate(k); };
  while (window_.over_capacity()) {
    candidates_.push_back(window_.pop_victim(0, rng_, frequency));
  }
  for (const CacheEntry& candidate : candidates_) judge(candidate, true);
}

void SizeAwareCache::on_miss(ObjectKey key, Bytes size) {
  if (size > capacity()) {
    ++stats_.candidates;
    ++stats_.rejections;
    return;
  }

  if (size > window_.capacity()) {
    judge(CacheEntry{.key = key, .size = size}, false);
    return;
  }

  window_.insert(CacheEntry{.key = key, .size = size});
  drain_window();
}

void SizeAwareCache::judge(const CacheEntry& candidate, bool resident) {
  const FrequencyFn frequency = [this](ObjectKey k) { return sketch_.estimate(k); };
  const AdmissionContext ctx{.main = main_, .rng = rng_, .frequency = frequency};
  AdmissionResult result =
      evict_or_admit(config().admission, ctx, candidate, config().pruning_enabled);

  ++stats_.candidates;
  stats_.victim_comparisons += result.comparisons;
  for (const CacheEntry& victim : result.evicted) note_eviction(victim);
  if (result.admitted) {
    ++stats_.admissions;
  } else {
    ++stats_.rejections;
    if (resident) note_eviction(candidate);
  }
}

void SizeAwareCache::check_invariants() const {
  window_.check_invariants();
  main_.check_invariants();
  if (window_.over_capacity()) throw std::logic_error("window over capacity");
  if (main_.over_capacity()) throw std::logic_error("main over capacity");
  if (window_.capacity() + main_.capacity() != capacity()) {
    throw std::logic_error("segment capacities do not sum to the total");
  }
  const auto& smaller = window_.size() < main_.size() ? window_ : main_;
  const auto& larger = &smaller == &window_ ? main_ : window_;
  for (const CacheEntry& e : smaller.entries()) {
    if (larger.contains(e.key)) throw std::logic_error("key resident in both window and main");
  }
  if (sketch_.recorded() >= sketch_.sample_size()) throw std::logic_error("sketch missed a halving");
}

}  // namespace sizecache
