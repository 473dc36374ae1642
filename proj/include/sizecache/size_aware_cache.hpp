#pragma once

#include <cstdint>
#include <vector>

#include "sizecache/admission.hpp"
#include "sizecache/frequency_sketch.hpp"
#include "sizecache/policy.hpp"
#include "sizecache/segment.hpp"

namespace sizecache {

/**
 * Size-aware W-TinyLFU.
 *
 *   new item ──> Window (LRU, ~1%) ──victims──> TinyLFU ──winners──> Main (~99%)
 *
 * Every miss first enters the Window; items larger than the Window skip it
 * and go straight to the admission filter. Inserting into the Window may push
 * out several LRU entries, and each of them becomes a Main candidate judged
 * by the configured admission variant (IV, QV or AV). Candidates that lose
 * are dropped from the cache.
 *
 * The sketch is sized from an item count estimated as capacity divided by the
 * running mean size of missed objects. The estimate is refreshed on the first
 * access and after every sketch halving; the sketch is rebuilt (and cleared)
 * only when the estimate outgrows its width.
 */
class SizeAwareCache final : public CachePolicy {
 public:
  explicit SizeAwareCache(const PolicyConfig& config);
  SizeAwareCache(const SizeAwareCache&) = default;
  SizeAwareCache& operator=(const SizeAwareCache&) = default;

  bool contains(ObjectKey key) const override;
  Bytes resident_bytes() const override { return window_.used_bytes() + main_.used_bytes(); }
  std::size_t resident_count() const override { return window_.size() + main_.size(); }
  Bytes capacity() const override { return config().capacity_bytes; }
  void check_invariants() const override;

  const Segment& window() const { return window_; }
  const Segment& main() const { return main_; }
  const FrequencySketch& sketch() const { return sketch_; }

 protected:
  AccessOutcome do_access(ObjectKey key, Bytes size) override;

 private:
  void on_miss(ObjectKey key, Bytes size);
  void resize_resident(Segment& home, ObjectKey key, Bytes size);
  void drain_window();
  void judge(const CacheEntry& candidate, bool resident);
  void tune_sketch();

  Segment window_;
  Segment main_;
  FrequencySketch sketch_;
  Rng rng_;
  bool sketch_tuned_ = false;
  std::uint64_t seen_halvings_ = 0;
  // Running mean of missed object sizes, for sketch sizing.
  long double size_sum_ = 0;
  std::uint64_t size_count_ = 0;
  std::vector<CacheEntry> candidates_;
};

}  // namespace sizecache
