#pragma once

#include <cstddef>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "sizecache/cache_entry.hpp"
#include "sizecache/lru_list.hpp"
#include "sizecache/types.hpp"

namespace sizecache {

enum class EvictionPolicy {
  Lru,
  Slru,
  SampledFrequency,
  SampledSize,
  SampledFreqOverSize,
  SampledNeededSize,
  Random,
};

std::string_view to_string(EvictionPolicy policy);

inline constexpr std::size_t kSampleCount = 5;
inline constexpr double kDefaultProtectedFraction = 0.8;

namespace detail {

struct LruStore {
  LruList list;
};

struct SlruStore {
  LruList probation;
  LruList protected_;
  Bytes protected_budget = 0;
};

// Unordered entries with an index for O(1) removal; victims come from random
// samples, so storage order carries no meaning.
struct SampledStore {
  std::vector<CacheEntry> entries;
  std::unordered_map<ObjectKey, std::size_t> index;
};

}  // namespace detail

/**
 * A byte-capacity cache region with a pluggable eviction rule.
 *
 * insert() never evicts: callers resolve overflow by looping over
 * pop_victim() and then either discarding the victim or handing it back with
 * promote(). This mirrors the getVictim / evict / promote vocabulary used by
 * the admission policies, which need to inspect victims before deciding.
 *
 * LRU and SLRU keep strict recency order. The sampled rules draw
 * kSampleCount distinct entries per pop (all of them when fewer remain) and
 * pick one by frequency, size, frequency/size or closeness to the needed
 * byte count. Random draws a single uniform entry.
 */
class Segment {
 public:
  Segment(EvictionPolicy policy, Bytes capacity, SegmentTag home = SegmentTag::Main,
          double protected_fraction = kDefaultProtectedFraction);

  void insert(CacheEntry entry);
  void on_hit(ObjectKey key);
  // `needed` is the remaining byte deficit the caller is trying to cover.
  CacheEntry pop_victim(Bytes needed, Rng& rng, const FrequencyFn& frequency);
  void promote(CacheEntry entry);
  CacheEntry erase(ObjectKey key);
  // In-place size change of a resident entry. May leave the segment over
  // capacity; the caller resolves that with pop_victim().
  void resize(ObjectKey key, Bytes size);

  bool contains(ObjectKey key) const { return find(key) != nullptr; }
  const CacheEntry* find(ObjectKey key) const;

  EvictionPolicy policy() const { return policy_; }
  Bytes capacity() const { return capacity_; }
  Bytes used_bytes() const { return used_; }
  Bytes free_bytes() const { return used_ >= capacity_ ? 0 : capacity_ - used_; }
  bool over_capacity() const { return used_ > capacity_; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  // SLRU only; zero for the other policies.
  Bytes protected_bytes() const;
  Bytes protected_budget() const;

  // Recency order (LRU first) for list-based policies; SLRU lists probation
  // before protected. Storage order for sampled policies.
  std::vector<CacheEntry> entries() const;

  // Throws std::logic_error when byte accounting or indexing is inconsistent.
  void check_invariants() const;

 private:
  void slru_rebalance(detail::SlruStore& slru);
  CacheEntry pop_sampled(detail::SampledStore& store, Bytes needed, Rng& rng,
                         const FrequencyFn& frequency);
  void insert_sampled(detail::SampledStore& store, CacheEntry entry);
  CacheEntry remove_sampled(detail::SampledStore& store, std::size_t slot);

  EvictionPolicy policy_;
  Bytes capacity_;
  SegmentTag home_;
  Bytes used_ = 0;
  std::uint64_t clock_ = 0;
  std::variant<detail::LruStore, detail::SlruStore, detail::SampledStore> store_;
};

}  // namespace sizecache
