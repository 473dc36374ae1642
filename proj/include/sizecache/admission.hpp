#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sizecache/cache_entry.hpp"
#include "sizecache/config.hpp"
#include "sizecache/segment.hpp"
#include "sizecache/types.hpp"

namespace sizecache {

// Potential Main victims gathered for one candidate.
struct VictimSet {
  std::vector<CacheEntry> victims;
  Bytes total_bytes = 0;
  std::uint64_t total_frequency = 0;

  void add(const CacheEntry& victim, Frequency frequency) {
    victims.push_back(victim);
    total_bytes += victim.size;
    total_frequency += frequency;
  }
};

struct AdmissionResult {
  bool admitted = false;
  // Main residents removed for good, in eviction order.
  std::vector<CacheEntry> evicted;
  // Victims whose frequency estimate took part in the decision.
  std::size_t comparisons = 0;
};

struct AdmissionContext {
  Segment& main;
  Rng& rng;
  // Queried at most once per entry per decision.
  const FrequencyFn& frequency;
};

// Bytes Main must still free before `candidate` fits.
inline Bytes space_deficit(const Segment& main, const CacheEntry& candidate) {
  const Bytes free = main.free_bytes();
  return candidate.size > free ? candidate.size - free : 0;
}

/**
 * Implicit Victims: the candidate competes with the first victim only. On a
 * win, further victims are evicted without consulting their frequency until
 * the candidate fits. On a loss the victim is promoted and nothing changes.
 */
AdmissionResult evict_or_admit_iv(const AdmissionContext& ctx, const CacheEntry& candidate);

/**
 * Queue of Victims: victims are examined one at a time and evicted while the
 * candidate is at least as frequent. The first more frequent victim is
 * promoted and ends the scan. Victims already evicted stay evicted even when
 * the candidate still does not fit and is rejected.
 */
AdmissionResult evict_or_admit_qv(const AdmissionContext& ctx, const CacheEntry& candidate);

/**
 * Aggregated Victims: gather victims until their bytes cover the deficit and
 * admit only if the candidate is at least as frequent as all of them combined.
 * With `early_pruning`, gathering stops as soon as the accumulated victim
 * frequency exceeds the candidate's. On rejection every gathered victim is
 * promoted in gathering order, so a rejection never evicts.
 */
AdmissionResult evict_or_admit_av(const AdmissionContext& ctx, const CacheEntry& candidate,
                                  bool early_pruning = true);

AdmissionResult evict_or_admit(AdmissionVariant variant, const AdmissionContext& ctx,
                               const CacheEntry& candidate, bool early_pruning = true);

}  // namespace sizecache
