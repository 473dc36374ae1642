#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>

#include "sizecache/cache_entry.hpp"
#include "sizecache/report.hpp"

namespace sizecache {

// Invoked for every object that leaves the cache to make room.
using EvictionListener = std::function<void(const CacheEntry&)>;

/**
 * Uniform interface over every cache policy the simulator drives.
 *
 * access() performs the hit/miss bookkeeping shared by all policies and
 * forwards to do_access(). A resident key re-accessed with a different size
 * is a hit: the entry takes the new size in place and, if that overflows,
 * the policy evicts by its own rule (which may pick the resized entry).
 */
class CachePolicy {
 public:
  explicit CachePolicy(const PolicyConfig& config) { stats_.config = config; }
  virtual ~CachePolicy() = default;

  AccessOutcome access(ObjectKey key, Bytes size);

  virtual bool contains(ObjectKey key) const = 0;
  virtual Bytes resident_bytes() const = 0;
  virtual std::size_t resident_count() const = 0;
  virtual Bytes capacity() const = 0;
  // Throws std::logic_error on a broken capacity, accounting or residency
  // invariant.
  virtual void check_invariants() const = 0;

  const SimulationReport& stats() const { return stats_; }
  const PolicyConfig& config() const { return stats_.config; }
  void set_eviction_listener(EvictionListener listener) { listener_ = std::move(listener); }

 protected:
  CachePolicy(const CachePolicy&) = default;
  CachePolicy& operator=(const CachePolicy&) = default;

  virtual AccessOutcome do_access(ObjectKey key, Bytes size) = 0;

  void note_eviction(const CacheEntry& entry) {
    ++stats_.evictions;
    if (listener_) listener_(entry);
  }

  SimulationReport stats_;

 private:
  EvictionListener listener_;
};

// Throws InvalidConfig.
std::unique_ptr<CachePolicy> make_policy(const PolicyConfig& config);

}  // namespace sizecache
