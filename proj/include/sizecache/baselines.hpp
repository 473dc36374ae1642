#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>

#include "sizecache/lru_list.hpp"
#include "sizecache/policy.hpp"

namespace sizecache {

// Byte-capacity LRU; the anchor every other policy is compared against.
class LruCache final : public CachePolicy {
 public:
  explicit LruCache(const PolicyConfig& config);

  bool contains(ObjectKey key) const override { return list_.contains(key); }
  Bytes resident_bytes() const override { return list_.bytes(); }
  std::size_t resident_count() const override { return list_.size(); }
  Bytes capacity() const override { return config().capacity_bytes; }
  void check_invariants() const override;

  // LRU first.
  const LruList& entries() const { return list_; }

 protected:
  AccessOutcome do_access(ObjectKey key, Bytes size) override;

 private:
  LruList list_;
};

/**
 * GreedyDual-Size-Frequency.
 *
 * Each resident carries priority = clock + frequency * cost / size. A miss
 * gathers lowest-priority residents until they cover the byte deficit; the
 * newcomer enters only if its would-be priority beats the highest gathered
 * one, in which case the whole batch is evicted and the clock jumps to that
 * priority. A losing newcomer leaves the residents untouched.
 *
 * Priority ties go to the resident inserted earliest.
 */
class GdsfCache final : public CachePolicy {
 public:
  explicit GdsfCache(const PolicyConfig& config);

  bool contains(ObjectKey key) const override { return residents_.contains(key); }
  Bytes resident_bytes() const override { return used_; }
  std::size_t resident_count() const override { return residents_.size(); }
  Bytes capacity() const override { return config().capacity_bytes; }
  void check_invariants() const override;

  double clock() const { return clock_; }
  std::optional<double> priority_of(ObjectKey key) const;

 protected:
  AccessOutcome do_access(ObjectKey key, Bytes size) override;

 private:
  struct Resident {
    Bytes size = 0;
    std::uint64_t frequency = 0;
    double priority = 0;
    std::uint64_t inserted = 0;
  };
  using QueueKey = std::tuple<double, std::uint64_t, ObjectKey>;

  double priority_for(std::uint64_t frequency, Bytes size) const;
  void on_miss(ObjectKey key, Bytes size);
  void remove(ObjectKey key);

  std::unordered_map<ObjectKey, Resident> residents_;
  std::set<QueueKey> queue_;
  Bytes used_ = 0;
  double clock_ = 0;
  std::uint64_t insertions_ = 0;
};

}  // namespace sizecache
