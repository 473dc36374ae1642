#include "sizecache/baselines.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace sizecache {

LruCache::LruCache(const PolicyConfig& config) : CachePolicy((config.validate(), config)) {}

AccessOutcome LruCache::do_access(ObjectKey key, Bytes size) {
  if (const CacheEntry* e = list_.find(key)) {
    const bool resized = e->size != size;
    list_.move_to_back(key);
    if (resized) {
      list_.resize(key, size);
      while (list_.bytes() > capacity()) note_eviction(list_.pop_front());
    }
    return AccessOutcome::Hit;
  }

  ++stats_.candidates;
  if (size > capacity()) {
    ++stats_.rejections;
    return AccessOutcome::Miss;
  }
  while (capacity() - list_.bytes() < size) note_eviction(list_.pop_front());
  list_.push_back(CacheEntry{.key = key, .size = size});
  ++stats_.admissions;
  return AccessOutcome::Miss;
}

void LruCache::check_invariants() const {
  Bytes total = 0;
  for (const CacheEntry& e : list_) total += e.size;
  if (total != list_.bytes()) throw std::logic_error("LRU byte accounting drifted");
  if (list_.bytes() > capacity()) throw std::logic_error("LRU over capacity");
}

GdsfCache::GdsfCache(const PolicyConfig& config) : CachePolicy((config.validate(), config)) {}

double GdsfCache::priority_for(std::uint64_t frequency, Bytes size) const {
  const double cost = config().gdsf_cost == GdsfCost::Size ? static_cast<double>(size) : 1.0;
  return clock_ + static_cast<double>(frequency) * cost / static_cast<double>(size);
}

std::optional<double> GdsfCache::priority_of(ObjectKey key) const {
  auto it = residents_.find(key);
  if (it == residents_.end()) return std::nullopt;
  return it->second.priority;
}

void GdsfCache::remove(ObjectKey key) {
  auto it = residents_.find(key);
  queue_.erase(QueueKey{it->second.priority, it->second.inserted, key});
  used_ -= it->second.size;
  residents_.erase(it);
}

AccessOutcome GdsfCache::do_access(ObjectKey key, Bytes size) {
  if (auto it = residents_.find(key); it != residents_.end()) {
    Resident& r = it->second;
    queue_.erase(QueueKey{r.priority, r.inserted, key});
    used_ = used_ - r.size + size;
    r.size = size;
    ++r.frequency;
    r.priority = priority_for(r.frequency, r.size);
    queue_.emplace(r.priority, r.inserted, key);
    // A grown entry pushes out the lowest priorities, itself included if it
    // ranks last. The clock follows the evicted priorities as on a miss.
    while (used_ > capacity()) {
      const auto [priority, inserted, victim] = *queue_.begin();
      const CacheEntry evicted{.key = victim, .size = residents_.at(victim).size};
      remove(victim);
      clock_ = std::max(clock_, priority);
      note_eviction(evicted);
    }
    return AccessOutcome::Hit;
  }
  on_miss(key, size);
  return AccessOutcome::Miss;
}

void GdsfCache::on_miss(ObjectKey key, Bytes size) {
  ++stats_.candidates;
  if (size > capacity()) {
    ++stats_.rejections;
    return;
  }

  const Bytes free = capacity() - used_;
  if (size > free) {
    const Bytes deficit = size - free;
    Bytes gathered = 0;
    auto last = queue_.begin();
    for (; last != queue_.end() && gathered < deficit; ++last) {
      gathered += residents_.at(std::get<2>(*last)).size;
      ++stats_.victim_comparisons;
    }
    const double highest = std::get<0>(*std::prev(last));
    if (!(priority_for(1, size) > highest)) {
      ++stats_.rejections;
      return;
    }
    std::vector<ObjectKey> victims;
    for (auto it = queue_.begin(); it != last; ++it) victims.push_back(std::get<2>(*it));
    for (ObjectKey victim : victims) {
      const CacheEntry evicted{.key = victim, .size = residents_.at(victim).size};
      remove(victim);
      note_eviction(evicted);
    }
    clock_ = std::max(clock_, highest);
  }

  Resident r{.size = size, .frequency = 1, .priority = priority_for(1, size), .inserted = insertions_++};
  queue_.emplace(r.priority, r.inserted, key);
  residents_.emplace(key, r);
  used_ += size;
  ++stats_.admissions;
}

void GdsfCache::check_invariants() const {
  if (used_ > capacity()) throw std::logic_error("GDSF over capacity");
  if (queue_.size() != residents_.size()) throw std::logic_error("GDSF queue and residents disagree");
  Bytes total = 0;
  for (const auto& [key, r] : residents_) {
    total += r.size;
    if (!queue_.contains(QueueKey{r.priority, r.inserted, key})) {
      throw std::logic_error("GDSF resident " + std::to_string(key) + " missing from queue");
    }
  }
  if (total != used_) throw std::logic_error("GDSF byte accounting drifted");
}

}  // namespace sizecache
