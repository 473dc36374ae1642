#pragma once

#include <cstddef>
#include <list>
#include <unordered_map>

#include "sizecache/cache_entry.hpp"

namespace sizecache {

// Recency-ordered entries with O(1) lookup. Front is LRU, back is MRU.
class LruList {
 public:
  using const_iterator = std::list<CacheEntry>::const_iterator;

  LruList() = default;
  LruList(const LruList& other) { *this = other; }
  LruList(LruList&&) noexcept = default;
  LruList& operator=(const LruList& other);
  LruList& operator=(LruList&&) noexcept = default;

  bool contains(ObjectKey key) const { return index_.contains(key); }
  CacheEntry* find(ObjectKey key);
  const CacheEntry* find(ObjectKey key) const;

  void push_back(const CacheEntry& entry);
  CacheEntry pop_front();
  CacheEntry erase(ObjectKey key);
  void move_to_back(ObjectKey key);
  // Changes a resident entry's size in place; order is untouched.
  void resize(ObjectKey key, Bytes size);

  const CacheEntry& front() const { return entries_.front(); }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Bytes bytes() const { return bytes_; }

  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }

 private:
  std::list<CacheEntry> entries_;
  std::unordered_map<ObjectKey, std::list<CacheEntry>::iterator> index_;
  Bytes bytes_ = 0;
};

}  // namespace sizecache
