#include "sizecache/lru_list.hpp"

#include <string>

namespace sizecache {

LruList& LruList::operator=(const LruList& other) {
  if (this == &other) return *this;
  entries_ = other.entries_;
  index_.clear();
  index_.reserve(entries_.size());
  for (auto it = entries_.begin(); it != entries_.end(); ++it) index_.emplace(it->key, it);
  bytes_ = other.bytes_;
  return *this;
}

CacheEntry* LruList::find(ObjectKey key) {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &*it->second;
}

const CacheEntry* LruList::find(ObjectKey key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &*it->second;
}

void LruList::push_back(const CacheEntry& entry) {
  if (index_.contains(entry.key)) {
    throw SegmentError(SegmentErrorKind::DuplicateKey, "duplicate key " + std::to_string(entry.key));
  }
  entries_.push_back(entry);
  index_.emplace(entry.key, std::prev(entries_.end()));
  bytes_ += entry.size;
}

CacheEntry LruList::pop_front() {
  if (entries_.empty()) throw SegmentError(SegmentErrorKind::EmptySegment, "pop from empty list");
  CacheEntry entry = entries_.front();
  index_.erase(entry.key);
  entries_.pop_front();
  bytes_ -= entry.size;
  return entry;
}

CacheEntry LruList::erase(ObjectKey key) {
  auto it = index_.find(key);
  if (it == index_.end()) {
    throw SegmentError(SegmentErrorKind::KeyNotFound, "key not resident " + std::to_string(key));
  }
  CacheEntry entry = *it->second;
  entries_.erase(it->second);
  index_.erase(it);
  bytes_ -= entry.size;
  return entry;
}

void LruList::move_to_back(ObjectKey key) {
  auto it = index_.find(key);
  if (it == index_.end()) {
    throw SegmentError(SegmentErrorKind::KeyNotFound, "key not resident " + std::to_string(key));
  }
  entries_.splice(entries_.end(), entries_, it->second);
}

void LruList::resize(ObjectKey key, Bytes size) {
  CacheEntry* entry = find(key);
  if (!entry) throw SegmentError(SegmentErrorKind::KeyNotFound, "key not resident " + std::to_string(key));
  bytes_ = bytes_ - entry->size + size;
  entry->size = size;
}

}  // namespace sizecache
