#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "sizecache/types.hpp"

namespace sizecache {

enum class SegmentTag : std::uint8_t { Window, Main, Probation, Protected };

struct CacheEntry {
  ObjectKey key = 0;
  Bytes size = 0;
  SegmentTag segment = SegmentTag::Main;
  // Segment-local access clock value at the last touch.
  std::uint64_t recency_stamp = 0;
};

enum class SegmentErrorKind { OversizedEntry, DuplicateKey, KeyNotFound, EmptySegment };

class SegmentError : public std::logic_error {
 public:
  SegmentError(SegmentErrorKind kind, const std::string& what)
      : std::logic_error(what), kind_(kind) {}
  SegmentErrorKind kind() const { return kind_; }

 private:
  SegmentErrorKind kind_;
};

}  // namespace sizecache
