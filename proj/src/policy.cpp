#include "sizecache/policy.hpp"

#include "sizecache/baselines.hpp"
#include "sizecache/size_aware_cache.hpp"

namespace sizecache {

AccessOutcome CachePolicy::access(ObjectKey key, Bytes size) {
  if (size == 0) throw std::invalid_argument("object size must be positive");
  const AccessOutcome outcome = do_access(key, size);
  ++stats_.accesses;
  stats_.bytes_requested += size;
  if (outcome == AccessOutcome::Hit) {
    ++stats_.hits;
    stats_.bytes_hit += size;
  } else {
    ++stats_.misses;
  }
  return outcome;
}

std::unique_ptr<CachePolicy> make_policy(const PolicyConfig& config) {
  config.validate();
  switch (config.policy) {
    case PolicyKind::WTinyLfu: return std::make_unique<SizeAwareCache>(config);
    case PolicyKind::Lru: return std::make_unique<LruCache>(config);
    case PolicyKind::Gdsf: return std::make_unique<GdsfCache>(config);
  }
  throw InvalidConfig("unknown policy kind");
}

}  // namespace sizecache
