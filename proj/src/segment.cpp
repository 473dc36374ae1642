#include "sizecache/segment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace sizecache {
namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

[[noreturn]] void throw_not_found(ObjectKey key) {
  throw SegmentError(SegmentErrorKind::KeyNotFound, "key not resident " + std::to_string(key));
}

Bytes abs_diff(Bytes a, Bytes b) { return a > b ? a - b : b - a; }

}  // namespace

std::string_view to_string(EvictionPolicy policy) {
  switch (policy) {
    case EvictionPolicy::Lru: return "lru";
    case EvictionPolicy::Slru: return "slru";
    case EvictionPolicy::SampledFrequency: return "sfreq";
    case EvictionPolicy::SampledSize: return "ssize";
    case EvictionPolicy::SampledFreqOverSize: return "sfos";
    case EvictionPolicy::SampledNeededSize: return "sneed";
    case EvictionPolicy::Random: return "random";
  }
  return "unknown";
}

Segment::Segment(EvictionPolicy policy, Bytes capacity, SegmentTag home, double protected_fraction)
    : policy_(policy), capacity_(capacity), home_(home) {
  if (capacity == 0) throw std::invalid_argument("segment capacity must be positive");
  switch (policy) {
    case EvictionPolicy::Lru:
      store_ = detail::LruStore{};
      break;
    case EvictionPolicy::Slru: {
      if (!(protected_fraction >= 0.0 && protected_fraction <= 1.0)) {
        throw std::invalid_argument("protected fraction must lie in [0, 1]");
      }
      detail::SlruStore slru;
      slru.protected_budget = static_cast<Bytes>(std::floor(static_cast<double>(capacity) * protected_fraction));
      store_ = std::move(slru);
      home_ = SegmentTag::Probation;
      break;
    }
    default:
      store_ = detail::SampledStore{};
      break;
  }
}

std::size_t Segment::size() const {
  return std::visit(overloaded{
                        [](const detail::LruStore& s) { return s.list.size(); },
                        [](const detail::SlruStore& s) { return s.probation.size() + s.protected_.size(); },
                        [](const detail::SampledStore& s) { return s.entries.size(); },
                    },
                    store_);
}

const CacheEntry* Segment::find(ObjectKey key) const {
  return std::visit(overloaded{
                        [&](const detail::LruStore& s) { return s.list.find(key); },
                        [&](const detail::SlruStore& s) {
                          const CacheEntry* e = s.probation.find(key);
                          return e ? e : s.protected_.find(key);
                        },
                        [&](const detail::SampledStore& s) -> const CacheEntry* {
                          auto it = s.index.find(key);
                          return it == s.index.end() ? nullptr : &s.entries[it->second];
                        },
                    },
                    store_);
}

void Segment::insert(CacheEntry entry) {
  if (entry.size == 0) throw std::invalid_argument("entry size must be positive");
  if (entry.size > capacity_) {
    throw SegmentError(SegmentErrorKind::OversizedEntry,
                       "entry of " + std::to_string(entry.size) + " bytes exceeds segment capacity " +
                           std::to_string(capacity_));
  }
  if (contains(entry.key)) {
    throw SegmentError(SegmentErrorKind::DuplicateKey, "duplicate key " + std::to_string(entry.key));
  }
  entry.segment = home_;
  entry.recency_stamp = ++clock_;
  std::visit(overloaded{
                 [&](detail::LruStore& s) { s.list.push_back(entry); },
                 [&](detail::SlruStore& s) { s.probation.push_back(entry); },
                 [&](detail::SampledStore& s) { insert_sampled(s, entry); },
             },
             store_);
  used_ += entry.size;
}

void Segment::on_hit(ObjectKey key) {
  const std::uint64_t stamp = ++clock_;
  std::visit(overloaded{
                 [&](detail::LruStore& s) {
                   CacheEntry* e = s.list.find(key);
                   if (!e) throw_not_found(key);
                   e->recency_stamp = stamp;
                   s.list.move_to_back(key);
                 },
                 [&](detail::SlruStore& s) {
                   if (CacheEntry* e = s.protected_.find(key)) {
                     e->recency_stamp = stamp;
                     s.protected_.move_to_back(key);
                     return;
                   }
                   if (!s.probation.contains(key)) throw_not_found(key);
                   CacheEntry entry = s.probation.erase(key);
                   entry.segment = SegmentTag::Protected;
                   entry.recency_stamp = stamp;
                   s.protected_.push_back(entry);
                   slru_rebalance(s);
                 },
                 [&](detail::SampledStore& s) {
                   auto it = s.index.find(key);
                   if (it == s.index.end()) throw_not_found(key);
                   s.entries[it->second].recency_stamp = stamp;
                 },
             },
             store_);
}

void Segment::slru_rebalance(detail::SlruStore& slru) {
  while (slru.protected_.bytes() > slru.protected_budget && !slru.protected_.empty()) {
    CacheEntry demoted = slru.protected_.pop_front();
    demoted.segment = SegmentTag::Probation;
    slru.probation.push_back(demoted);
  }
}

CacheEntry Segment::pop_victim(Bytes needed, Rng& rng, const FrequencyFn& frequency) {
  if (empty()) throw SegmentError(SegmentErrorKind::EmptySegment, "pop_victim on empty segment");
  CacheEntry victim = std::visit(overloaded{
                                     [](detail::LruStore& s) { return s.list.pop_front(); },
                                     [](detail::SlruStore& s) {
                                       return s.probation.empty() ? s.protected_.pop_front()
                                                                  : s.probation.pop_front();
                                     },
                                     [&](detail::SampledStore& s) {
                                       return pop_sampled(s, needed, rng, frequency);
                                     },
                                 },
                                 store_);
  used_ -= victim.size;
  return victim;
}

void Segment::promote(CacheEntry entry) {
  if (contains(entry.key)) {
    throw SegmentError(SegmentErrorKind::DuplicateKey, "duplicate key " + std::to_string(entry.key));
  }
  entry.recency_stamp = ++clock_;
  std::visit(overloaded{
                 [&](detail::LruStore& s) {
                   entry.segment = home_;
                   s.list.push_back(entry);
                 },
                 [&](detail::SlruStore& s) {
                   if (entry.segment == SegmentTag::Protected) {
                     s.protected_.push_back(entry);
                     slru_rebalance(s);
                   } else {
                     entry.segment = SegmentTag::Probation;
                     s.probation.push_back(entry);
                   }
                 },
                 [&](detail::SampledStore& s) {
                   entry.segment = home_;
                   insert_sampled(s, entry);
                 },
             },
             store_);
  used_ += entry.size;
}

CacheEntry Segment::erase(ObjectKey key) {
  CacheEntry removed = std::visit(overloaded{
                                      [&](detail::LruStore& s) { return s.list.erase(key); },
                                      [&](detail::SlruStore& s) {
                                        return s.probation.contains(key) ? s.probation.erase(key)
                                                                         : s.protected_.erase(key);
                                      },
                                      [&](detail::SampledStore& s) {
                                        auto it = s.index.find(key);
                                        if (it == s.index.end()) throw_not_found(key);
                                        return remove_sampled(s, it->second);
                                      },
                                  },
                                  store_);
  used_ -= removed.size;
  return removed;
}

void Segment::resize(ObjectKey key, Bytes size) {
  if (size == 0) throw std::invalid_argument("entry size must be positive");
  Bytes old_size = 0;
  std::visit(overloaded{
                 [&](detail::LruStore& s) {
                   const CacheEntry* e = s.list.find(key);
                   if (!e) throw_not_found(key);
                   old_size = e->size;
                   s.list.resize(key, size);
                 },
                 [&](detail::SlruStore& s) {
                   LruList& region = s.probation.contains(key) ? s.probation : s.protected_;
                   const CacheEntry* e = region.find(key);
                   if (!e) throw_not_found(key);
                   old_size = e->size;
                   region.resize(key, size);
                   slru_rebalance(s);
                 },
                 [&](detail::SampledStore& s) {
                   auto it = s.index.find(key);
                   if (it == s.index.end()) throw_not_found(key);
                   old_size = s.entries[it->second].size;
                   s.entries[it->second].size = size;
                 },
             },
             store_);
  used_ = used_ - old_size + size;
}

void Segment::insert_sampled(detail::SampledStore& store, CacheEntry entry) {
  store.index.emplace(entry.key, store.entries.size());
  store.entries.push_back(entry);
}

CacheEntry Segment::remove_sampled(detail::SampledStore& store, std::size_t slot) {
  CacheEntry removed = store.entries[slot];
  const std::size_t last = store.entries.size() - 1;
  if (slot != last) {
    store.entries[slot] = store.entries[last];
    store.index[store.entries[slot].key] = slot;
  }
  store.entries.pop_back();
  store.index.erase(removed.key);
  return removed;
}

CacheEntry Segment::pop_sampled(detail::SampledStore& store, Bytes needed, Rng& rng,
                                const FrequencyFn& frequency) {
  const std::size_t n = store.entries.size();
  const std::size_t samples = policy_ == EvictionPolicy::Random ? 1 : std::min(kSampleCount, n);

  // Partial Fisher-Yates: the sample ends up in slots [0, samples), in draw order.
  for (std::size_t i = 0; i < samples; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    const std::size_t j = pick(rng);
    if (j != i) {
      std::swap(store.entries[i], store.entries[j]);
      store.index[store.entries[i].key] = i;
      store.index[store.entries[j].key] = j;
    }
  }

  std::array<Frequency, kSampleCount> freq{};
  if (policy_ == EvictionPolicy::SampledFrequency || policy_ == EvictionPolicy::SampledFreqOverSize) {
    for (std::size_t i = 0; i < samples; ++i) freq[i] = frequency(store.entries[i].key);
  }

  // True when sample a should replace the current best b. Strict comparisons
  // keep the lowest-index sample on ties.
  auto better = [&](std::size_t a, std::size_t b) {
    const CacheEntry& ea = store.entries[a];
    const CacheEntry& eb = store.entries[b];
    switch (policy_) {
      case EvictionPolicy::SampledFrequency:
        if (freq[a] != freq[b]) return freq[a] < freq[b];
        return ea.recency_stamp < eb.recency_stamp;
      case EvictionPolicy::SampledSize:
        return ea.size > eb.size;
      case EvictionPolicy::SampledFreqOverSize: {
        using wide = unsigned __int128;
        return static_cast<wide>(freq[a]) * eb.size < static_cast<wide>(freq[b]) * ea.size;
      }
      case EvictionPolicy::SampledNeededSize:
        return abs_diff(ea.size, needed) < abs_diff(eb.size, needed);
      default:
        return false;
    }
  };

  std::size_t best = 0;
  for (std::size_t i = 1; i < samples; ++i) {
    if (better(i, best)) best = i;
  }
  return remove_sampled(store, best);
}

Bytes Segment::protected_bytes() const {
  const auto* slru = std::get_if<detail::SlruStore>(&store_);
  return slru ? slru->protected_.bytes() : 0;
}

Bytes Segment::protected_budget() const {
  const auto* slru = std::get_if<detail::SlruStore>(&store_);
  return slru ? slru->protected_budget : 0;
}

std::vector<CacheEntry> Segment::entries() const {
  std::vector<CacheEntry> out;
  out.reserve(size());
  std::visit(overloaded{
                 [&](const detail::LruStore& s) { out.assign(s.list.begin(), s.list.end()); },
                 [&](const detail::SlruStore& s) {
                   out.assign(s.probation.begin(), s.probation.end());
                   out.insert(out.end(), s.protected_.begin(), s.protected_.end());
                 },
                 [&](const detail::SampledStore& s) { out = s.entries; },
             },
             store_);
  return out;
}

void Segment::check_invariants() const {
  Bytes total = 0;
  for (const CacheEntry& e : entries()) {
    if (e.size == 0) throw std::logic_error("zero-size entry resident");
    total += e.size;
  }
  if (total != used_) {
    throw std::logic_error("used_bytes " + std::to_string(used_) + " != sum of entry sizes " +
                           std::to_string(total));
  }
  if (const auto* slru = std::get_if<detail::SlruStore>(&store_)) {
    if (slru->protected_.bytes() > slru->protected_budget) {
      throw std::logic_error("SLRU protected region over budget");
    }
    for (const CacheEntry& e : slru->probation) {
      if (slru->protected_.contains(e.key)) throw std::logic_error("key in both SLRU regions");
    }
  }
  if (const auto* sampled = std::get_if<detail::SampledStore>(&store_)) {
    if (sampled->index.size() != sampled->entries.size()) throw std::logic_error("sampled index size mismatch");
    for (std::size_t i = 0; i < sampled->entries.size(); ++i) {
      auto it = sampled->index.find(sampled->entries[i].key);
      if (it == sampled->index.end() || it->second != i) throw std::logic_error("sampled index out of sync");
    }
  }
}

}  // namespace sizecache
