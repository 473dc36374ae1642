#include "sizecache/admission.hpp"

namespace sizecache {
namespace {

// A candidate larger than Main could only get in by emptying Main and would
// still not fit, so it is turned away before any victim is touched.
bool never_fits(const AdmissionContext& ctx, const CacheEntry& candidate) {
  return candidate.size > ctx.main.capacity();
}

AdmissionResult admit_free(const AdmissionContext& ctx, const CacheEntry& candidate) {
  ctx.main.insert(candidate);
  AdmissionResult result;
  result.admitted = true;
  return result;
}

}  // namespace

AdmissionResult evict_or_admit_iv(const AdmissionContext& ctx, const CacheEntry& candidate) {
  if (never_fits(ctx, candidate)) return {};
  Bytes deficit = space_deficit(ctx.main, candidate);
  if (deficit == 0) return admit_free(ctx, candidate);

  AdmissionResult result;
  const Frequency candidate_freq = ctx.frequency(candidate.key);
  CacheEntry victim = ctx.main.pop_victim(deficit, ctx.rng, ctx.frequency);
  result.comparisons = 1;
  if (candidate_freq < ctx.frequency(victim.key)) {
    ctx.main.promote(victim);
    return result;
  }

  result.evicted.push_back(victim);
  while ((deficit = space_deficit(ctx.main, candidate)) > 0) {
    result.evicted.push_back(ctx.main.pop_victim(deficit, ctx.rng, ctx.frequency));
  }
  ctx.main.insert(candidate);
  result.admitted = true;
  return result;
}

AdmissionResult evict_or_admit_qv(const AdmissionContext& ctx, const CacheEntry& candidate) {
  if (never_fits(ctx, candidate)) return {};

  AdmissionResult result;
  const Frequency candidate_freq = ctx.frequency(candidate.key);
  Bytes deficit = 0;
  while ((deficit = space_deficit(ctx.main, candidate)) > 0) {
    CacheEntry victim = ctx.main.pop_victim(deficit, ctx.rng, ctx.frequency);
    ++result.comparisons;
    if (candidate_freq >= ctx.frequency(victim.key)) {
      result.evicted.push_back(victim);
    } else {
      ctx.main.promote(victim);
      break;
    }
  }
  if (space_deficit(ctx.main, candidate) == 0) {
    ctx.main.insert(candidate);
    result.admitted = true;
  }
  return result;
}

AdmissionResult evict_or_admit_av(const AdmissionContext& ctx, const CacheEntry& candidate,
                                  bool early_pruning) {
  if (never_fits(ctx, candidate)) return {};
  const Bytes deficit = space_deficit(ctx.main, candidate);
  if (deficit == 0) return admit_free(ctx, candidate);

  const Frequency candidate_freq = ctx.frequency(candidate.key);
  VictimSet gathered;
  while (gathered.total_bytes < deficit && !ctx.main.empty()) {
    CacheEntry victim = ctx.main.pop_victim(deficit - gathered.total_bytes, ctx.rng, ctx.frequency);
    gathered.add(victim, ctx.frequency(victim.key));
    if (early_pruning && candidate_freq < gathered.total_frequency) break;
  }

  AdmissionResult result;
  result.comparisons = gathered.victims.size();
  if (candidate_freq >= gathered.total_frequency && gathered.total_bytes >= deficit) {
    result.evicted = std::move(gathered.victims);
    ctx.main.insert(candidate);
    result.admitted = true;
  } else {
    for (const CacheEntry& victim : gathered.victims) ctx.main.promote(victim);
  }
  return result;
}

AdmissionResult evict_or_admit(AdmissionVariant variant, const AdmissionContext& ctx,
                               const CacheEntry& candidate, bool early_pruning) {
  switch (variant) {
    case AdmissionVariant::IV: return evict_or_admit_iv(ctx, candidate);
    case AdmissionVariant::QV: return evict_or_admit_qv(ctx, candidate);
    case AdmissionVariant::AV: return evict_or_admit_av(ctx, candidate, early_pruning);
  }
  return {};
}

}  // namespace sizecache
