#include "sizecache/config.hpp"

#include <cmath>

namespace sizecache {

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::WTinyLfu: return "wtlfu";
    case PolicyKind::Lru: return "lru";
    case PolicyKind::Gdsf: return "gdsf";
  }
  return "unknown";
}

std::string_view to_string(AdmissionVariant variant) {
  switch (variant) {
    case AdmissionVariant::IV: return "iv";
    case AdmissionVariant::QV: return "qv";
    case AdmissionVariant::AV: return "av";
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view text) {
  for (PolicyKind k : {PolicyKind::WTinyLfu, PolicyKind::Lru, PolicyKind::Gdsf}) {
    if (text == to_string(k)) return k;
  }
  if (text == "w-tinylfu" || text == "wtinylfu") return PolicyKind::WTinyLfu;
  return std::nullopt;
}

std::optional<AdmissionVariant> parse_admission(std::string_view text) {
  for (AdmissionVariant v : {AdmissionVariant::IV, AdmissionVariant::QV, AdmissionVariant::AV}) {
    if (text == to_string(v)) return v;
  }
  return std::nullopt;
}

std::optional<EvictionPolicy> parse_eviction(std::string_view text) {
  for (EvictionPolicy p : {EvictionPolicy::Lru, EvictionPolicy::Slru, EvictionPolicy::SampledFrequency,
                           EvictionPolicy::SampledSize, EvictionPolicy::SampledFreqOverSize,
                           EvictionPolicy::SampledNeededSize, EvictionPolicy::Random}) {
    if (text == to_string(p)) return p;
  }
  return std::nullopt;
}

Bytes PolicyConfig::window_capacity() const {
  return static_cast<Bytes>(std::floor(static_cast<long double>(capacity_bytes) * window_fraction));
}

void PolicyConfig::validate() const {
  if (capacity_bytes == 0) throw InvalidConfig("capacity must be positive");
  if (policy != PolicyKind::WTinyLfu) return;
  if (!(window_fraction > 0.0 && window_fraction < 1.0)) {
    throw InvalidConfig("window fraction must lie strictly between 0 and 1");
  }
  if (window_capacity() < 1) throw InvalidConfig("window fraction leaves the window with zero bytes");
  if (main_capacity() < 1) throw InvalidConfig("window fraction leaves main with zero bytes");
  if (sketch.sample_factor == 0) throw InvalidConfig("sketch sample factor must be positive");
  if (sketch.depth == 0) throw InvalidConfig("sketch depth must be positive");
  if (sketch.counter_bits < 1 || sketch.counter_bits > 8) {
    throw InvalidConfig("sketch counters must be 1 to 8 bits wide");
  }
}

std::string PolicyConfig::label() const {
  std::string out(to_string(policy));
  if (policy == PolicyKind::WTinyLfu) {
    out += '-';
    out += to_string(admission);
    out += '-';
    out += to_string(eviction);
    if (admission == AdmissionVariant::AV && !pruning_enabled) out += "-nopruning";
  }
  return out;
}

}  // namespace sizecache
