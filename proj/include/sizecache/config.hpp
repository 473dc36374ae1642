#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sizecache/frequency_sketch.hpp"
#include "sizecache/segment.hpp"
#include "sizecache/types.hpp"

namespace sizecache {

enum class PolicyKind { WTinyLfu, Lru, Gdsf };
enum class AdmissionVariant { IV, QV, AV };
// Unit cost optimizes hit ratio; size cost turns GDSF toward byte hit ratio.
enum class GdsfCost { Unit, Size };

std::string_view to_string(PolicyKind kind);
std::string_view to_string(AdmissionVariant variant);

std::optional<PolicyKind> parse_policy_kind(std::string_view text);
std::optional<AdmissionVariant> parse_admission(std::string_view text);
std::optional<EvictionPolicy> parse_eviction(std::string_view text);

class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SketchConfig {
  // Aging period as a multiple of the estimated item capacity.
  std::uint32_t sample_factor = 10;
  std::size_t depth = 4;
  unsigned counter_bits = 8;
  // Bypasses capacity-derived sizing when set.
  std::optional<SketchParams> fixed;
};

struct PolicyConfig {
  PolicyKind policy = PolicyKind::WTinyLfu;
  AdmissionVariant admission = AdmissionVariant::AV;
  EvictionPolicy eviction = EvictionPolicy::Slru;
  Bytes capacity_bytes = 0;
  double window_fraction = 0.01;
  SketchConfig sketch;
  std::uint64_t rng_seed = 0;
  bool pruning_enabled = true;
  GdsfCost gdsf_cost = GdsfCost::Unit;

  Bytes window_capacity() const;
  Bytes main_capacity() const { return capacity_bytes - window_capacity(); }

  // Throws InvalidConfig.
  void validate() const;
  // e.g. "wtlfu-av-slru", "lru", "gdsf".
  std::string label() const;
};

}  // namespace sizecache
