#pragma once

#include <cstdint>

#include "sizecache/config.hpp"

namespace sizecache {

struct SimulationReport {
  PolicyConfig config;

  std::uint64_t accesses = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t bytes_requested = 0;
  std::uint64_t bytes_hit = 0;

  std::uint64_t evictions = 0;
  std::uint64_t admissions = 0;
  std::uint64_t rejections = 0;
  // Admission decisions taken: every object that asked to enter the cache,
  // including ones too large to ever fit.
  std::uint64_t candidates = 0;
  // Victims whose frequency (or priority) entered an admission decision.
  std::uint64_t victim_comparisons = 0;

  double policy_overhead_seconds = 0.0;

  std::uint64_t bytes_missed() const { return bytes_requested - bytes_hit; }
  double hit_ratio() const { return accesses ? static_cast<double>(hits) / accesses : 0.0; }
  double byte_hit_ratio() const {
    return bytes_requested ? static_cast<double>(bytes_hit) / bytes_requested : 0.0;
  }
  double comparisons_per_candidate() const {
    return candidates ? static_cast<double>(victim_comparisons) / candidates : 0.0;
  }

  // Counter-wise difference; used to drop warm-up events from a report.
  SimulationReport minus(const SimulationReport& earlier) const;
  // Equality of every counter; timing is ignored.
  bool same_counters(const SimulationReport& other) const;
};

}  // namespace sizecache
