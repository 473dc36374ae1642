#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sizecache/config.hpp"
#include "sizecache/report.hpp"
#include "sizecache/trace.hpp"

namespace sizecache {

struct RunOptions {
  // Leading events fed to the cache but left out of the counters.
  std::uint64_t warmup = 0;
};

// Replays in-memory events; policy_overhead_seconds covers the access loop.
SimulationReport run(std::span<const AccessEvent> events, const PolicyConfig& config,
                     const RunOptions& options = {});

// Streams events straight from `source`. No timing: overhead is reported as 0.
SimulationReport run(EventSource& source, const PolicyConfig& config, const RunOptions& options = {});

// Materializes the trace, then replays it.
SimulationReport run(const TraceSpec& trace, const PolicyConfig& config, const RunOptions& options = {});

// One report per config, in input order. Runs are spread over `threads`
// workers (0 picks the hardware concurrency); each run stays single-threaded.
std::vector<SimulationReport> sweep(std::span<const AccessEvent> events, std::span<const PolicyConfig> configs,
                                    const RunOptions& options = {}, unsigned threads = 0);

// Mean wall time of `config` minus mean wall time of LRU at the same
// capacity, each over `repetitions` runs. Negative when `config` is cheaper
// than LRU.
double measure_overhead(std::span<const AccessEvent> events, const PolicyConfig& config,
                        unsigned repetitions = 3);

// The 3 admission variants x 6 Main eviction rules, all at `base`'s other
// settings.
std::vector<PolicyConfig> wtinylfu_combinations(const PolicyConfig& base);

inline constexpr const char* kCsvHeader =
    "policy,admission,eviction,capacity_bytes,seed,accesses,hits,hit_ratio,byte_hit_ratio,evictions,"
    "victim_comparisons,overhead_seconds";

std::string csv_row(const SimulationReport& report);
void emit_csv(std::span<const SimulationReport> reports, std::ostream& out);
std::string emit_csv(std::span<const SimulationReport> reports);

}  // namespace sizecache
