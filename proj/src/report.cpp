#include "sizecache/report.hpp"

namespace sizecache {

SimulationReport SimulationReport::minus(const SimulationReport& earlier) const {
  SimulationReport out = *this;
  out.accesses -= earlier.accesses;
  out.hits -= earlier.hits;
  out.misses -= earlier.misses;
  out.bytes_requested -= earlier.bytes_requested;
  out.bytes_hit -= earlier.bytes_hit;
  out.evictions -= earlier.evictions;
  out.admissions -= earlier.admissions;
  out.rejections -= earlier.rejections;
  out.candidates -= earlier.candidates;
  out.victim_comparisons -= earlier.victim_comparisons;
  return out;
}

bool SimulationReport::same_counters(const SimulationReport& o) const {
  return accesses == o.accesses && hits == o.hits && misses == o.misses &&
         bytes_requested == o.bytes_requested && bytes_hit == o.bytes_hit && evictions == o.evictions &&
         admissions == o.admissions && rejections == o.rejections && candidates == o.candidates &&
         victim_comparisons == o.victim_comparisons;
}

}  // namespace sizecache
