#include "sizecache/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "sizecache/policy.hpp"

namespace sizecache {
namespace {

using Clock = std::chrono::steady_clock;

PolicyConfig lru_at(const PolicyConfig& config) {
  PolicyConfig lru;
  lru.policy = PolicyKind::Lru;
  lru.capacity_bytes = config.capacity_bytes;
  lru.rng_seed = config.rng_seed;
  return lru;
}

double timed_run_seconds(std::span<const AccessEvent> events, const PolicyConfig& config) {
  return run(events, config).policy_overhead_seconds;
}

std::string fixed6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

}  // namespace

SimulationReport run(std::span<const AccessEvent> events, const PolicyConfig& config, const RunOptions& options) {
  auto policy = make_policy(config);
  const auto warmup = static_cast<std::size_t>(std::min<std::uint64_t>(options.warmup, events.size()));

  const auto start = Clock::now();
  for (std::size_t i = 0; i < warmup; ++i) policy->access(events[i].key, events[i].size);
  const SimulationReport at_warmup = policy->stats();
  for (std::size_t i = warmup; i < events.size(); ++i) policy->access(events[i].key, events[i].size);
  const auto stop = Clock::now();

  SimulationReport report = policy->stats().minus(at_warmup);
  report.policy_overhead_seconds = std::chrono::duration<double>(stop - start).count();
  return report;
}

SimulationReport run(EventSource& source, const PolicyConfig& config, const RunOptions& options) {
  auto policy = make_policy(config);
  std::uint64_t fed = 0;
  SimulationReport at_warmup = policy->stats();
  while (auto event = source.next()) {
    if (fed++ == options.warmup) at_warmup = policy->stats();
    policy->access(event->key, event->size);
  }
  if (fed <= options.warmup) at_warmup = policy->stats();
  SimulationReport report = policy->stats().minus(at_warmup);
  report.policy_overhead_seconds = 0.0;
  return report;
}

SimulationReport run(const TraceSpec& trace, const PolicyConfig& config, const RunOptions& options) {
  config.validate();
  const std::vector<AccessEvent> events = load_trace(trace);
  return run(std::span<const AccessEvent>(events), config, options);
}

std::vector<SimulationReport> sweep(std::span<const AccessEvent> events, std::span<const PolicyConfig> configs,
                                    const RunOptions& options, unsigned threads) {
  for (const PolicyConfig& config : configs) config.validate();
  std::vector<SimulationReport> reports(configs.size());
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, configs.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        reports[i] = run(events, configs[i], options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return reports;
}

double measure_overhead(std::span<const AccessEvent> events, const PolicyConfig& config, unsigned repetitions) {
  if (repetitions == 0) throw InvalidConfig("overhead measurement needs at least one repetition");
  config.validate();
  const PolicyConfig lru = lru_at(config);
  double policy_total = 0;
  double lru_total = 0;
  // Interleaved so slow drift in machine load hits both sides alike.
  for (unsigned rep = 0; rep < repetitions; ++rep) {
    lru_total += timed_run_seconds(events, lru);
    policy_total += timed_run_seconds(events, config);
  }
  return (policy_total - lru_total) / repetitions;
}

std::vector<PolicyConfig> wtinylfu_combinations(const PolicyConfig& base) {
  std::vector<PolicyConfig> out;
  for (AdmissionVariant admission : {AdmissionVariant::IV, AdmissionVariant::QV, AdmissionVariant::AV}) {
    for (EvictionPolicy eviction :
         {EvictionPolicy::Slru, EvictionPolicy::SampledFrequency, EvictionPolicy::SampledSize,
          EvictionPolicy::SampledFreqOverSize, EvictionPolicy::SampledNeededSize, EvictionPolicy::Random}) {
      PolicyConfig config = base;
      config.policy = PolicyKind::WTinyLfu;
      config.admission = admission;
      config.eviction = eviction;
      out.push_back(config);
    }
  }
  return out;
}

std::string csv_row(const SimulationReport& r) {
  const PolicyConfig& c = r.config;
  const bool wtlfu = c.policy == PolicyKind::WTinyLfu;
  std::string admission = wtlfu ? std::string(to_string(c.admission)) : "-";
  if (wtlfu && c.admission == AdmissionVariant::AV && !c.pruning_enabled) admission += "-nopruning";

  std::ostringstream row;
  row << to_string(c.policy) << ',' << admission << ',' << (wtlfu ? to_string(c.eviction) : "-") << ','
      << c.capacity_bytes << ',' << c.rng_seed << ',' << r.accesses << ',' << r.hits << ','
      << fixed6(r.hit_ratio()) << ',' << fixed6(r.byte_hit_ratio()) << ',' << r.evictions << ','
      << r.victim_comparisons << ',' << fixed6(r.policy_overhead_seconds);
  return row.str();
}

void emit_csv(std::span<const SimulationReport> reports, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const SimulationReport& r : reports) out << csv_row(r) << '\n';
}

std::string emit_csv(std::span<const SimulationReport> reports) {
  std::ostringstream out;
  emit_csv(reports, out);
  return out.str();
}

}  // namespace sizecache
