#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sizecache/simulator.hpp"

using namespace sizecache;

namespace {

PolicyConfig lru(Bytes capacity) {
  PolicyConfig c;
  c.policy = PolicyKind::Lru;
  c.capacity_bytes = capacity;
  return c;
}

std::vector<AccessEvent> small_trace(std::uint64_t seed = 2) {
  SyntheticParams p;
  p.key_count = 3000;
  p.event_count = 30000;
  p.zipf_exponent = 0.9;
  p.size_model = LogNormalSize{.mu = 9.0, .sigma = 1.5, .min_bytes = 1, .max_bytes = 1 << 20};
  p.seed = seed;
  return generate_synthetic(p);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);) out.push_back(item);
  return out;
}

}  // namespace

TEST_CASE("two accesses to one object give one hit in two") {
  const std::vector<AccessEvent> events{{0, 1, 100}, {1, 1, 100}};
  for (PolicyKind kind : {PolicyKind::Lru, PolicyKind::Gdsf, PolicyKind::WTinyLfu}) {
    PolicyConfig c = lru(100'000);
    c.policy = kind;
    const SimulationReport r = run(events, c);
    CHECK(r.accesses == 2);
    CHECK(r.hits == 1);
    CHECK(r.hit_ratio() == doctest::Approx(0.5));
    CHECK(r.byte_hit_ratio() == doctest::Approx(0.5));
  }
}

TEST_CASE("byte hit ratio weighs hits by size") {
  // Hits on the 100-byte object only: 200 of 800 bytes.
  const std::vector<AccessEvent> events{{0, 1, 100}, {1, 2, 500}, {2, 1, 100}, {3, 1, 100}};
  const SimulationReport r = run(events, lru(10'000));
  CHECK(r.hit_ratio() == doctest::Approx(0.5));
  CHECK(r.bytes_requested == 800);
  CHECK(r.bytes_hit == 200);
  CHECK(r.byte_hit_ratio() == doctest::Approx(0.25));
}

TEST_CASE("runs are deterministic for a fixed seed") {
  const auto events = small_trace();
  PolicyConfig base = lru(2'000'000);
  base.rng_seed = 9;
  for (const PolicyConfig& c : wtinylfu_combinations(base)) {
    CHECK(run(events, c).same_counters(run(events, c)));
  }
}

TEST_CASE("sweep matches individual runs, in input order") {
  const auto events = small_trace();
  PolicyConfig base = lru(1'500'000);
  std::vector<PolicyConfig> configs = wtinylfu_combinations(base);
  configs.push_back(lru(1'500'000));
  PolicyConfig gdsf = lru(1'500'000);
  gdsf.policy = PolicyKind::Gdsf;
  configs.push_back(gdsf);

  const auto reports = sweep(events, configs, {}, 4);
  REQUIRE(reports.size() == configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    CHECK(reports[i].config.label() == configs[i].label());
    CHECK(reports[i].same_counters(run(events, configs[i])));
  }
}

TEST_CASE("sweep passes on failures from workers") {
  const auto events = small_trace();
  std::vector<PolicyConfig> configs{lru(1000), lru(0)};
  CHECK_THROWS_AS(sweep(events, configs, {}, 2), InvalidConfig);
}

TEST_CASE("LRU hit ratio never drops as capacity grows") {
  const auto events = small_trace();
  double last = -1;
  for (Bytes capacity = 50'000; capacity <= 50'000'000; capacity *= 2) {
    const double h = run(events, lru(capacity)).hit_ratio();
    CHECK(h >= last);
    last = h;
  }
}

TEST_CASE("counters obey their identities for every policy") {
  const auto events = small_trace(3);
  PolicyConfig base = lru(1'000'000);
  std::vector<PolicyConfig> configs = wtinylfu_combinations(base);
  configs.push_back(lru(1'000'000));
  for (const SimulationReport& r : sweep(events, configs)) {
    CAPTURE(r.config.label());
    CHECK(r.hits + r.misses == r.accesses);
    CHECK(r.accesses == events.size());
    CHECK(r.bytes_hit <= r.bytes_requested);
    CHECK(r.bytes_missed() == r.bytes_requested - r.bytes_hit);
    CHECK(r.admissions + r.rejections == r.candidates);
    CHECK(r.policy_overhead_seconds >= 0.0);
  }
}

TEST_CASE("warm-up events are replayed but not counted") {
  const auto events = small_trace();
  PolicyConfig c = lru(1'000'000);
  const SimulationReport all = run(events, c);
  const SimulationReport warm = run(events, c, {.warmup = 10000});
  CHECK(warm.accesses == events.size() - 10000);
  // The tail is served by the same cache state either way.
  const std::span<const AccessEvent> head(events.data(), 10000);
  const SimulationReport head_only = run(head, c);
  CHECK(warm.hits == all.hits - head_only.hits);

  SyntheticParams p;
  p.key_count = 3000;
  p.event_count = 30000;
  p.zipf_exponent = 0.9;
  p.size_model = LogNormalSize{.mu = 9.0, .sigma = 1.5, .min_bytes = 1, .max_bytes = 1 << 20};
  p.seed = 2;
  SyntheticTrace streamed(p);
  CHECK(run(streamed, c, {.warmup = 10000}).same_counters(warm));
  CHECK(run(TraceSpec{p}, c).same_counters(all));
}

TEST_CASE("the full W-TinyLFU grid has 18 combinations and 54 over three capacities") {
  std::vector<SimulationReport> reports;
  const auto events = small_trace();
  for (Bytes capacity : {Bytes{500'000}, Bytes{1'000'000}, Bytes{4'000'000}}) {
    const auto configs = wtinylfu_combinations(lru(capacity));
    CHECK(configs.size() == 18);
    const auto batch = sweep(events, configs);
    reports.insert(reports.end(), batch.begin(), batch.end());
  }
  CHECK(reports.size() == 54);
  const std::string csv = emit_csv(reports);
  const auto lines = split(csv, '\n');
  REQUIRE(lines.size() == 55);
  const std::size_t columns = split(kCsvHeader, ',').size();
  for (const std::string& line : lines) CHECK(split(line, ',').size() == columns);
}

TEST_CASE("CSV rows use fixed six-digit ratios") {
  const std::vector<AccessEvent> events{{0, 1, 100}, {1, 1, 100}};
  const std::vector<SimulationReport> reports{run(events, lru(1000))};
  const std::string csv = emit_csv(reports);
  const auto lines = split(csv, '\n');
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == kCsvHeader);
  const auto fields = split(lines[1], ',');
  CHECK(fields[0] == "lru");
  CHECK(fields[3] == "1000");
  CHECK(fields[7] == "0.500000");
  CHECK(fields[8] == "0.500000");
}

TEST_CASE("overhead is measured against LRU") {
  const auto events = small_trace();
  CHECK(std::abs(measure_overhead(events, lru(1'000'000), 1)) < 1.0);
  CHECK_THROWS_AS(measure_overhead(events, lru(1'000'000), 0), InvalidConfig);
}
