// simulate: replay a trace against one or more cache policies and write a
// CSV report (one row per policy x capacity).

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "sizecache/simulator.hpp"

namespace {

using namespace sizecache;

// "1048576", "512K", "64MB", "10GiB" -> bytes (binary multiples).
Bytes parse_bytes(const std::string& text) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad byte count '" + text + "'");
  }
  std::string suffix;
  for (char c : text.substr(pos)) suffix += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  unsigned shift = 0;
  if (suffix.empty() || suffix == "B") shift = 0;
  else if (suffix == "K" || suffix == "KB" || suffix == "KIB") shift = 10;
  else if (suffix == "M" || suffix == "MB" || suffix == "MIB") shift = 20;
  else if (suffix == "G" || suffix == "GB" || suffix == "GIB") shift = 30;
  else throw std::invalid_argument("bad byte suffix in '" + text + "'");
  if (value == 0) throw std::invalid_argument("capacity must be positive");
  return Bytes{value} << shift;
}

template <class T, class Parse>
std::vector<T> parse_list(const std::vector<std::string>& names, const std::vector<T>& all, Parse parse,
                          const char* what) {
  std::vector<T> out;
  for (const std::string& name : names) {
    if (name == "all") {
      out.insert(out.end(), all.begin(), all.end());
      continue;
    }
    auto parsed = parse(name);
    if (!parsed) throw std::invalid_argument(std::string("unknown ") + what + " '" + name + "'");
    out.push_back(*parsed);
  }
  return out;
}

struct Options {
  std::string trace;
  std::string format;
  std::vector<std::string> policies{"wtlfu"};
  std::vector<std::string> admissions{"av"};
  std::vector<std::string> evictions{"slru"};
  std::vector<std::string> capacities;
  double window_pct = 1.0;
  std::uint32_t sketch_factor = 10;
  std::uint64_t seed = 1;
  bool no_pruning = false;
  std::uint64_t warmup = 0;
  std::string out;
  unsigned repeat = 0;
  unsigned threads = 0;
  std::string gdsf_cost = "unit";
  std::uint64_t synthetic_keys = 100000;
  std::uint64_t synthetic_events = 1000000;
  double zipf = 1.0;
  std::string export_trace;
};

TraceSpec trace_spec(const Options& opt) {
  constexpr std::string_view prefix = "synthetic:";
  if (opt.trace.starts_with(prefix)) {
    SyntheticParams params;
    params.key_count = opt.synthetic_keys;
    params.event_count = opt.synthetic_events;
    params.zipf_exponent = opt.zipf;
    params.size_model = profile_size_model(opt.trace.substr(prefix.size()));
    params.seed = opt.seed;
    return params;
  }
  return FileSource{opt.trace, opt.format.empty() ? TraceFormat{} : TraceFormat::parse(opt.format)};
}

std::vector<PolicyConfig> build_configs(const Options& opt) {
  const auto kinds = parse_list<PolicyKind>(opt.policies, {PolicyKind::WTinyLfu, PolicyKind::Lru, PolicyKind::Gdsf},
                                            parse_policy_kind, "policy");
  const auto admissions = parse_list<AdmissionVariant>(
      opt.admissions, {AdmissionVariant::IV, AdmissionVariant::QV, AdmissionVariant::AV}, parse_admission,
      "admission");
  const auto evictions = parse_list<EvictionPolicy>(
      opt.evictions,
      {EvictionPolicy::Slru, EvictionPolicy::SampledFrequency, EvictionPolicy::SampledSize,
       EvictionPolicy::SampledFreqOverSize, EvictionPolicy::SampledNeededSize, EvictionPolicy::Random},
      parse_eviction, "eviction");
  if (opt.gdsf_cost != "unit" && opt.gdsf_cost != "size") {
    throw std::invalid_argument("unknown gdsf cost '" + opt.gdsf_cost + "'");
  }

  std::vector<PolicyConfig> configs;
  for (const std::string& cap_text : opt.capacities) {
    PolicyConfig base;
    base.capacity_bytes = parse_bytes(cap_text);
    base.window_fraction = opt.window_pct / 100.0;
    base.sketch.sample_factor = opt.sketch_factor;
    base.rng_seed = opt.seed;
    base.pruning_enabled = !opt.no_pruning;
    base.gdsf_cost = opt.gdsf_cost == "size" ? GdsfCost::Size : GdsfCost::Unit;
    for (PolicyKind kind : kinds) {
      base.policy = kind;
      if (kind != PolicyKind::WTinyLfu) {
        configs.push_back(base);
        continue;
      }
      for (AdmissionVariant admission : admissions) {
        for (EvictionPolicy eviction : evictions) {
          PolicyConfig config = base;
          config.admission = admission;
          config.eviction = eviction;
          configs.push_back(config);
        }
      }
    }
  }
  for (const PolicyConfig& config : configs) config.validate();
  return configs;
}

int run_cli(const Options& opt) {
  const std::vector<PolicyConfig> configs = build_configs(opt);
  const std::vector<AccessEvent> events = load_trace(trace_spec(opt));

  if (!opt.export_trace.empty()) {
    std::ofstream exported(opt.export_trace);
    if (!exported) throw std::runtime_error("cannot write '" + opt.export_trace + "'");
    write_csv(events, exported);
  }

  const RunOptions run_options{.warmup = opt.warmup};
  // Timed repetitions run one at a time so they do not compete for cores.
  std::vector<SimulationReport> reports = sweep(events, configs, run_options, opt.repeat > 0 ? 1 : opt.threads);
  if (opt.repeat > 0) {
    for (SimulationReport& report : reports) {
      report.policy_overhead_seconds = measure_overhead(events, report.config, opt.repeat);
    }
  }

  if (opt.out.empty() || opt.out == "-") {
    emit_csv(reports, std::cout);
  } else {
    std::ofstream out(opt.out);
    if (!out) throw std::runtime_error("cannot write '" + opt.out + "'");
    emit_csv(reports, out);
    if (!out) throw std::runtime_error("failed writing '" + opt.out + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace-driven cache simulator: hit ratio, byte hit ratio, victim comparisons and overhead."};
  Options opt;

  app.add_option("--trace", opt.trace, "Trace file (CSV, optionally gzip) or synthetic:<cdn-like|msr-like>")
      ->required();
  app.add_option("--format", opt.format, "Column mapping, e.g. key=1,size=2,delim=space,header");
  app.add_option("--policy", opt.policies, "wtlfu | lru | gdsf | all (repeatable)");
  app.add_option("--admission", opt.admissions, "iv | qv | av | all (repeatable, wtlfu only)");
  app.add_option("--eviction", opt.evictions,
                 "slru | sfreq | ssize | sfos | sneed | random | lru | all (repeatable, wtlfu only)");
  app.add_option("--capacity", opt.capacities, "Cache capacity in bytes, K/M/G suffixes allowed (repeatable)")
      ->required();
  app.add_option("--window-pct", opt.window_pct, "Window share of capacity in percent")->capture_default_str();
  app.add_option("--sketch-factor", opt.sketch_factor, "Sketch aging period in multiples of the item capacity")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "Seed for policy randomness and synthetic traces")->capture_default_str();
  app.add_flag("--no-pruning", opt.no_pruning, "Disable early pruning in AV");
  app.add_option("--warmup", opt.warmup, "Events replayed before counting starts")->capture_default_str();
  app.add_option("--out", opt.out, "CSV report path (default stdout)");
  app.add_option("--repeat", opt.repeat,
                 "When > 0, report overhead as mean run time minus mean LRU run time over this many runs")
      ->capture_default_str();
  app.add_option("--threads", opt.threads, "Worker threads for the sweep (0 = all cores)")->capture_default_str();
  app.add_option("--gdsf-cost", opt.gdsf_cost, "GDSF cost model: unit | size")->capture_default_str();
  app.add_option("--keys", opt.synthetic_keys, "Synthetic trace: distinct keys")->capture_default_str();
  app.add_option("--events", opt.synthetic_events, "Synthetic trace: number of requests")->capture_default_str();
  app.add_option("--zipf", opt.zipf, "Synthetic trace: Zipf exponent")->capture_default_str();
  app.add_option("--export-trace", opt.export_trace, "Also write the replayed trace as key,size CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    return run_cli(opt);
  } catch (const std::exception& e) {
    std::cerr << "simulate: error: " << e.what() << '\n';
    return 1;
  }
}
