#include "sizecache/trace.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <unordered_map>

namespace sizecache {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  if (delimiter == ' ') {
    // Runs of blanks count as one separator.
    std::size_t pos = 0;
    while (pos < line.size()) {
      const auto start = line.find_first_not_of(" \t", pos);
      if (start == std::string_view::npos) break;
      const auto end = line.find_first_of(" \t", start);
      fields.push_back(line.substr(start, end == std::string_view::npos ? end : end - start));
      pos = end == std::string_view::npos ? line.size() : end;
    }
    return fields;
  }
  std::size_t start = 0;
  while (true) {
    const auto end = line.find(delimiter, start);
    fields.push_back(trim(line.substr(start, end == std::string_view::npos ? end : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return fields;
}

std::optional<std::uint64_t> parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) return std::nullopt;
  return value;
}

[[noreturn]] void parse_error(std::size_t line_number, const std::string& reason) {
  throw TraceError(TraceErrorKind::Parse, reason, line_number);
}

}  // namespace

TraceFormat TraceFormat::parse(std::string_view mapping) {
  TraceFormat format;
  std::size_t start = 0;
  while (start <= mapping.size()) {
    const auto end = mapping.find(',', start);
    const std::string_view token = trim(mapping.substr(start, end == std::string_view::npos ? end : end - start));
    start = end == std::string_view::npos ? mapping.size() + 1 : end + 1;
    if (token.empty()) continue;

    const auto eq = token.find('=');
    const std::string_view name = token.substr(0, eq);
    const std::string_view value = eq == std::string_view::npos ? std::string_view{} : token.substr(eq + 1);
    if (name == "header" && eq == std::string_view::npos) {
      format.header = true;
    } else if (name == "key" || name == "size") {
      const auto column = parse_u64(value);
      if (!column) throw std::invalid_argument("bad column index in format token '" + std::string(token) + "'");
      (name == "key" ? format.key_column : format.size_column) = static_cast<std::size_t>(*column);
      format.auto_columns = false;
    } else if (name == "delim") {
      if (value == "comma") format.delimiter = ',';
      else if (value == "tab") format.delimiter = '\t';
      else if (value == "space") format.delimiter = ' ';
      else if (value == "semicolon") format.delimiter = ';';
      else if (value.size() == 1) format.delimiter = value[0];
      else throw std::invalid_argument("bad delimiter '" + std::string(value) + "'");
    } else {
      throw std::invalid_argument("unknown format token '" + std::string(token) + "'");
    }
  }
  return format;
}

ObjectKey key_from_text(std::string_view text) {
  if (auto numeric = parse_u64(text)) return *numeric;
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::optional<std::pair<ObjectKey, Bytes>> parse_line(std::string_view line, const TraceFormat& format,
                                                      std::size_t line_number) {
  const std::string_view content = trim(line);
  if (content.empty() || content.front() == '#') return std::nullopt;

  const auto fields = split(content, format.delimiter);
  std::size_t key_column = format.key_column;
  std::size_t size_column = format.size_column;
  if (format.auto_columns) {
    if (fields.size() == 2) {
      key_column = 0;
      size_column = 1;
    } else if (fields.size() == 3) {
      key_column = 1;
      size_column = 2;
    } else {
      parse_error(line_number, "expected 2 or 3 fields, found " + std::to_string(fields.size()));
    }
  }
  if (key_column >= fields.size() || size_column >= fields.size()) {
    parse_error(line_number, "missing column (found " + std::to_string(fields.size()) + " fields)");
  }
  const std::string_view key = fields[key_column];
  if (key.empty()) parse_error(line_number, "empty key");
  const auto size = parse_u64(fields[size_column]);
  if (!size) parse_error(line_number, "invalid size '" + std::string(fields[size_column]) + "'");
  if (*size == 0) {
    throw TraceError(TraceErrorKind::ZeroSize, "zero object size", line_number);
  }
  return std::pair{key_from_text(key), *size};
}

TraceReader::TraceReader(const std::string& path, TraceFormat format) : path_(path), format_(format) {
  file_ = gzopen(path.c_str(), "rb");
  if (!file_) throw TraceError(TraceErrorKind::Io, "cannot open trace '" + path + "'");
}

TraceReader::~TraceReader() {
  if (file_) gzclose(static_cast<gzFile>(file_));
}

bool TraceReader::read_line(std::string& line) {
  line.clear();
  char buffer[1 << 14];
  while (gzgets(static_cast<gzFile>(file_), buffer, sizeof buffer)) {
    line += buffer;
    if (!line.empty() && line.back() == '\n') return true;
  }
  int status = Z_OK;
  const char* message = gzerror(static_cast<gzFile>(file_), &status);
  if (status != Z_OK && status != Z_STREAM_END) {
    throw TraceError(TraceErrorKind::Io, std::string("read failed: ") + message, 0, path_);
  }
  return !line.empty();
}

std::optional<AccessEvent> TraceReader::next() {
  while (read_line(line_)) {
    ++line_number_;
    if (format_.header && line_number_ == 1) continue;
    try {
      if (auto parsed = parse_line(line_, format_, line_number_)) {
        return AccessEvent{.sequence = sequence_++, .key = parsed->first, .size = parsed->second};
      }
    } catch (const TraceError& e) {
      throw TraceError(e.kind(), e.reason(), e.line(), path_);
    }
  }
  return std::nullopt;
}

void SyntheticParams::validate() const {
  if (key_count < 1) throw TraceError(TraceErrorKind::InvalidParams, "key_count must be at least 1");
  if (event_count < 1) throw TraceError(TraceErrorKind::InvalidParams, "event_count must be at least 1");
  if (!(zipf_exponent > 0.0)) throw TraceError(TraceErrorKind::InvalidParams, "zipf exponent must be positive");
  if (const auto* fixed = std::get_if<FixedSize>(&size_model); fixed && fixed->bytes == 0) {
    throw TraceError(TraceErrorKind::InvalidParams, "fixed size must be positive");
  }
  if (const auto* ln = std::get_if<LogNormalSize>(&size_model)) {
    if (!(ln->sigma >= 0.0) || ln->min_bytes == 0 || ln->min_bytes > ln->max_bytes) {
      throw TraceError(TraceErrorKind::InvalidParams, "bad lognormal size model");
    }
  }
  if (const auto* bucketed = std::get_if<BucketedSize>(&size_model)) {
    double total = 0;
    for (const auto& [size, weight] : bucketed->buckets) {
      if (size == 0 || !(weight >= 0.0)) throw TraceError(TraceErrorKind::InvalidParams, "bad size bucket");
      total += weight;
    }
    if (!(total > 0.0)) throw TraceError(TraceErrorKind::InvalidParams, "size buckets carry no weight");
  }
}

SizeModel profile_size_model(std::string_view profile) {
  if (profile == "cdn-like") return LogNormalSize{};
  if (profile == "msr-like") {
    return BucketedSize{{{Bytes{4} << 10, 1.0}, {Bytes{64} << 10, 1.0}, {Bytes{512} << 10, 1.0}}};
  }
  throw TraceError(TraceErrorKind::InvalidParams, "unknown synthetic profile '" + std::string(profile) + "'");
}

SyntheticTrace::SyntheticTrace(const SyntheticParams& params) : params_(params) {
  params_.validate();

  Rng size_rng(params_.seed);
  sizes_.reserve(params_.key_count);
  std::visit(
      [&](const auto& model) {
        using M = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<M, FixedSize>) {
          sizes_.assign(params_.key_count, model.bytes);
        } else if constexpr (std::is_same_v<M, LogNormalSize>) {
          std::lognormal_distribution<double> dist(model.mu, model.sigma);
          for (std::uint64_t k = 0; k < params_.key_count; ++k) {
            const double drawn = std::round(dist(size_rng));
            const double clamped = std::clamp(drawn, static_cast<double>(model.min_bytes),
                                              static_cast<double>(model.max_bytes));
            sizes_.push_back(static_cast<Bytes>(clamped));
          }
        } else {
          std::vector<double> weights;
          for (const auto& bucket : model.buckets) weights.push_back(bucket.second);
          std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
          for (std::uint64_t k = 0; k < params_.key_count; ++k) {
            sizes_.push_back(model.buckets[dist(size_rng)].first);
          }
        }
      },
      params_.size_model);

  cumulative_.reserve(params_.key_count);
  double total = 0;
  for (std::uint64_t rank = 1; rank <= params_.key_count; ++rank) {
    total += 1.0 / std::pow(static_cast<double>(rank), params_.zipf_exponent);
    cumulative_.push_back(total);
  }
  rng_.seed(params_.seed ^ 0x9e3779b97f4a7c15ULL);
}

std::optional<AccessEvent> SyntheticTrace::next() {
  if (emitted_ >= params_.event_count) return std::nullopt;
  std::uniform_real_distribution<double> uniform(0.0, cumulative_.back());
  const double u = uniform(rng_);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  const auto key = static_cast<ObjectKey>(it - cumulative_.begin());
  return AccessEvent{.sequence = emitted_++, .key = key, .size = sizes_[key]};
}

Bytes SyntheticTrace::footprint() const {
  Bytes total = 0;
  for (Bytes s : sizes_) total += s;
  return total;
}

std::unique_ptr<EventSource> open_trace(const TraceSpec& spec) {
  if (const auto* file = std::get_if<FileSource>(&spec)) {
    return std::make_unique<TraceReader>(file->path, file->format);
  }
  return std::make_unique<SyntheticTrace>(std::get<SyntheticParams>(spec));
}

std::vector<AccessEvent> load_trace(const TraceSpec& spec) {
  std::vector<AccessEvent> events;
  if (const auto* params = std::get_if<SyntheticParams>(&spec)) events.reserve(params->event_count);
  auto source = open_trace(spec);
  while (auto event = source->next()) events.push_back(*event);
  return events;
}

std::vector<AccessEvent> generate_synthetic(const SyntheticParams& params) { return load_trace(params); }

void write_csv(std::span<const AccessEvent> events, std::ostream& out) {
  for (const AccessEvent& e : events) out << e.key << ',' << e.size << '\n';
}

std::vector<std::pair<Bytes, double>> size_cdf(std::span<const AccessEvent> events) {
  if (events.empty()) throw TraceError(TraceErrorKind::EmptyTrace, "size CDF of an empty trace");
  std::unordered_map<ObjectKey, Bytes> first_size;
  for (const AccessEvent& e : events) first_size.try_emplace(e.key, e.size);

  std::map<Bytes, std::uint64_t> per_size;
  for (const auto& [key, size] : first_size) ++per_size[size];

  std::vector<std::pair<Bytes, double>> cdf;
  cdf.reserve(per_size.size());
  std::uint64_t running = 0;
  const auto objects = static_cast<double>(first_size.size());
  for (const auto& [size, count] : per_size) {
    running += count;
    cdf.emplace_back(size, static_cast<double>(running) / objects);
  }
  return cdf;
}

Bytes unique_footprint(std::span<const AccessEvent> events) {
  std::unordered_map<ObjectKey, Bytes> first_size;
  for (const AccessEvent& e : events) first_size.try_emplace(e.key, e.size);
  Bytes total = 0;
  for (const auto& [key, size] : first_size) total += size;
  return total;
}

}  // namespace sizecache
