#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sizecache/types.hpp"

namespace sizecache {

struct AccessEvent {
  std::uint64_t sequence = 0;
  ObjectKey key = 0;
  Bytes size = 0;

  friend bool operator==(const AccessEvent&, const AccessEvent&) = default;
};

enum class TraceErrorKind { Io, Parse, ZeroSize, EmptyTrace, InvalidParams };

class TraceError : public std::runtime_error {
 public:
  // `line` is 1-based for Parse and ZeroSize errors, 0 otherwise. `source`
  // names the file, when known.
  TraceError(TraceErrorKind kind, std::string reason, std::size_t line = 0, std::string source = {})
      : std::runtime_error(format(reason, line, source)),
        kind_(kind),
        line_(line),
        reason_(std::move(reason)) {}

  TraceErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  static std::string format(const std::string& reason, std::size_t line, const std::string& source) {
    std::string out = source;
    if (line > 0) out += (out.empty() ? "line " : ":") + std::to_string(line);
    return out.empty() ? reason : out + ": " + reason;
  }

  TraceErrorKind kind_;
  std::size_t line_;
  std::string reason_;
};

// Column mapping for delimited trace files.
//
// The canonical layout is headerless `key,size`. With `auto_columns`, a line
// of three fields is read as `timestamp,key,size` and the timestamp ignored.
struct TraceFormat {
  std::size_t key_column = 0;
  std::size_t size_column = 1;
  char delimiter = ',';
  bool header = false;
  bool auto_columns = true;

  // Parses "key=1,size=2,delim=space,header". Tokens are optional; naming a
  // column disables auto_columns. Delimiters: comma, tab, space, semicolon,
  // or a single character. Throws std::invalid_argument.
  static TraceFormat parse(std::string_view mapping);
};

// Numeric keys map to themselves; anything else is hashed (FNV-1a, 64-bit).
ObjectKey key_from_text(std::string_view text);

// Parses one data line into (key, size). Blank lines and lines starting with
// '#' yield nullopt. Throws TraceError with `line_number` on malformed input.
std::optional<std::pair<ObjectKey, Bytes>> parse_line(std::string_view line, const TraceFormat& format,
                                                      std::size_t line_number);

class EventSource {
 public:
  virtual ~EventSource() = default;
  virtual std::optional<AccessEvent> next() = 0;
};

// Streams events from a delimited text file; gzip input is detected and
// decompressed transparently. Holds one line in memory at a time.
class TraceReader final : public EventSource {
 public:
  TraceReader(const std::string& path, TraceFormat format = {});
  ~TraceReader() override;
  TraceReader(const TraceReader&) = delete;
  TraceReader& operator=(const TraceReader&) = delete;

  std::optional<AccessEvent> next() override;

 private:
  bool read_line(std::string& line);

  std::string path_;
  TraceFormat format_;
  void* file_ = nullptr;  // gzFile
  std::size_t line_number_ = 0;
  std::uint64_t sequence_ = 0;
  std::string line_;
};

struct FixedSize {
  Bytes bytes = 1024;
};

// exp(N(mu, sigma)) bytes, rounded and clamped to [min_bytes, max_bytes].
struct LogNormalSize {
  double mu = 10.0;
  double sigma = 2.0;
  Bytes min_bytes = 1;
  Bytes max_bytes = Bytes{512} << 20;
};

struct BucketedSize {
  std::vector<std::pair<Bytes, double>> buckets;  // (size, weight)
};

using SizeModel = std::variant<FixedSize, LogNormalSize, BucketedSize>;

struct SyntheticParams {
  std::uint64_t key_count = 100000;
  std::uint64_t event_count = 1000000;
  double zipf_exponent = 1.0;
  SizeModel size_model = LogNormalSize{};
  std::uint64_t seed = 1;

  // Throws TraceError(InvalidParams).
  void validate() const;
};

// "cdn-like" (lognormal sizes) or "msr-like" (4 KB / 64 KB / 512 KB buckets).
// Throws TraceError(InvalidParams) on an unknown name.
SizeModel profile_size_model(std::string_view profile);

/**
 * Zipf-popularity request stream over key_count keys, keys numbered by
 * popularity rank from 0. Each key gets one size drawn up front from the size
 * model, so every request for a key carries the same size. The stream is a
 * pure function of the params.
 */
class SyntheticTrace final : public EventSource {
 public:
  explicit SyntheticTrace(const SyntheticParams& params);

  std::optional<AccessEvent> next() override;
  Bytes size_of(ObjectKey key) const { return sizes_.at(key); }
  // Sum of all object sizes.
  Bytes footprint() const;

 private:
  SyntheticParams params_;
  std::vector<double> cumulative_;
  std::vector<Bytes> sizes_;
  Rng rng_;
  std::uint64_t emitted_ = 0;
};

struct FileSource {
  std::string path;
  TraceFormat format;
};

using TraceSpec = std::variant<FileSource, SyntheticParams>;

std::unique_ptr<EventSource> open_trace(const TraceSpec& spec);
std::vector<AccessEvent> load_trace(const TraceSpec& spec);
std::vector<AccessEvent> generate_synthetic(const SyntheticParams& params);

// Canonical headerless `key,size` lines.
void write_csv(std::span<const AccessEvent> events, std::ostream& out);

// Per-object size CDF: each key counted once (first size seen), ascending.
// Throws TraceError(EmptyTrace).
std::vector<std::pair<Bytes, double>> size_cdf(std::span<const AccessEvent> events);

// Sum of per-key sizes (first size seen).
Bytes unique_footprint(std::span<const AccessEvent> events);

}  // namespace sizecache
