#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace sizecache {

using ObjectKey = std::uint64_t;
using Bytes = std::uint64_t;
using Frequency = std::uint32_t;

// Every randomized decision inside a cache instance draws from this engine.
using Rng = std::mt19937_64;

// Read-only frequency lookup handed to eviction and admission code.
using FrequencyFn = std::function<Frequency(ObjectKey)>;

enum class AccessOutcome { Hit, Miss };

}  // namespace sizecache
