#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace fairorder {

// splitmix64 finalizer; the basis of all randomness in the simulator.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
    return mix64(seed ^ mix64(salt));
}

inline std::uint64_t derive(std::uint64_t seed, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return derive(seed, h);
}

/// Counter-based random stream. The i-th value depends only on (key, i), so
/// independently keyed streams never interfere: consuming one stream leaves
/// every other stream untouched. Streams are keyed by (seed, purpose label),
/// which keeps runs reproducible when optional features (gossip, attacks)
/// are toggled on or off.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) : key_(key) {}

    RngStream(std::uint64_t seed, std::string_view purpose)
        : key_(derive(seed, purpose)) {}

    std::uint64_t next_u64() {
        return mix64(key_ + 0x9e3779b97f4a7c15ull * ++counter_);
    }

    /// Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Exponential with the given mean, via inverse CDF.
    double next_exp(double mean) { return -mean * std::log1p(-next_unit()); }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace fairorder
