#pragma once

#include <cstdint>

namespace pbp {

// Counter-based generator built on the splitmix64 finalizer (Vigna 2015).
// Every draw is a pure function of (key, counter), so trials can be run in
// any order or in parallel and still reproduce bit-identically.

inline constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Draw `counter` of the stream keyed by `key`.
constexpr uint64_t counter_draw(uint64_t key, uint64_t counter) {
    return mix64(key + (counter + 1) * kGolden);
}

// Uniform in [0, 1) from the top 53 bits.
constexpr double to_unit(uint64_t bits) { return double(bits >> 11) * 0x1.0p-53; }

constexpr double uniform_at(uint64_t key, uint64_t counter) {
    return to_unit(counter_draw(key, counter));
}

// Seed for trial `index` of stream `stream` under `master`. Injective in
// `index` for fixed (master, stream): mix64 is a bijection and the inner
// offset is an odd-multiplier affine map, so 2^64 trials cannot collide.
constexpr uint64_t derive_seed(uint64_t master, uint64_t stream, uint64_t index) {
    return counter_draw(counter_draw(master, stream), index);
}

}  // namespace pbp
