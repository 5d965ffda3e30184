#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace rcgen {

// Deterministic 64-bit generator (splitmix64). Every sampling decision in the
// pipeline goes through this type so that outputs are reproducible across
// platforms and independent of the standard library's distributions.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, n). n must be > 0.
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>((static_cast<__uint128_t>(next()) * n) >> 64);
    }

    // Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }
};

// Named sub-stream derivation: one root seed, independent streams per
// (stage, key...) so pipeline stages can be rerun in isolation.
inline uint64_t seed_mix(uint64_t h, uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    Rng r(h);
    return r.next();
}

inline uint64_t seed_mix(uint64_t h, std::string_view s) {
    uint64_t f = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : s) {
        f ^= c;
        f *= 0x100000001b3ULL;
    }
    return seed_mix(h, f);
}

inline uint64_t derive_seed(uint64_t root) { return root; }

template <typename Part, typename... Rest>
uint64_t derive_seed(uint64_t root, Part&& part, Rest&&... rest) {
    if constexpr (std::is_convertible_v<Part, std::string_view>) {
        return derive_seed(seed_mix(root, std::string_view(part)), rest...);
    } else {
        return derive_seed(seed_mix(root, static_cast<uint64_t>(part)), rest...);
    }
}

}  // namespace rcgen
