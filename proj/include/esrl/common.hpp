#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace esrl {

using Bytes = std::vector<std::uint8_t>;
using Rng = std::mt19937_64;

// Error taxonomy used across the library. expcli maps ConfigError to exit
// code 2 and everything else derived from std::exception to 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::logic_error {
    using std::logic_error::logic_error;
};
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LengthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Named sub-seed derivation so every consumer of a run seed gets an
// independent, reproducible stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(base ^ splitmix64(stream));
}

// Uniform helpers with pinned arithmetic. The standard distributions are
// implementation-defined, which would break byte-identical replays across
// toolchains.
inline std::size_t rand_index(Rng& rng, std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

// Uniform double in [0, 1) with 53 random bits.
inline double rand_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double rand_range(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * rand_unit(rng);
}

inline Bytes random_bytes(Rng& rng, std::size_t n) {
    Bytes out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng() & 0xff);
    return out;
}

}  // namespace esrl
