#pragma once

// Per-state encryption latency microbenchmark: how long does Enc(φ(S)) take
// for each scheme and grid size? Each repetition times exactly one encrypt
// call on a representative processed-and-padded state; padding cost is not
// part of the timed region.

#include <cstdint>
#include <string>
#include <vector>

#include "esrl/cipher/primitive.hpp"
#include "esrl/pipeline/padding.hpp"

namespace esrl::bench {

struct BenchResult {
    cipher::SchemeSpec scheme;
    int env_size = 0;
    int reps = 0;
    std::vector<double> samples;  // seconds per encrypt, post-warmup
    double median_s = 0.0;
    double mean_s = 0.0;
    double std_s = 0.0;  // sample standard deviation
    double min_s = 0.0;
    double max_s = 0.0;
    // Median seconds of one apply_padding call, timed apart from encryption;
    // zero for schemes that take the processed state unpadded.
    double pad_median_s = 0.0;
    int state_bytes = 0;  // plaintext bytes handed to encrypt
};

inline constexpr int kDefaultReps = 1000;
inline constexpr int kWarmupReps = 100;

/// Statistics over `samples`; lives apart from bench_encrypt so reported
/// aggregates can be recomputed and cross-checked from the raw samples.
void compute_stats(BenchResult& result);

/// Times `reps` single-state encryptions for `scheme` on the processed state
/// of a freshly reset env_size x env_size grid. `padding` is applied first
/// for block-cipher schemes (and timed separately into pad_median_s); other
/// schemes take the raw state. Keys/IVs derive from `seed`. Throws UsageError
/// if called while a training run is live in this process — the numbers
/// would be garbage.
BenchResult bench_encrypt(const cipher::SchemeSpec& scheme, int env_size,
                          int reps = kDefaultReps,
                          const pipeline::PaddingSpec& padding = {},
                          std::uint64_t seed = 0);

/// Delimiter-separated table, rows sorted by (env_size, scheme).
std::string bench_report(std::vector<BenchResult> results);

}  // namespace esrl::bench
