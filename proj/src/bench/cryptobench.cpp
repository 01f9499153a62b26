#include "esrl/bench/cryptobench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "esrl/activity.hpp"
#include "esrl/envcore/gridroom.hpp"
#include "esrl/pipeline/processing.hpp"

namespace esrl::bench {
namespace {

using Clock = std::chrono::steady_clock;

// Keeps the ciphertext observable so the timed call cannot be elided.
volatile std::uint8_t g_sink;

}  // namespace

void compute_stats(BenchResult& result) {
    if (result.samples.empty()) throw UsageError("no samples to aggregate");
    std::vector<double> sorted = result.samples;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    result.min_s = sorted.front();
    result.max_s = sorted.back();
    result.median_s = n % 2 == 1 ? sorted[n / 2]
                                 : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
    double sum = 0.0;
    for (double s : sorted) sum += s;
    result.mean_s = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double s : sorted) ss += (s - result.mean_s) * (s - result.mean_s);
    result.std_s = n >= 2 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
}

BenchResult bench_encrypt(const cipher::SchemeSpec& scheme, int env_size,
                          int reps, const pipeline::PaddingSpec& padding,
                          std::uint64_t seed) {
    if (reps < 1) throw ConfigError("bench repetitions must be >= 1");
    if (training_activity().load() > 0)
        throw UsageError("benchmark refused: a training run is live in this process");

    // Representative state: full processing chain on a fresh fixed-start grid.
    env::GridRoom room(env_size, env::StartMode::Fixed);
    Rng env_rng(derive_seed(seed, 1));
    room.reset(env_rng);
    const pipeline::ProcessedState raw = pipeline::process_grid_state(room, 8);
    const bool pad = cipher::needs_block_alignment(scheme.kind);
    const pipeline::ProcessedState state = pad ? pipeline::apply_padding(raw, padding)
                                               : raw;

    cipher::SchemeSpec spec = scheme;
    Bytes key;
    if (spec.kind == cipher::SchemeKind::AesEcb ||
        spec.kind == cipher::SchemeKind::AesCbc) {
        Rng key_rng(derive_seed(seed, 2));
        key = random_bytes(key_rng, static_cast<std::size_t>(spec.key_len));
    }
    if (spec.kind == cipher::SchemeKind::Shuffle && spec.shuffle_seed == 0)
        spec.shuffle_seed = derive_seed(seed, 3);
    cipher::Primitive primitive(spec, key, derive_seed(seed, 4));

    for (int i = 0; i < kWarmupReps; ++i) g_sink = primitive.encrypt(state).bytes[0];

    BenchResult result;
    result.scheme = spec;
    result.env_size = env_size;
    result.reps = reps;
    result.state_bytes = static_cast<int>(state.bytes.size());
    result.samples.reserve(static_cast<std::size_t>(reps));
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        const cipher::CipherState out = primitive.encrypt(state);
        const auto t1 = Clock::now();
        g_sink = out.bytes[0];
        result.samples.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    compute_stats(result);

    // Padding cost, kept out of the encryption numbers above.
    if (pad) {
        std::vector<double> pad_samples;
        pad_samples.reserve(static_cast<std::size_t>(reps));
        for (int i = 0; i < reps; ++i) {
            const auto t0 = Clock::now();
            const pipeline::ProcessedState padded = pipeline::apply_padding(raw, padding);
            const auto t1 = Clock::now();
            g_sink = padded.bytes[0];
            pad_samples.push_back(std::chrono::duration<double>(t1 - t0).count());
        }
        std::sort(pad_samples.begin(), pad_samples.end());
        const std::size_t n = pad_samples.size();
        result.pad_median_s = n % 2 == 1
                                  ? pad_samples[n / 2]
                                  : (pad_samples[n / 2 - 1] + pad_samples[n / 2]) / 2.0;
    }
    return result;
}

std::string bench_report(std::vector<BenchResult> results) {
    std::sort(results.begin(), results.end(),
              [](const BenchResult& a, const BenchResult& b) {
                  if (a.env_size != b.env_size) return a.env_size < b.env_size;
                  return static_cast<int>(a.scheme.kind) <
                         static_cast<int>(b.scheme.kind);
              });
    std::string out =
        "scheme,env_size,state_bytes,reps,median_s,mean_s,std_s,min_s,max_s,"
        "pad_median_s\n";
    char line[256];
    for (const auto& r : results) {
        std::snprintf(line, sizeof line,
                      "%s,%d,%d,%d,%.9f,%.9f,%.9f,%.9f,%.9f,%.9f\n",
                      cipher::to_string(r.scheme.kind), r.env_size, r.state_bytes,
                      r.reps, r.median_s, r.mean_s, r.std_s, r.min_s, r.max_s,
                      r.pad_median_s);
        out += line;
    }
    return out;
}

}  // namespace esrl::bench
