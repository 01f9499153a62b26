#pragma once

// Run artifacts on disk. A completed run directory contains:
//   config.txt      — the effective config (canonical serialized form)
//   seed_<s>.csv    — per-episode metrics for one seed
//   seed_<s>.net    — the trained Q-network for that seed
//   summary.csv     — per-seed final-window means plus the aggregate row
// All CSVs use 6-digit fixed precision for floating-point columns.

#include <cstdint>
#include <string>
#include <vector>

#include "esrl/dqn/trainer.hpp"

namespace esrl::cli {

inline constexpr const char* kMetricsHeader =
    "seed,episode,steps,return,epsilon,mean_loss";

std::string seed_csv_name(std::uint64_t seed);  // "seed_<s>.csv"
std::string seed_net_name(std::uint64_t seed);  // "seed_<s>.net"

struct SeedMetrics {
    std::uint64_t seed = 0;
    std::vector<dqn::EpisodeRecord> episodes;
};

/// One CSV row per episode, prefixed by the header line.
std::string metrics_csv(std::uint64_t seed,
                        const std::vector<dqn::EpisodeRecord>& episodes);

void write_text_file(const std::string& path, const std::string& text);

/// Parses a metrics CSV; throws DataError on any malformed content (wrong
/// header, field count, non-numeric cells, mixed seeds, gaps in episodes).
SeedMetrics read_metrics_file(const std::string& path);

struct RunSummary {
    std::vector<std::uint64_t> seeds;
    std::vector<double> final_means;  // final-window mean return per seed
    int window = 0;
    double mean = 0.0;  // across seeds
    double stddev = 0.0;  // sample stddev across seeds; 0 for a single seed
};

RunSummary summarize(const std::vector<SeedMetrics>& runs, int window);

/// "seed,final_mean_return" rows followed by an "all,..." aggregate row.
std::string summary_csv(const RunSummary& summary);

/// Learning-curve CSV with both x-axis choices: episode index and cumulative
/// env steps, plus the raw and trailing-window-averaged return.
std::string curve_csv(const SeedMetrics& run, int window);

}  // namespace esrl::cli
