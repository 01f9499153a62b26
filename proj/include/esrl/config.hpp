#pragma once

// Experiment configuration shared by the training loop and the CLI. One
// struct describes everything a seeded run needs: environment, processing
// and padding choices, encryption scheme, training hyperparameters, and the
// episode budget.

#include <cstdint>
#include <string>
#include <vector>

#include "esrl/cipher/primitive.hpp"
#include "esrl/envcore/gridroom.hpp"
#include "esrl/pipeline/padding.hpp"

namespace esrl {

enum class EnvKind { Gridroom, Landerlite };

const char* to_string(EnvKind kind);
EnvKind parse_env_kind(const std::string& name);  // throws ConfigError

struct TrainHyper {
    double gamma = 0.99;
    int replay_capacity = 50000;
    int batch_size = 32;
    double lr = 1e-3;
    double epsilon_start = 1.0;
    double epsilon_min = 0.05;
    int epsilon_decay_steps = 10000;  // env steps
    int target_sync_every = 500;      // train steps
    int warmup_steps = 1000;          // env steps before updates begin
    double huber_delta = 1.0;
    int convergence_window = 100;     // final episodes averaged for reporting

    bool operator==(const TrainHyper&) const = default;
};

struct ExperimentConfig {
    EnvKind env = EnvKind::Gridroom;
    int env_size = 5;                                   // gridroom only
    env::StartMode start_mode = env::StartMode::Fixed;  // gridroom only
    int px_per_tile = 8;                                // render resolution
    cipher::SchemeSpec scheme;
    pipeline::PaddingSpec padding;
    TrainHyper train;
    // Network overrides; empty means the architecture defaults (conv
    // channels {16, 32}, cnn head {64}, mlp hidden {64, 64}).
    std::vector<int> net_conv_channels;
    std::vector<int> net_hidden;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    int episodes = 0;  // 0 selects the per-environment default budget
    std::string out_dir = "runs";

    bool operator==(const ExperimentConfig&) const = default;
};

// Episode budgets sized so a single-core run finishes in minutes: grid
// 5x5/6x6 -> 2000, 8x8 -> 5000, 16x16 -> 15000, lander -> 2000.
int default_episodes(EnvKind env, int env_size);

// Resolved episode budget for a config (its explicit value, or the default).
int resolve_episodes(const ExperimentConfig& config);

// Throws ConfigError naming the offending field.
void validate(const ExperimentConfig& config);

}  // namespace esrl
