#pragma once

// Seeded end-to-end training runs: environment -> processing -> padding ->
// encryption -> agent, with only CipherStates crossing into the replay
// memory. A run is a pure function of (config, seed); identical inputs give
// byte-identical metrics.

#include <cstdint>
#include <functional>
#include <vector>

#include "esrl/config.hpp"
#include "esrl/dqn/agent.hpp"
#include "esrl/dqn/replay.hpp"
#include "esrl/envcore/rollout.hpp"
#include "esrl/net/network.hpp"

namespace esrl::dqn {

struct EpisodeRecord {
    int episode = 0;     // 0-based index
    int steps = 0;       // env steps in the episode
    double ret = 0.0;    // undiscounted return
    double epsilon = 0.0;  // exploration rate at episode end
    double mean_loss = 0.0;  // mean TD loss over the episode's updates; 0 if none

    bool operator==(const EpisodeRecord&) const = default;
};

/// Sliding-window mean; output length is max(0, n - window + 1).
std::vector<double> moving_average(const std::vector<double>& xs, int window);

struct TrainMetrics {
    std::vector<EpisodeRecord> episodes;
    // Moving-average return series over `window` episodes.
    std::vector<double> moving_average;
    int window = 0;

    std::vector<double> returns() const;
    /// Mean return over the final `window` episodes (all episodes if fewer).
    double final_window_mean() const;
};

struct TrainResult {
    TrainMetrics metrics;
    net::QNetwork<float> qnet;
    ReplayMemory replay;  // kept for post-run audits
};

/// Runs one seeded training run to completion. All randomness — environment,
/// exploration, initialization, key material, CBC IVs, and (when
/// scheme.shuffle_seed is 0) the shuffle permutation — derives from `seed`.
TrainResult train_run(const ExperimentConfig& config, std::uint64_t seed);

/// The concrete keyed primitive a seeded run used: key material and (for a
/// zero shuffle_seed) the shuffle permutation re-derived exactly as
/// train_run derives them. Exposed so replay audits can decrypt stored
/// states after the fact; the training loop itself never decrypts.
cipher::Primitive run_primitive(const ExperimentConfig& config, std::uint64_t seed);

using ActionSelector = std::function<int(const cipher::CipherState&)>;

/// Greedy-policy evaluation of a trained network. `seed` must be the
/// training seed: the run key and shuffle permutation are re-derived from it
/// so deterministic schemes produce the ciphertexts the network was trained
/// on. Environment randomness uses an evaluation-only stream.
env::ReturnStats evaluate(net::QNetwork<float>& qnet, const ExperimentConfig& config,
                          std::uint64_t seed, int episodes);

/// Same loop with an arbitrary policy over cipher states (test oracles).
env::ReturnStats evaluate_policy(const ExperimentConfig& config, std::uint64_t seed,
                                 int episodes, const ActionSelector& select);

}  // namespace esrl::dqn
