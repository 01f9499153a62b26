#pragma once

#include <cmath>
#include <optional>

#include "esrl/common.hpp"

namespace esrl::env {

struct ReturnStats {
    double mean = 0.0;
    std::optional<double> stddev;  // absent for a single episode
    int episodes = 0;

    // Standard error of the mean; 0 when stddev is absent.
    double sem() const {
        return stddev ? *stddev / std::sqrt(static_cast<double>(episodes)) : 0.0;
    }
};

template <typename Seq>
ReturnStats return_stats(const Seq& returns) {
    ReturnStats out;
    out.episodes = static_cast<int>(returns.size());
    if (out.episodes == 0) throw UsageError("no episodes to aggregate");
    double sum = 0.0;
    for (double r : returns) sum += r;
    out.mean = sum / out.episodes;
    if (out.episodes >= 2) {
        double ss = 0.0;
        for (double r : returns) ss += (r - out.mean) * (r - out.mean);
        out.stddev = std::sqrt(ss / (out.episodes - 1));
    }
    return out;
}

/// Runs `episodes` episodes under a uniformly random policy and reports
/// undiscounted return statistics.
template <typename Env>
ReturnStats random_policy_return(Env& env, int episodes, Rng& rng) {
    if (episodes < 1) throw UsageError("episodes must be >= 1");
    std::vector<double> returns;
    returns.reserve(static_cast<std::size_t>(episodes));
    for (int e = 0; e < episodes; ++e) {
        env.reset(rng);
        double total = 0.0;
        while (true) {
            const int a = static_cast<int>(rand_index(rng, Env::kActionCount));
            const auto res = env.step_action(a);
            total += res.reward;
            if (res.done) break;
        }
        returns.push_back(total);
    }
    return return_stats(returns);
}

}  // namespace esrl::env
