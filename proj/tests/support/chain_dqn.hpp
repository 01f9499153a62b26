#pragma once

// Drives the library's DQN machinery (codec, epsilon-greedy selection,
// replay, target sync, Adam updates) on the 3-state chain MDP from
// oracles.hpp. The chain is small enough that value iteration gives the
// exact optimal policy to compare against, which checks the learning loop
// end to end without any environment rendering in the way.

#include <array>
#include <cstdint>

#include "esrl/cipher/primitive.hpp"
#include "esrl/config.hpp"
#include "esrl/dqn/agent.hpp"
#include "esrl/dqn/replay.hpp"
#include "esrl/net/network.hpp"
#include "esrl/net/optim.hpp"
#include "support/oracles.hpp"

namespace testsupport {

// Hyperparameters scaled down to the 3-state problem; gamma 0.9 keeps the
// optimal action gaps at or above gamma^2 * (1 - gamma) ~= 0.081.
struct ChainHyper {
    double gamma = 0.9;
    int episodes = 400;
    int batch_size = 16;
    double lr = 5e-3;
    double epsilon_start = 1.0;
    double epsilon_min = 0.1;
    int epsilon_decay_steps = 2000;
    int target_sync_every = 100;
    int warmup_steps = 100;
};

// One-hot encoding of the chain state as a 3-byte row vector.
inline esrl::pipeline::ProcessedState chain_processed(int state) {
    esrl::pipeline::ProcessedState p;
    p.bytes = esrl::Bytes(3, 0);
    p.bytes[static_cast<std::size_t>(state)] = 255;
    p.rows = 1;
    p.cols = 3;
    return p;
}

/// Trains a DQN on the chain through the noop cipher and returns the greedy
/// action for each of the three states.
inline std::array<int, 3> chain_greedy_policy(std::uint64_t seed,
                                              const ChainHyper& hyper = {}) {
    using namespace esrl;

    cipher::SchemeSpec scheme;
    scheme.kind = cipher::SchemeKind::Noop;
    cipher::Primitive primitive(scheme, {});
    auto encode = [&](int s) { return primitive.encrypt(chain_processed(s)); };

    const auto codec = dqn::InputCodec::probe(encode(0), net::NetKind::Mlp);
    net::QNetworkSpec spec;
    spec.kind = net::NetKind::Mlp;
    spec.input_shape = {3};
    spec.hidden = {16};
    spec.actions = oracles::ChainMdp::kActions;

    net::QNetwork<float> online(spec);
    net::QNetwork<float> target(spec);
    Rng init_rng(derive_seed(seed, 10));
    online.init(init_rng);
    target.copy_params_from(online);

    net::Adam<float> opt;
    dqn::ReplayMemory memory(2000);
    TrainHyper step_hyper;
    step_hyper.gamma = hyper.gamma;
    step_hyper.batch_size = hyper.batch_size;
    step_hyper.lr = hyper.lr;
    step_hyper.huber_delta = 1.0;

    Rng rng(derive_seed(seed, 11));
    oracles::ChainMdp env;
    std::uint64_t env_step = 0;
    std::uint64_t train_steps = 0;
    for (int episode = 0; episode < hyper.episodes; ++episode) {
        env.reset();
        while (!env.done) {
            const int state = env.state;
            const auto enc_state = encode(state);
            const double eps =
                dqn::epsilon_at(env_step, hyper.epsilon_start, hyper.epsilon_min,
                                static_cast<std::uint64_t>(hyper.epsilon_decay_steps));
            const int action = dqn::select_action(online, codec, enc_state, eps, rng);
            const auto [reward, done] = env.step(action);
            memory.push({enc_state, action, reward, encode(env.state), done});
            ++env_step;
            if (env_step >= static_cast<std::uint64_t>(hyper.warmup_steps)) {
                const auto result = dqn::train_step(online, target, memory, codec,
                                                    opt, step_hyper, rng);
                if (result.trained) {
                    ++train_steps;
                    dqn::maybe_sync_target(online, target, train_steps,
                                           hyper.target_sync_every);
                }
            }
        }
    }

    std::array<int, 3> policy{};
    Rng unused(0);
    for (int s = 0; s < oracles::ChainMdp::kStates; ++s)
        policy[static_cast<std::size_t>(s)] =
            dqn::select_action(online, codec, encode(s), 0.0, unused);
    return policy;
}

/// Greedy policy implied by the value-iteration Q-function.
inline std::array<int, 3> chain_optimal_policy(double gamma) {
    const auto q = oracles::chain_q_star(gamma);
    std::array<int, 3> policy{};
    for (int s = 0; s < 3; ++s)
        policy[static_cast<std::size_t>(s)] =
            q[static_cast<std::size_t>(s)][1] > q[static_cast<std::size_t>(s)][0] ? 1 : 0;
    return policy;
}

}  // namespace testsupport
