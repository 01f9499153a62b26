#pragma once

// Agent-side DQN machinery: the cipher-state-to-tensor codec, epsilon-greedy
// action selection, Q-target computation, and the gradient step. Templated on
// the network scalar so gradient checks can run the identical code in double.

#include <vector>

#include "esrl/cipher/primitive.hpp"
#include "esrl/common.hpp"
#include "esrl/config.hpp"
#include "esrl/dqn/replay.hpp"
#include "esrl/net/network.hpp"
#include "esrl/net/optim.hpp"
#include "esrl/pipeline/processing.hpp"
#include "esrl/pipeline/reassemble.hpp"

namespace esrl::dqn {

/// Linear decay from eps_start to eps_min over decay_steps env steps.
inline double epsilon_at(std::uint64_t env_step, double eps_start,
                         double eps_min, std::uint64_t decay_steps) {
    if (env_step >= decay_steps) return eps_min;
    const double frac = static_cast<double>(env_step) / static_cast<double>(decay_steps);
    return eps_start + (eps_min - eps_start) * frac;
}

// Fixes how a run's cipher states become network inputs. Ciphertext length
// is constant within a run (the cipher is length-preserving up to a constant
// IV), so the input shape is probed once from an example state.
struct InputCodec {
    net::NetKind kind = net::NetKind::Mlp;
    int rows = 0;
    int cols = 0;

    static InputCodec probe(const cipher::CipherState& example, net::NetKind kind) {
        const ByteMatrix m = pipeline::reassemble(example);
        InputCodec codec;
        codec.kind = kind;
        codec.rows = m.rows;
        codec.cols = m.cols;
        return codec;
    }

    // Per-sample tensor shape (without the batch dimension).
    std::vector<int> sample_shape() const {
        if (kind == net::NetKind::Cnn) return {1, rows, cols};
        return {rows * cols};
    }

    std::vector<int> batch_shape(int batch) const {
        std::vector<int> shape = {batch};
        const auto sample = sample_shape();
        shape.insert(shape.end(), sample.begin(), sample.end());
        return shape;
    }

    // Writes reassemble(state)/255 into row `row` of a batch tensor.
    template <typename T>
    void write(const cipher::CipherState& state, net::Tensor<T>& batch,
               int row) const {
        const ByteMatrix m = pipeline::reassemble(state);
        if (m.rows != rows || m.cols != cols)
            throw ShapeError("cipher state does not match the probed input shape");
        const std::size_t span = static_cast<std::size_t>(rows) * cols;
        pipeline::normalize_into(m.data,
                                 batch.data.data() + span * static_cast<std::size_t>(row));
    }
};

/// Epsilon-greedy action choice; greedy ties go to the lowest index. The RNG
/// is consulted only when epsilon > 0, so greedy evaluation is RNG-free.
template <typename T>
int select_action(net::QNetwork<T>& q, const InputCodec& codec,
                  const cipher::CipherState& state, double epsilon, Rng& rng) {
    const int actions = q.spec().actions;
    if (epsilon > 0.0 && rand_unit(rng) < epsilon)
        return static_cast<int>(rand_index(rng, static_cast<std::size_t>(actions)));
    net::Tensor<T> x(codec.batch_shape(1));
    codec.write(state, x, 0);
    const auto& y = q.forward(x);
    int best = 0;
    for (int a = 1; a < actions; ++a)
        if (y.data[a] > y.data[best]) best = a;
    return best;
}

/// y_i = r_i when terminal, else r_i + gamma * max_a Q_target(s'_i, a).
template <typename T>
std::vector<double> q_targets(const std::vector<const Transition*>& batch,
                              net::QNetwork<T>& target, const InputCodec& codec,
                              double gamma) {
    const int n = static_cast<int>(batch.size());
    const int actions = target.spec().actions;
    net::Tensor<T> next(codec.batch_shape(n));
    for (int i = 0; i < n; ++i) codec.write(batch[i]->next_state, next, i);
    const auto& q_next = target.forward(next);
    std::vector<double> targets(n);
    for (int i = 0; i < n; ++i) {
        double y = batch[i]->reward;
        if (!batch[i]->done) {
            const T* row = q_next.data.data() + static_cast<std::size_t>(i) * actions;
            T best = row[0];
            for (int a = 1; a < actions; ++a) best = std::max(best, row[a]);
            y += gamma * static_cast<double>(best);
        }
        targets[i] = y;
    }
    return targets;
}

struct TrainStepResult {
    bool trained = false;
    double mean_loss = 0.0;
};

/// One DQN update: uniform without-replacement batch, Huber TD loss on the
/// taken actions, one Adam step. No-op while the memory holds fewer than
/// batch_size transitions.
template <typename T>
TrainStepResult train_step(net::QNetwork<T>& online, net::QNetwork<T>& target,
                           const ReplayMemory& memory, const InputCodec& codec,
                           net::Adam<T>& opt, const TrainHyper& hyper, Rng& rng) {
    const std::size_t n = static_cast<std::size_t>(hyper.batch_size);
    if (memory.size() < n) return {};
    const auto batch = memory.sample(n, rng);
    const auto targets = q_targets(batch, target, codec, hyper.gamma);

    net::Tensor<T> x(codec.batch_shape(hyper.batch_size));
    for (int i = 0; i < hyper.batch_size; ++i) codec.write(batch[i]->state, x, i);
    const auto& q = online.forward(x);

    const int actions = online.spec().actions;
    net::Tensor<T> dq(q.shape);
    double loss_sum = 0.0;
    for (int i = 0; i < hyper.batch_size; ++i) {
        const std::size_t at =
            static_cast<std::size_t>(i) * actions + batch[i]->action;
        const auto hl = net::huber(q.data[at], static_cast<T>(targets[i]),
                                   static_cast<T>(hyper.huber_delta));
        loss_sum += static_cast<double>(hl.loss);
        dq.data[at] = hl.grad / static_cast<T>(hyper.batch_size);
    }
    online.zero_grads();
    online.backward(dq);
    auto views = online.params();
    opt.step(views, hyper.lr);
    return {true, loss_sum / hyper.batch_size};
}

/// Hard-copies online parameters into the target every `every_n` train
/// steps; `train_steps` is the count after the step just taken.
template <typename T>
bool maybe_sync_target(net::QNetwork<T>& online, net::QNetwork<T>& target,
                       std::uint64_t train_steps, int every_n) {
    if (every_n < 1) throw ConfigError("target sync period must be positive");
    if (train_steps == 0 || train_steps % static_cast<std::uint64_t>(every_n) != 0)
        return false;
    target.copy_params_from(online);
    return true;
}

}  // namespace esrl::dqn
