#include "esrl/dqn/trainer.hpp"

#include <memory>
#include <utility>

#include "esrl/activity.hpp"
#include "esrl/envcore/landerlite.hpp"
#include "esrl/pipeline/padding.hpp"

namespace esrl::dqn {
namespace {

// Sub-seed streams carved out of a run seed. Training and evaluation share
// the key/IV/shuffle streams so deterministic schemes reproduce the exact
// ciphertext space a network was trained on.
enum SeedStream : std::uint64_t {
    kEnvStream = 1,
    kAgentStream = 2,
    kInitStream = 3,
    kKeyStream = 4,
    kIvStream = 5,
    kShuffleStream = 6,
    kEvalEnvStream = 7,
    kEvalIvStream = 8,
};

// Uniform face over the two environments: produce the processed (pre-padding)
// state on reset/step.
struct EnvAdapter {
    virtual ~EnvAdapter() = default;
    virtual int action_count() const = 0;
    virtual pipeline::ProcessedState reset(Rng& rng) = 0;
    virtual std::pair<env::StepResult, pipeline::ProcessedState> step(int action) = 0;
};

struct GridAdapter : EnvAdapter {
    env::GridRoom room;
    int px_per_tile;

    GridAdapter(const ExperimentConfig& config)
        : room(config.env_size, config.start_mode), px_per_tile(config.px_per_tile) {}

    int action_count() const override { return env::GridRoom::kActionCount; }

    pipeline::ProcessedState reset(Rng& rng) override {
        room.reset(rng);
        return pipeline::process_grid_state(room, px_per_tile);
    }

    std::pair<env::StepResult, pipeline::ProcessedState> step(int action) override {
        const auto res = room.step_action(action);
        return {res, pipeline::process_grid_state(room, px_per_tile)};
    }
};

struct LanderAdapter : EnvAdapter {
    env::LanderLite lander;
    pipeline::DiscretizeRanges ranges;

    int action_count() const override { return env::LanderLite::kActionCount; }

    pipeline::ProcessedState reset(Rng& rng) override {
        lander.reset(rng);
        return observe();
    }

    std::pair<env::StepResult, pipeline::ProcessedState> step(int action) override {
        const auto res = lander.step_action(action);
        return {res, observe()};
    }

    pipeline::ProcessedState observe() const {
        pipeline::ProcessedState state;
        state.bytes = pipeline::discretize(lander.observation(), ranges);
        state.rows = 1;
        state.cols = static_cast<int>(state.bytes.size());
        return state;
    }
};

std::unique_ptr<EnvAdapter> make_adapter(const ExperimentConfig& config) {
    if (config.env == EnvKind::Gridroom)
        return std::make_unique<GridAdapter>(config);
    return std::make_unique<LanderAdapter>();
}

// Scheme resolution shared by training and evaluation: AES keys come from
// the run seed's key stream, and a zero shuffle_seed means "derive from the
// run seed" so distinct runs get distinct permutations by default.
struct RunCipher {
    cipher::SchemeSpec scheme;
    Bytes key;

    RunCipher(const ExperimentConfig& config, std::uint64_t seed) {
        scheme = config.scheme;
        if (scheme.kind == cipher::SchemeKind::AesEcb ||
            scheme.kind == cipher::SchemeKind::AesCbc) {
            Rng key_rng(derive_seed(seed, kKeyStream));
            key = random_bytes(key_rng, static_cast<std::size_t>(scheme.key_len));
        }
        if (scheme.kind == cipher::SchemeKind::Shuffle && scheme.shuffle_seed == 0)
            scheme.shuffle_seed = derive_seed(seed, kShuffleStream);
    }

    cipher::Primitive primitive(std::uint64_t iv_seed) const {
        return cipher::Primitive(scheme, key, iv_seed);
    }
};

net::QNetworkSpec network_spec(const ExperimentConfig& config,
                               const InputCodec& codec, int actions) {
    net::QNetworkSpec spec;
    if (config.env == EnvKind::Gridroom) {
        spec = net::default_cnn_spec(codec.rows, codec.cols, actions);
        if (!config.net_conv_channels.empty()) {
            spec.convs.clear();
            for (int ch : config.net_conv_channels) spec.convs.push_back({ch, 3, 1, 1});
        }
        if (!config.net_hidden.empty()) spec.hidden = config.net_hidden;
    } else {
        spec = net::default_mlp_spec(codec.rows * codec.cols, actions);
        if (!config.net_hidden.empty()) spec.hidden = config.net_hidden;
    }
    return spec;
}

}  // namespace

std::vector<double> moving_average(const std::vector<double>& xs, int window) {
    if (window < 1) throw UsageError("moving-average window must be positive");
    std::vector<double> out;
    const std::size_t w = static_cast<std::size_t>(window);
    if (xs.size() < w) return out;
    out.reserve(xs.size() - w + 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sum += xs[i];
        if (i + 1 > w) sum -= xs[i - w];
        if (i + 1 >= w) out.push_back(sum / static_cast<double>(window));
    }
    return out;
}

std::vector<double> TrainMetrics::returns() const {
    std::vector<double> out;
    out.reserve(episodes.size());
    for (const auto& e : episodes) out.push_back(e.ret);
    return out;
}

double TrainMetrics::final_window_mean() const {
    if (episodes.empty()) throw UsageError("no episodes recorded");
    const std::size_t w =
        std::min(episodes.size(), static_cast<std::size_t>(std::max(window, 1)));
    double sum = 0.0;
    for (std::size_t i = episodes.size() - w; i < episodes.size(); ++i)
        sum += episodes[i].ret;
    return sum / static_cast<double>(w);
}

cipher::Primitive run_primitive(const ExperimentConfig& config, std::uint64_t seed) {
    return RunCipher(config, seed).primitive(derive_seed(seed, kIvStream));
}

TrainResult train_run(const ExperimentConfig& config, std::uint64_t seed) {
    validate(config);
    const TrainingActivityScope activity;
    const int episodes = resolve_episodes(config);
    const TrainHyper& hyper = config.train;

    Rng env_rng(derive_seed(seed, kEnvStream));
    Rng agent_rng(derive_seed(seed, kAgentStream));
    Rng init_rng(derive_seed(seed, kInitStream));

    auto adapter = make_adapter(config);
    const RunCipher run_cipher(config, seed);
    cipher::Primitive primitive = run_cipher.primitive(derive_seed(seed, kIvStream));

    // Padding exists to block-align plaintext for AES; noop/shuffle see the
    // processed state unmodified.
    const bool pad = cipher::needs_block_alignment(config.scheme.kind);
    auto encode = [&](const pipeline::ProcessedState& state) {
        return primitive.encrypt(pad ? pipeline::apply_padding(state, config.padding)
                                     : state);
    };

    // Probe the input shape once; all states in a run share it.
    cipher::CipherState first = encode(adapter->reset(env_rng));
    const auto codec = InputCodec::probe(
        first, config.env == EnvKind::Gridroom ? net::NetKind::Cnn : net::NetKind::Mlp);

    net::QNetwork<float> online(network_spec(config, codec, adapter->action_count()));
    online.init(init_rng);
    net::QNetwork<float> target = online;
    net::Adam<float> opt;

    ReplayMemory memory(static_cast<std::size_t>(hyper.replay_capacity));
    TrainMetrics metrics;
    metrics.window = hyper.convergence_window;
    metrics.episodes.reserve(static_cast<std::size_t>(episodes));

    std::uint64_t env_steps = 0;
    std::uint64_t train_steps = 0;

    for (int ep = 0; ep < episodes; ++ep) {
        // The probe above already reset the environment for episode 0.
        cipher::CipherState state = ep == 0 ? first : encode(adapter->reset(env_rng));
        double ep_return = 0.0;
        int ep_steps = 0;
        double loss_sum = 0.0;
        int loss_count = 0;
        while (true) {
            const double eps = epsilon_at(env_steps, hyper.epsilon_start,
                                          hyper.epsilon_min,
                                          static_cast<std::uint64_t>(hyper.epsilon_decay_steps));
            const int action = select_action(online, codec, state, eps, agent_rng);
            auto [res, next_plain] = adapter->step(action);
            cipher::CipherState next = encode(next_plain);
            memory.push({std::move(state), action, res.reward, next, res.done});
            state = std::move(next);
            ep_return += res.reward;
            ++ep_steps;
            ++env_steps;
            if (env_steps > static_cast<std::uint64_t>(hyper.warmup_steps)) {
                const auto step_res =
                    train_step(online, target, memory, codec, opt, hyper, agent_rng);
                if (step_res.trained) {
                    ++train_steps;
                    loss_sum += step_res.mean_loss;
                    ++loss_count;
                    maybe_sync_target(online, target, train_steps,
                                      hyper.target_sync_every);
                }
            }
            if (res.done) break;
        }
        EpisodeRecord record;
        record.episode = ep;
        record.steps = ep_steps;
        record.ret = ep_return;
        record.epsilon = epsilon_at(env_steps, hyper.epsilon_start, hyper.epsilon_min,
                                    static_cast<std::uint64_t>(hyper.epsilon_decay_steps));
        record.mean_loss = loss_count > 0 ? loss_sum / loss_count : 0.0;
        metrics.episodes.push_back(record);
    }
    metrics.moving_average = moving_average(metrics.returns(), metrics.window);
    return TrainResult{std::move(metrics), std::move(online), std::move(memory)};
}

env::ReturnStats evaluate_policy(const ExperimentConfig& config, std::uint64_t seed,
                                 int episodes, const ActionSelector& select) {
    validate(config);
    if (episodes < 1) throw UsageError("evaluation needs at least one episode");
    Rng env_rng(derive_seed(seed, kEvalEnvStream));
    auto adapter = make_adapter(config);
    const RunCipher run_cipher(config, seed);
    cipher::Primitive primitive =
        run_cipher.primitive(derive_seed(seed, kEvalIvStream));
    const bool pad = cipher::needs_block_alignment(config.scheme.kind);
    auto encode = [&](const pipeline::ProcessedState& state) {
        return primitive.encrypt(pad ? pipeline::apply_padding(state, config.padding)
                                     : state);
    };

    std::vector<double> returns;
    returns.reserve(static_cast<std::size_t>(episodes));
    for (int ep = 0; ep < episodes; ++ep) {
        cipher::CipherState state = encode(adapter->reset(env_rng));
        double total = 0.0;
        while (true) {
            const int action = select(state);
            auto [res, next_plain] = adapter->step(action);
            state = encode(next_plain);
            total += res.reward;
            if (res.done) break;
        }
        returns.push_back(total);
    }
    return env::return_stats(returns);
}

env::ReturnStats evaluate(net::QNetwork<float>& qnet, const ExperimentConfig& config,
                          std::uint64_t seed, int episodes) {
    const auto codec = InputCodec::probe(
        [&] {
            // Probe with a throwaway state so shape checking matches training.
            Rng probe_rng(derive_seed(seed, kEvalEnvStream));
            auto adapter = make_adapter(config);
            RunCipher run_cipher(config, seed);
            auto primitive = run_cipher.primitive(derive_seed(seed, kEvalIvStream));
            const pipeline::ProcessedState raw = adapter->reset(probe_rng);
            return primitive.encrypt(cipher::needs_block_alignment(config.scheme.kind)
                                         ? pipeline::apply_padding(raw, config.padding)
                                         : raw);
        }(),
        config.env == EnvKind::Gridroom ? net::NetKind::Cnn : net::NetKind::Mlp);
    Rng greedy_rng(0);  // never consulted at epsilon = 0
    return evaluate_policy(config, seed, episodes,
                           [&](const cipher::CipherState& state) {
                               return select_action(qnet, codec, state, 0.0,
                                                    greedy_rng);
                           });
}

}  // namespace esrl::dqn
