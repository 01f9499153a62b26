#include "esrl/config.hpp"

#include <set>

namespace esrl {

const char* to_string(EnvKind kind) {
    switch (kind) {
        case EnvKind::Gridroom: return "gridroom";
        case EnvKind::Landerlite: return "landerlite";
    }
    throw UsageError("unknown env kind");
}

EnvKind parse_env_kind(const std::string& name) {
    if (name == "gridroom") return EnvKind::Gridroom;
    if (name == "landerlite") return EnvKind::Landerlite;
    throw ConfigError("unknown env kind '" + name +
                      "' (expected gridroom or landerlite)");
}

int default_episodes(EnvKind env, int env_size) {
    if (env == EnvKind::Landerlite) return 2000;
    switch (env_size) {
        case 5:
        case 6: return 2000;
        case 8: return 5000;
        case 16: return 15000;
        default: throw ConfigError("env.size must be one of 5, 6, 8, 16");
    }
}

int resolve_episodes(const ExperimentConfig& config) {
    return config.episodes > 0 ? config.episodes
                               : default_episodes(config.env, config.env_size);
}

void validate(const ExperimentConfig& config) {
    if (config.env == EnvKind::Gridroom) {
        if (config.env_size != 5 && config.env_size != 6 && config.env_size != 8 &&
            config.env_size != 16)
            throw ConfigError("env.size must be one of 5, 6, 8, 16");
        if (config.px_per_tile < 1)
            throw ConfigError("env.px_per_tile must be positive");
    }
    if (config.scheme.kind == cipher::SchemeKind::AesEcb ||
        config.scheme.kind == cipher::SchemeKind::AesCbc) {
        if (config.scheme.key_len != 16 && config.scheme.key_len != 24 &&
            config.scheme.key_len != 32)
            throw ConfigError("scheme.key_len must be 16, 24, or 32");
    }
    if (config.padding.block_size < 1 || config.padding.block_size > 255)
        throw ConfigError("padding.block_size must be in [1, 255]");
    const TrainHyper& t = config.train;
    if (!(t.gamma >= 0.0 && t.gamma < 1.0))
        throw ConfigError("train.gamma must be in [0, 1)");
    if (t.batch_size < 1) throw ConfigError("train.batch_size must be positive");
    if (t.replay_capacity < t.batch_size)
        throw ConfigError("train.replay_capacity must be >= train.batch_size");
    if (!(t.lr > 0.0)) throw ConfigError("train.lr must be positive");
    if (t.epsilon_start < 0.0 || t.epsilon_start > 1.0)
        throw ConfigError("train.epsilon_start must be in [0, 1]");
    if (t.epsilon_min < 0.0 || t.epsilon_min > t.epsilon_start)
        throw ConfigError("train.epsilon_min must be in [0, epsilon_start]");
    if (t.epsilon_decay_steps < 1)
        throw ConfigError("train.epsilon_decay_steps must be positive");
    if (t.target_sync_every < 1)
        throw ConfigError("train.target_sync_every must be positive");
    if (t.warmup_steps < 0) throw ConfigError("train.warmup_steps must be >= 0");
    if (!(t.huber_delta > 0.0)) throw ConfigError("train.huber_delta must be positive");
    if (t.convergence_window < 1)
        throw ConfigError("train.convergence_window must be positive");
    for (int ch : config.net_conv_channels)
        if (ch < 1) throw ConfigError("net.conv_channels entries must be positive");
    for (int width : config.net_hidden)
        if (width < 1) throw ConfigError("net.hidden entries must be positive");
    if (config.seeds.empty()) throw ConfigError("run.seeds must be non-empty");
    if (std::set<std::uint64_t>(config.seeds.begin(), config.seeds.end()).size() !=
        config.seeds.size())
        throw ConfigError("run.seeds must be distinct");
    if (config.episodes < 0) throw ConfigError("run.episodes must be >= 0");
    if (config.episodes == 0) default_episodes(config.env, config.env_size);
}

}  // namespace esrl
