#include "esrl/cli/config_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string_view>

namespace esrl::cli {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

// Whole-string numeric parses; trailing garbage is an error, not a warning.
long long parse_int(const std::string& key, std::string_view value) {
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("config key '" + key + "': '" + std::string(value) +
                          "' is not an integer");
    return out;
}

std::uint64_t parse_uint(const std::string& key, std::string_view value) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("config key '" + key + "': '" + std::string(value) +
                          "' is not a non-negative integer");
    return out;
}

double parse_double(const std::string& key, std::string_view value) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("config key '" + key + "': '" + std::string(value) +
                          "' is not a number");
    return out;
}

// Comma-separated list; empty value means an empty list.
template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& key, std::string_view value, Parse parse) {
    std::vector<T> out;
    if (trim(value).empty()) return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = value.find(',', start);
        const std::string_view item =
            trim(value.substr(start, comma == std::string_view::npos
                                         ? std::string_view::npos
                                         : comma - start));
        if (item.empty())
            throw ConfigError("config key '" + key + "': empty list element");
        out.push_back(static_cast<T>(parse(key, item)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T>
std::string format_list(const std::vector<T>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(xs[i]);
    }
    return out;
}

}  // namespace

const char* to_string(env::StartMode mode) {
    return mode == env::StartMode::Fixed ? "fixed" : "random";
}

env::StartMode parse_start_mode(const std::string& name) {
    if (name == "fixed") return env::StartMode::Fixed;
    if (name == "random") return env::StartMode::Random;
    throw ConfigError("unknown start mode '" + name + "'");
}

const char* to_string(pipeline::PaddingMode mode) {
    return mode == pipeline::PaddingMode::Custom ? "custom" : "pkcs7";
}

pipeline::PaddingMode parse_padding_mode(const std::string& name) {
    if (name == "custom") return pipeline::PaddingMode::Custom;
    if (name == "pkcs7") return pipeline::PaddingMode::Pkcs7;
    throw ConfigError("unknown padding mode '" + name + "'");
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig config;

    // One setter per key; the table doubles as the authoritative key list.
    using Setter = std::function<void(const std::string&, std::string_view)>;
    const std::map<std::string, Setter> setters = {
        {"env.kind", [&](const std::string&, std::string_view v) {
             config.env = parse_env_kind(std::string(v)); }},
        {"env.size", [&](const std::string& k, std::string_view v) {
             config.env_size = static_cast<int>(parse_int(k, v)); }},
        {"env.start_mode", [&](const std::string&, std::string_view v) {
             config.start_mode = parse_start_mode(std::string(v)); }},
        {"env.px_per_tile", [&](const std::string& k, std::string_view v) {
             config.px_per_tile = static_cast<int>(parse_int(k, v)); }},
        {"scheme.kind", [&](const std::string&, std::string_view v) {
             config.scheme.kind = cipher::parse_scheme_kind(std::string(v)); }},
        {"scheme.key_len", [&](const std::string& k, std::string_view v) {
             config.scheme.key_len = static_cast<int>(parse_int(k, v)); }},
        {"scheme.shuffle_seed", [&](const std::string& k, std::string_view v) {
             config.scheme.shuffle_seed = parse_uint(k, v); }},
        {"padding.mode", [&](const std::string&, std::string_view v) {
             config.padding.mode = parse_padding_mode(std::string(v)); }},
        {"padding.block_size", [&](const std::string& k, std::string_view v) {
             config.padding.block_size = static_cast<int>(parse_int(k, v)); }},
        {"padding.pad_intensity", [&](const std::string& k, std::string_view v) {
             const long long x = parse_int(k, v);
             if (x < 0 || x > 255)
                 throw ConfigError("config key '" + k + "': must be in [0, 255]");
             config.padding.pad_intensity = static_cast<std::uint8_t>(x); }},
        {"train.gamma", [&](const std::string& k, std::string_view v) {
             config.train.gamma = parse_double(k, v); }},
        {"train.replay_capacity", [&](const std::string& k, std::string_view v) {
             config.train.replay_capacity = static_cast<int>(parse_int(k, v)); }},
        {"train.batch_size", [&](const std::string& k, std::string_view v) {
             config.train.batch_size = static_cast<int>(parse_int(k, v)); }},
        {"train.lr", [&](const std::string& k, std::string_view v) {
             config.train.lr = parse_double(k, v); }},
        {"train.epsilon_start", [&](const std::string& k, std::string_view v) {
             config.train.epsilon_start = parse_double(k, v); }},
        {"train.epsilon_min", [&](const std::string& k, std::string_view v) {
             config.train.epsilon_min = parse_double(k, v); }},
        {"train.epsilon_decay_steps", [&](const std::string& k, std::string_view v) {
             config.train.epsilon_decay_steps = static_cast<int>(parse_int(k, v)); }},
        {"train.target_sync_every", [&](const std::string& k, std::string_view v) {
             config.train.target_sync_every = static_cast<int>(parse_int(k, v)); }},
        {"train.warmup_steps", [&](const std::string& k, std::string_view v) {
             config.train.warmup_steps = static_cast<int>(parse_int(k, v)); }},
        {"train.huber_delta", [&](const std::string& k, std::string_view v) {
             config.train.huber_delta = parse_double(k, v); }},
        {"train.convergence_window", [&](const std::string& k, std::string_view v) {
             config.train.convergence_window = static_cast<int>(parse_int(k, v)); }},
        {"net.conv_channels", [&](const std::string& k, std::string_view v) {
             config.net_conv_channels = parse_list<int>(k, v, parse_int); }},
        {"net.hidden", [&](const std::string& k, std::string_view v) {
             config.net_hidden = parse_list<int>(k, v, parse_int); }},
        {"run.seeds", [&](const std::string& k, std::string_view v) {
             config.seeds = parse_list<std::uint64_t>(k, v, parse_uint); }},
        {"run.episodes", [&](const std::string& k, std::string_view v) {
             config.episodes = static_cast<int>(parse_int(k, v)); }},
        {"run.out_dir", [&](const std::string&, std::string_view v) {
             config.out_dir = std::string(v); }},
    };

    std::map<std::string, int> seen;
    std::istringstream lines(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(lines, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + std::string(line) + "'");
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        const auto setter = setters.find(key);
        if (setter == setters.end())
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
        if (++seen[key] > 1)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": duplicate key '" + key + "'");
        setter->second(key, value);
    }
    return config;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

std::string serialize_config(const ExperimentConfig& config) {
    std::ostringstream out;
    out << "env.kind = " << esrl::to_string(config.env) << "\n"
        << "env.size = " << config.env_size << "\n"
        << "env.start_mode = " << to_string(config.start_mode) << "\n"
        << "env.px_per_tile = " << config.px_per_tile << "\n"
        << "scheme.kind = " << cipher::to_string(config.scheme.kind) << "\n"
        << "scheme.key_len = " << config.scheme.key_len << "\n"
        << "scheme.shuffle_seed = " << config.scheme.shuffle_seed << "\n"
        << "padding.mode = " << to_string(config.padding.mode) << "\n"
        << "padding.block_size = " << config.padding.block_size << "\n"
        << "padding.pad_intensity = " << int(config.padding.pad_intensity) << "\n"
        << "train.gamma = " << format_double(config.train.gamma) << "\n"
        << "train.replay_capacity = " << config.train.replay_capacity << "\n"
        << "train.batch_size = " << config.train.batch_size << "\n"
        << "train.lr = " << format_double(config.train.lr) << "\n"
        << "train.epsilon_start = " << format_double(config.train.epsilon_start) << "\n"
        << "train.epsilon_min = " << format_double(config.train.epsilon_min) << "\n"
        << "train.epsilon_decay_steps = " << config.train.epsilon_decay_steps << "\n"
        << "train.target_sync_every = " << config.train.target_sync_every << "\n"
        << "train.warmup_steps = " << config.train.warmup_steps << "\n"
        << "train.huber_delta = " << format_double(config.train.huber_delta) << "\n"
        << "train.convergence_window = " << config.train.convergence_window << "\n"
        << "net.conv_channels = " << format_list(config.net_conv_channels) << "\n"
        << "net.hidden = " << format_list(config.net_hidden) << "\n"
        << "run.seeds = " << format_list(config.seeds) << "\n"
        << "run.episodes = " << config.episodes << "\n"
        << "run.out_dir = " << config.out_dir << "\n";
    return out.str();
}

}  // namespace esrl::cli
