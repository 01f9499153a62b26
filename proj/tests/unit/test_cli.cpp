#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "esrl/cli/config_io.hpp"
#include "esrl/cli/metrics_io.hpp"

using namespace esrl;
using namespace esrl::cli;

namespace {

// Asserts that parsing `text` raises ConfigError whose message mentions
// `needle` (key name or line number), so errors stay actionable.
void expect_config_error(const std::string& text, const std::string& needle) {
    try {
        parse_config_text(text);
        FAIL_CHECK("expected ConfigError for: " << text);
    } catch (const ConfigError& e) {
        CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                      "message '" << e.what() << "' lacks '" << needle << "'");
    }
}

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("default config serializes and parses back unchanged") {
    const ExperimentConfig config;
    const std::string text = serialize_config(config);
    CHECK(text.find("env.kind = gridroom\n") != std::string::npos);
    CHECK(text.find("scheme.kind = noop\n") != std::string::npos);
    CHECK(text.find("padding.mode = custom\n") != std::string::npos);
    CHECK(text.find("run.seeds = 1,2,3,4,5,6,7,8,9,10\n") != std::string::npos);
    CHECK(parse_config_text(text) == config);
}

TEST_CASE("a fully customized config round-trips") {
    ExperimentConfig config;
    config.env = EnvKind::Landerlite;
    config.env_size = 8;
    config.start_mode = env::StartMode::Random;
    config.px_per_tile = 4;
    config.scheme.kind = cipher::SchemeKind::AesCbc;
    config.scheme.key_len = 24;
    config.scheme.shuffle_seed = 7;
    config.padding.mode = pipeline::PaddingMode::Pkcs7;
    config.padding.block_size = 32;
    config.padding.pad_intensity = 7;
    config.train.gamma = 0.95;
    config.train.replay_capacity = 1000;
    config.train.batch_size = 16;
    config.train.lr = 0.01;
    config.train.epsilon_start = 0.9;
    config.train.epsilon_min = 0.1;
    config.train.epsilon_decay_steps = 2000;
    config.train.target_sync_every = 100;
    config.train.warmup_steps = 10;
    config.train.huber_delta = 2.0;
    config.train.convergence_window = 50;
    config.net_conv_channels = {8, 16};
    config.net_hidden = {32};
    config.seeds = {10, 20, 30};
    config.episodes = 500;
    config.out_dir = "runs/custom";
    CHECK(parse_config_text(serialize_config(config)) == config);

    // Empty lists survive the trip too (they select the built-in defaults).
    config.net_conv_channels = {};
    config.net_hidden = {};
    CHECK(parse_config_text(serialize_config(config)) == config);
}

TEST_CASE("config text tolerates comments, blanks and loose spacing") {
    const std::string text =
        "# experiment preset\n"
        "\n"
        "   env.size   =   8   \n"
        "\tscheme.kind=aes_ecb\r\n"
        "# trailing comment\n";
    const auto config = parse_config_text(text);
    CHECK(config.env_size == 8);
    CHECK(config.scheme.kind == cipher::SchemeKind::AesEcb);
    // Untouched keys keep their defaults.
    CHECK(config.train.gamma == 0.99);
    CHECK(config.out_dir == "runs");
}

TEST_CASE("config parse errors name the key or line") {
    expect_config_error("env.sizee = 5\n", "env.sizee");
    expect_config_error("env.size = 5\nenv.size = 6\n", "duplicate");
    expect_config_error("env.size = 5\nenv.size = 6\n", "line 2");
    expect_config_error("env.size = five\n", "env.size");
    expect_config_error("train.gamma = fast\n", "train.gamma");
    expect_config_error("scheme.kind = rot13\n", "rot13");
    expect_config_error("env.start_mode = middle\n", "middle");
    expect_config_error("padding.mode = zeros\n", "zeros");
    expect_config_error("run.seeds = 1,,2\n", "run.seeds");
    expect_config_error("env.size 5\n", "line 1");
    expect_config_error("padding.pad_intensity = 256\n", "[0, 255]");
    expect_config_error("padding.pad_intensity = -1\n", "[0, 255]");
    expect_config_error("run.seeds = -3\n", "run.seeds");
}

TEST_CASE("enum text mappings") {
    CHECK(std::string(to_string(env::StartMode::Fixed)) == "fixed");
    CHECK(std::string(to_string(env::StartMode::Random)) == "random");
    CHECK(parse_start_mode("fixed") == env::StartMode::Fixed);
    CHECK(parse_start_mode("random") == env::StartMode::Random);
    CHECK_THROWS_AS(parse_start_mode("center"), ConfigError);
    CHECK(std::string(to_string(pipeline::PaddingMode::Custom)) == "custom");
    CHECK(std::string(to_string(pipeline::PaddingMode::Pkcs7)) == "pkcs7");
    CHECK(parse_padding_mode("pkcs7") == pipeline::PaddingMode::Pkcs7);
    CHECK_THROWS_AS(parse_padding_mode("zero"), ConfigError);
}

TEST_CASE("config files load from disk and missing files raise DataError") {
    const auto path = temp_file("cli_config.txt");
    ExperimentConfig config;
    config.episodes = 77;
    write_text_file(path.string(), serialize_config(config));
    CHECK(load_config_file(path.string()) == config);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_config_file(path.string()), DataError);
}

TEST_CASE("metrics CSV round-trips through disk") {
    std::vector<dqn::EpisodeRecord> episodes;
    dqn::EpisodeRecord a;
    a.episode = 0;
    a.steps = 12;
    a.ret = 0.5;
    a.epsilon = 1.0;
    a.mean_loss = 0.0;
    dqn::EpisodeRecord b;
    b.episode = 1;
    b.steps = 30;
    b.ret = 0.955;
    b.epsilon = 0.9;
    b.mean_loss = 0.0123;
    episodes = {a, b};

    const std::string csv = metrics_csv(5, episodes);
    CHECK(csv ==
          "seed,episode,steps,return,epsilon,mean_loss\n"
          "5,0,12,0.500000,1.000000,0.000000\n"
          "5,1,30,0.955000,0.900000,0.012300\n");

    const auto path = temp_file("cli_metrics.csv");
    write_text_file(path.string(), csv);
    const auto run = read_metrics_file(path.string());
    CHECK(run.seed == 5);
    REQUIRE(run.episodes.size() == 2);
    // All values in this fixture are exact at 6 decimals, so the parsed
    // records compare equal, not merely close.
    CHECK(run.episodes[0] == a);
    CHECK(run.episodes[1] == b);
    std::filesystem::remove(path);
}

TEST_CASE("malformed metrics files raise DataError") {
    const auto path = temp_file("cli_metrics_bad.csv");
    auto expect_data_error = [&](const std::string& content) {
        write_text_file(path.string(), content);
        CHECK_THROWS_AS(read_metrics_file(path.string()), DataError);
    };
    const std::string header = "seed,episode,steps,return,epsilon,mean_loss\n";
    expect_data_error("");                                       // empty
    expect_data_error("episode,steps\n");                        // bad header
    expect_data_error(header);                                   // no rows
    expect_data_error(header + "5,0,12,0.5,1.0\n");              // 5 fields
    expect_data_error(header + "5,0,12,abc,1.0,0.0\n");          // non-numeric
    expect_data_error(header + "5,0,12,0.5,1.0,0.0\n5,2,9,0.5,1.0,0.0\n");  // gap
    expect_data_error(header + "5,0,12,0.5,1.0,0.0\n6,1,9,0.5,1.0,0.0\n");  // seeds
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_metrics_file(path.string()), DataError);  // missing
}

TEST_CASE("summaries aggregate final-window means across seeds") {
    auto run_with = [](std::uint64_t seed, std::vector<double> returns) {
        SeedMetrics run;
        run.seed = seed;
        for (std::size_t i = 0; i < returns.size(); ++i) {
            dqn::EpisodeRecord e;
            e.episode = static_cast<int>(i);
            e.ret = returns[i];
            run.episodes.push_back(e);
        }
        return run;
    };
    const std::vector<SeedMetrics> runs{run_with(1, {0.0, 0.0, 1.0, 1.0}),
                                        run_with(2, {0.5, 0.5})};
    const auto summary = summarize(runs, 2);
    CHECK(summary.window == 2);
    CHECK(summary.seeds == std::vector<std::uint64_t>{1, 2});
    REQUIRE(summary.final_means.size() == 2);
    CHECK(summary.final_means[0] == doctest::Approx(1.0));
    CHECK(summary.final_means[1] == doctest::Approx(0.5));
    CHECK(summary.mean == doctest::Approx(0.75));
    CHECK(summary.stddev == doctest::Approx(0.3535533905932738));

    CHECK(summary_csv(summary) ==
          "seed,final_mean_return\n"
          "1,1.000000\n"
          "2,0.500000\n"
          "all,0.750000\n"
          "stddev,0.353553\n");

    // Window wider than a run averages everything it has.
    const auto wide = summarize(runs, 10);
    CHECK(wide.final_means[0] == doctest::Approx(0.5));

    const auto single = summarize({runs[0]}, 2);
    CHECK(single.stddev == 0.0);

    CHECK_THROWS_AS(summarize({}, 2), UsageError);
    CHECK_THROWS_AS(summarize(runs, 0), ConfigError);
}

TEST_CASE("curve CSV reports cumulative env steps and trailing means") {
    SeedMetrics run;
    run.seed = 3;
    const int steps[3] = {10, 20, 5};
    const double rets[3] = {1.0, 0.0, 0.5};
    for (int i = 0; i < 3; ++i) {
        dqn::EpisodeRecord e;
        e.episode = i;
        e.steps = steps[i];
        e.ret = rets[i];
        run.episodes.push_back(e);
    }
    CHECK(curve_csv(run, 2) ==
          "episode,env_step,return,windowed_return\n"
          "0,10,1.000000,1.000000\n"
          "1,30,0.000000,0.500000\n"
          "2,35,0.500000,0.250000\n");
    CHECK_THROWS_AS(curve_csv(run, 0), ConfigError);
}

TEST_CASE("seed file names are stable") {
    CHECK(seed_csv_name(7) == "seed_7.csv");
    CHECK(seed_net_name(12345678901234ull) == "seed_12345678901234.net");
}
