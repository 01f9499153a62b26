// Experiment runner: seeded training runs, greedy evaluation, encryption
// microbenchmarks, and tabulation of finished runs. Exit codes: 0 success,
// 2 configuration error, 3 runtime error.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "esrl/bench/cryptobench.hpp"
#include "esrl/cli/config_io.hpp"
#include "esrl/cli/metrics_io.hpp"
#include "esrl/dqn/trainer.hpp"
#include "esrl/net/serialize.hpp"

namespace fs = std::filesystem;
using namespace esrl;

namespace {

struct TrainArgs {
    std::string config_path;
    std::uint64_t seed_offset = 0;
    int jobs = 1;
    std::string out_dir;  // overrides run.out_dir when non-empty
};

// One entry per seed, filled by whichever thread picks the seed up. Parallel
// and sequential execution produce identical files: every run is a pure
// function of (config, seed) and writes only its own seed's outputs.
void run_train(const TrainArgs& args) {
    ExperimentConfig config = cli::load_config_file(args.config_path);
    if (!args.out_dir.empty()) config.out_dir = args.out_dir;
    for (auto& seed : config.seeds) seed += args.seed_offset;
    validate(config);
    if (args.jobs < 1) throw ConfigError("--jobs must be >= 1");

    fs::create_directories(config.out_dir);
    cli::write_text_file((fs::path(config.out_dir) / "config.txt").string(),
                         cli::serialize_config(config));

    const int n = static_cast<int>(config.seeds.size());
    std::vector<cli::SeedMetrics> runs(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(n));
    std::atomic<int> next{0};

    auto worker = [&] {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            const std::uint64_t seed = config.seeds[static_cast<std::size_t>(i)];
            try {
                dqn::TrainResult result = dqn::train_run(config, seed);
                const fs::path dir(config.out_dir);
                cli::write_text_file((dir / cli::seed_csv_name(seed)).string(),
                                     cli::metrics_csv(seed, result.metrics.episodes));
                net::save_network(result.qnet, (dir / cli::seed_net_name(seed)).string());
                runs[static_cast<std::size_t>(i)] = {seed, result.metrics.episodes};
            } catch (...) {
                failures[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };

    const int threads = std::min(args.jobs, n);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);

    const auto summary = cli::summarize(runs, config.train.convergence_window);
    const std::string text = cli::summary_csv(summary);
    cli::write_text_file((fs::path(config.out_dir) / "summary.csv").string(), text);
    std::fputs(text.c_str(), stdout);
}

void run_eval(const std::string& run_dir, std::uint64_t seed, int episodes) {
    const fs::path dir(run_dir);
    const ExperimentConfig config = cli::load_config_file((dir / "config.txt").string());
    if (seed == 0) {
        if (config.seeds.empty()) throw ConfigError("run config lists no seeds");
        seed = config.seeds.front();
    }
    net::QNetwork<float> qnet =
        net::load_network((dir / cli::seed_net_name(seed)).string());
    const env::ReturnStats stats = dqn::evaluate(qnet, config, seed, episodes);
    std::printf("seed,episodes,mean_return,std_return\n%llu,%d,%.6f,%.6f\n",
                static_cast<unsigned long long>(seed), stats.episodes, stats.mean,
                stats.stddev.value_or(0.0));
}

void run_bench(const std::vector<int>& sizes, const std::vector<std::string>& schemes,
               int reps, const std::string& out_path) {
    std::vector<bench::BenchResult> results;
    for (int size : sizes) {
        for (const auto& name : schemes) {
            cipher::SchemeSpec spec;
            spec.kind = cipher::parse_scheme_kind(name);
            results.push_back(bench::bench_encrypt(spec, size, reps));
        }
    }
    const std::string report = bench::bench_report(std::move(results));
    if (!out_path.empty()) cli::write_text_file(out_path, report);
    std::fputs(report.c_str(), stdout);
}

// Flat ablation table over finished run directories; one row per run, all
// config axes present so any pivot (scheme x size, key x padding, ...) can be
// cut from it.
void run_table(const std::vector<std::string>& run_dirs) {
    std::string out =
        "env,size,start_mode,scheme,key_len,padding,episodes,seeds,"
        "mean_return,std_return\n";
    for (const auto& dir_name : run_dirs) {
        const fs::path dir(dir_name);
        const ExperimentConfig config =
            cli::load_config_file((dir / "config.txt").string());
        std::vector<cli::SeedMetrics> runs;
        for (std::uint64_t seed : config.seeds)
            runs.push_back(cli::read_metrics_file((dir / cli::seed_csv_name(seed)).string()));
        const auto summary = cli::summarize(runs, config.train.convergence_window);
        const bool padded = cipher::needs_block_alignment(config.scheme.kind);
        char line[256];
        std::snprintf(line, sizeof line, "%s,%d,%s,%s,%d,%s,%d,%d,%.6f,%.6f\n",
                      to_string(config.env), config.env_size,
                      cli::to_string(config.start_mode),
                      cipher::to_string(config.scheme.kind),
                      padded ? config.scheme.key_len : 0,
                      padded ? cli::to_string(config.padding.mode) : "none",
                      resolve_episodes(config), static_cast<int>(config.seeds.size()),
                      summary.mean, summary.stddev);
        out += line;
    }
    std::fputs(out.c_str(), stdout);
}

void run_curves(const std::string& run_dir, int window) {
    const fs::path dir(run_dir);
    const ExperimentConfig config = cli::load_config_file((dir / "config.txt").string());
    for (std::uint64_t seed : config.seeds) {
        const auto run = cli::read_metrics_file((dir / cli::seed_csv_name(seed)).string());
        const fs::path out = dir / ("curve_seed_" + std::to_string(seed) + ".csv");
        cli::write_text_file(out.string(), cli::curve_csv(run, window));
        std::printf("%s\n", out.string().c_str());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Encrypted-state RL experiment runner"};
    app.require_subcommand(1);

    TrainArgs train_args;
    auto* train = app.add_subcommand("train", "Run seeded training runs");
    train->add_option("--config", train_args.config_path, "Config file")->required();
    train->add_option("--seed-offset", train_args.seed_offset, "Shift every seed by N");
    train->add_option("--jobs", train_args.jobs, "Parallel seed jobs");
    train->add_option("--out", train_args.out_dir, "Override run.out_dir");

    std::string eval_dir;
    std::uint64_t eval_seed = 0;
    int eval_episodes = 100;
    auto* eval = app.add_subcommand("eval", "Greedy evaluation of a trained seed");
    eval->add_option("--run", eval_dir, "Run directory")->required();
    eval->add_option("--seed", eval_seed, "Seed to evaluate (default: first)");
    eval->add_option("--episodes", eval_episodes, "Evaluation episodes");

    std::vector<int> bench_sizes{5, 6, 8, 16};
    std::vector<std::string> bench_schemes{"noop", "shuffle", "aes_ecb", "aes_cbc"};
    int bench_reps = bench::kDefaultReps;
    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "Per-state encryption latency");
    bench->add_option("--sizes", bench_sizes, "Grid sizes");
    bench->add_option("--schemes", bench_schemes, "Schemes to time");
    bench->add_option("--reps", bench_reps, "Timed repetitions per scheme/size");
    bench->add_option("--out", bench_out, "Also write the report to this file");

    std::vector<std::string> table_dirs;
    auto* table = app.add_subcommand("table", "Aggregate finished runs into a table");
    table->add_option("dirs", table_dirs, "Run directories")->required();

    std::string curves_dir;
    int curves_window = 100;
    auto* curves = app.add_subcommand("curves", "Emit learning-curve CSVs for a run");
    curves->add_option("--run", curves_dir, "Run directory")->required();
    curves->add_option("--window", curves_window, "Trailing average window");

    try {
        app.parse(argc, argv);
        if (train->parsed()) run_train(train_args);
        if (eval->parsed()) run_eval(eval_dir, eval_seed, eval_episodes);
        if (bench->parsed()) run_bench(bench_sizes, bench_schemes, bench_reps, bench_out);
        if (table->parsed()) run_table(table_dirs);
        if (curves->parsed()) run_curves(curves_dir, curves_window);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
