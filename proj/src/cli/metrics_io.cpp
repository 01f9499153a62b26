#include "esrl/cli/metrics_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace esrl::cli {
namespace {

double parse_cell(const std::string& path, int line_no, std::string_view cell) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw DataError(path + ":" + std::to_string(line_no) +
                        ": malformed numeric cell '" + std::string(cell) + "'");
    return out;
}

std::vector<std::string_view> split_row(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

std::string seed_csv_name(std::uint64_t seed) {
    return "seed_" + std::to_string(seed) + ".csv";
}

std::string seed_net_name(std::uint64_t seed) {
    return "seed_" + std::to_string(seed) + ".net";
}

std::string metrics_csv(std::uint64_t seed,
                        const std::vector<dqn::EpisodeRecord>& episodes) {
    std::string out = std::string(kMetricsHeader) + "\n";
    char line[160];
    for (const auto& e : episodes) {
        std::snprintf(line, sizeof line, "%llu,%d,%d,%.6f,%.6f,%.6f\n",
                      static_cast<unsigned long long>(seed), e.episode, e.steps,
                      e.ret, e.epsilon, e.mean_loss);
        out += line;
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw DataError("short write to '" + path + "'");
}

SeedMetrics read_metrics_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read metrics file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    // getline strips '\n' but not a stray '\r'.
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kMetricsHeader)
        throw DataError(path + ": bad header '" + line + "'");

    SeedMetrics run;
    int line_no = 1;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_row(line);
        if (cells.size() != 6)
            throw DataError(path + ":" + std::to_string(line_no) + ": expected 6 fields, got " +
                            std::to_string(cells.size()));
        const auto seed = static_cast<std::uint64_t>(parse_cell(path, line_no, cells[0]));
        if (first) {
            run.seed = seed;
            first = false;
        } else if (seed != run.seed) {
            throw DataError(path + ":" + std::to_string(line_no) + ": mixed seeds");
        }
        dqn::EpisodeRecord e;
        e.episode = static_cast<int>(parse_cell(path, line_no, cells[1]));
        e.steps = static_cast<int>(parse_cell(path, line_no, cells[2]));
        e.ret = parse_cell(path, line_no, cells[3]);
        e.epsilon = parse_cell(path, line_no, cells[4]);
        e.mean_loss = parse_cell(path, line_no, cells[5]);
        if (e.episode != static_cast<int>(run.episodes.size()))
            throw DataError(path + ":" + std::to_string(line_no) +
                            ": episodes out of order");
        run.episodes.push_back(e);
    }
    if (first) throw DataError(path + ": no episode rows");
    return run;
}

RunSummary summarize(const std::vector<SeedMetrics>& runs, int window) {
    if (runs.empty()) throw UsageError("summarize needs at least one run");
    if (window < 1) throw ConfigError("summary window must be >= 1");
    RunSummary summary;
    summary.window = window;
    for (const auto& run : runs) {
        const auto& eps = run.episodes;
        const std::size_t n = eps.size();
        const std::size_t take = std::min<std::size_t>(n, static_cast<std::size_t>(window));
        double sum = 0.0;
        for (std::size_t i = n - take; i < n; ++i) sum += eps[i].ret;
        summary.seeds.push_back(run.seed);
        summary.final_means.push_back(take ? sum / static_cast<double>(take) : 0.0);
    }
    double sum = 0.0;
    for (double m : summary.final_means) sum += m;
    summary.mean = sum / static_cast<double>(summary.final_means.size());
    double ss = 0.0;
    for (double m : summary.final_means) ss += (m - summary.mean) * (m - summary.mean);
    summary.stddev = summary.final_means.size() >= 2
                         ? std::sqrt(ss / static_cast<double>(summary.final_means.size() - 1))
                         : 0.0;
    return summary;
}

std::string summary_csv(const RunSummary& summary) {
    std::string out = "seed,final_mean_return\n";
    char line[80];
    for (std::size_t i = 0; i < summary.seeds.size(); ++i) {
        std::snprintf(line, sizeof line, "%llu,%.6f\n",
                      static_cast<unsigned long long>(summary.seeds[i]),
                      summary.final_means[i]);
        out += line;
    }
    std::snprintf(line, sizeof line, "all,%.6f\nstddev,%.6f\n", summary.mean,
                  summary.stddev);
    out += line;
    return out;
}

std::string curve_csv(const SeedMetrics& run, int window) {
    if (window < 1) throw ConfigError("curve window must be >= 1");
    std::string out = "episode,env_step,return,windowed_return\n";
    char line[120];
    double window_sum = 0.0;
    long long env_step = 0;
    for (std::size_t i = 0; i < run.episodes.size(); ++i) {
        const auto& e = run.episodes[i];
        env_step += e.steps;
        window_sum += e.ret;
        if (i >= static_cast<std::size_t>(window))
            window_sum -= run.episodes[i - window].ret;
        const auto have = std::min<std::size_t>(i + 1, static_cast<std::size_t>(window));
        std::snprintf(line, sizeof line, "%d,%lld,%.6f,%.6f\n", e.episode, env_step,
                      e.ret, window_sum / static_cast<double>(have));
        out += line;
    }
    return out;
}

}  // namespace esrl::cli
