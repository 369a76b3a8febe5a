#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "documint/bench.hpp"
#include "documint/embedding.hpp"
#include "documint/errors.hpp"
#include "documint/metrics.hpp"
#include "documint/miner.hpp"
#include "documint/util.hpp"
#include "json.hpp"

namespace {

namespace dm = documint;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitUsage = 2;

struct MineOptions {
    std::string manifest;
    std::string out;
    dm::miner::Thresholds thresholds;
    bool include_methods = true;
    bool include_nested = true;
    std::size_t min_chars = 1;
    std::vector<std::string> excludes;
    int threads = 0;
};

int run_mine(const MineOptions& opt) {
    std::vector<dm::miner::RepoMeta> repos = dm::miner::load_manifest(opt.manifest);
    fs::path manifest_dir = fs::path(opt.manifest).parent_path();

    std::vector<dm::miner::CorpusSample> samples;
    dm::miner::MiningStats stats;
    std::size_t accepted = 0;
    for (const auto& repo : repos) {
        if (auto reason = dm::miner::filter_repo(repo, opt.thresholds)) {
            dm::util::log_info("repo \"" + repo.repo_id + "\" rejected: " + *reason);
            continue;
        }
        ++accepted;
        fs::path root(repo.root_path);
        if (root.is_relative()) root = manifest_dir / root;

        dm::miner::MinerConfig config;
        config.include_methods = opt.include_methods;
        config.include_nested = opt.include_nested;
        config.min_chars = opt.min_chars;
        config.exclude_globs = opt.excludes;
        config.threads = opt.threads;
        config.repo_id = repo.repo_id;

        dm::miner::MiningResult result = dm::miner::mine_tree(root.string(), config);
        dm::util::log_info("repo \"" + repo.repo_id + "\": " +
                           std::to_string(result.samples.size()) + " samples from " +
                           std::to_string(result.stats.files_seen) + " files");
        stats.files_seen += result.stats.files_seen;
        stats.files_parsed += result.stats.files_parsed;
        stats.parse_failures += result.stats.parse_failures;
        stats.functions_seen += result.stats.functions_seen;
        stats.functions_with_docstring += result.stats.functions_with_docstring;
        stats.filtered_by_config += result.stats.filtered_by_config;
        stats.duplicates_removed += result.stats.duplicates_removed;
        for (auto& sample : result.samples) samples.push_back(std::move(sample));
    }
    // Cross-repo exact duplicates collapse too.
    stats.duplicates_removed += dm::miner::dedup_samples(samples);
    stats.samples_exported = samples.size();

    if (stats.files_seen > 0 && stats.files_parsed == 0) {
        throw dm::WalkError("every discovered file failed to parse; refusing to write an "
                            "empty corpus for " + std::to_string(stats.files_seen) + " files");
    }

    std::size_t bytes = dm::miner::export_alpaca(samples, opt.out);
    dm::miner::write_stats(stats, opt.out + ".stats.json");
    dm::util::log_info("wrote " + std::to_string(samples.size()) + " samples (" +
                       std::to_string(bytes) + " bytes) from " + std::to_string(accepted) +
                       " accepted repos to " + opt.out);
    return kExitOk;
}

struct BenchOptions {
    std::string functions;
    std::string pregenerated;
    std::string model_url;
    std::string model_id;
    std::string embedder = "builtin";
    std::string embed_url;
    std::size_t dimension = 256;
    long timeout_ms = 30000;
    std::string out;
};

std::unique_ptr<dm::embed::Embedder> make_embedder_from(const std::string& kind,
                                                        const std::string& embed_url,
                                                        std::size_t dimension,
                                                        long timeout_ms) {
    dm::embed::ProviderConfig config;
    if (kind == "remote") {
        if (embed_url.empty()) {
            throw CLI::ValidationError(
                "--embedder remote requires --embed-url or DOCUMINT_EMBED_URL");
        }
        config.kind = dm::embed::ProviderConfig::Kind::remote;
        config.endpoint_url = embed_url;
        config.timeout = std::chrono::milliseconds(timeout_ms);
    } else {
        config.kind = dm::embed::ProviderConfig::Kind::builtin_hash;
        config.dimension = dimension;
    }
    return dm::embed::make_embedder(config);
}

int run_bench(const BenchOptions& opt) {
    std::vector<dm::bench::FunctionTask> tasks = dm::bench::load_function_set(opt.functions);

    std::vector<dm::bench::GenerationRecord> records;
    if (!opt.pregenerated.empty()) {
        records = dm::bench::load_pregenerated(opt.pregenerated, tasks);
    } else {
        records = dm::bench::collect_generations(tasks, opt.model_url, opt.model_id,
                                                 std::chrono::milliseconds(opt.timeout_ms));
    }

    auto embedder =
        make_embedder_from(opt.embedder, opt.embed_url, opt.dimension, opt.timeout_ms);
    dm::bench::RunScore score = dm::bench::score_run(records, tasks, *embedder);
    dm::bench::write_run_score(score, opt.out);
    dm::util::log_info("scored " + std::to_string(score.per_task.size()) + " tasks for model \"" +
                       score.model_id + "\" into " + opt.out);
    return kExitOk;
}

dm::bench::ReportFormat parse_format(const std::string& name) {
    return name == "csv" ? dm::bench::ReportFormat::csv : dm::bench::ReportFormat::md;
}

int run_compare(const std::string& base_path, const std::string& tuned_path,
                const std::string& format) {
    dm::bench::RunScore base = dm::bench::load_run_score(base_path);
    dm::bench::RunScore tuned = dm::bench::load_run_score(tuned_path);
    dm::bench::ComparisonReport report = dm::bench::compare_runs(base, tuned);
    std::cout << dm::bench::render_report(report, parse_format(format));
    return kExitOk;
}

int run_report(const std::vector<std::string>& score_paths, const std::string& format) {
    std::vector<dm::bench::RunScore> runs;
    runs.reserve(score_paths.size());
    for (const auto& path : score_paths) runs.push_back(dm::bench::load_run_score(path));
    std::cout << dm::bench::render_report(runs, parse_format(format));
    return kExitOk;
}

struct ScoreOptions {
    std::string text;
    std::string file;
    std::string reference_text;
    std::string reference_file;
    std::string embedder = "builtin";
    std::string embed_url;
    std::size_t dimension = 256;
    long timeout_ms = 30000;
};

int run_score(const ScoreOptions& opt) {
    std::string text = opt.file.empty() ? opt.text : dm::util::read_file(opt.file);
    std::string reference =
        opt.reference_file.empty() ? opt.reference_text : dm::util::read_file(opt.reference_file);

    dm::metrics::MetricVector vec;
    vec.conciseness = dm::metrics::conciseness(text);
    dm::metrics::TextStats stats = dm::metrics::text_stats(text);
    vec.clarity = dm::metrics::clarity(stats);

    nlohmann::ordered_json out;
    if (!reference.empty()) {
        auto embedder =
            make_embedder_from(opt.embedder, opt.embed_url, opt.dimension, opt.timeout_ms);
        auto vectors = embedder->embed({text, reference});
        vec.accuracy = dm::metrics::accuracy(vectors[0].values, vectors[1].values);
        out["accuracy"] = vec.accuracy;
    }
    dm::metrics::BandVerdict bands = dm::metrics::band_verdict(vec);
    out["conciseness"] = vec.conciseness;
    out["clarity"] = vec.clarity;
    out["conciseness_band"] = dm::metrics::to_string(bands.conciseness_band);
    out["clarity_band"] = dm::metrics::to_string(bands.clarity_band);
    out["stats"] = {{"words", stats.words},
                    {"sentences", stats.sentences},
                    {"syllables", stats.syllables}};
    std::cout << out.dump() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"documint: docstring corpus mining and benchmarking toolkit"};
    app.require_subcommand(1);

    std::string log_level = "warn";
    app.add_option("--log-level", log_level, "error|warn|info|debug")
        ->check(CLI::IsMember({"error", "warn", "info", "debug"}))
        ->capture_default_str();

    // ---- mine ----
    MineOptions mine;
    CLI::App* mine_cmd = app.add_subcommand("mine", "Mine an Alpaca corpus from source trees");
    mine_cmd->add_option("--manifest", mine.manifest, "Repository manifest JSON")
        ->required();
    mine_cmd->add_option("--out", mine.out, "Corpus output path")->required();
    mine_cmd->add_option("--min-stars", mine.thresholds.min_stars, "Minimum stars (exclusive)")
        ->capture_default_str();
    mine_cmd->add_option("--min-forks", mine.thresholds.min_forks, "Minimum forks (exclusive)")
        ->capture_default_str();
    mine_cmd
        ->add_option("--min-commits", mine.thresholds.min_commits, "Minimum commits (exclusive)")
        ->capture_default_str();
    mine_cmd
        ->add_option("--min-contributors", mine.thresholds.min_contributors,
                     "Minimum contributors (exclusive)")
        ->capture_default_str();
    mine_cmd->add_flag("--include-methods,!--no-include-methods", mine.include_methods,
                       "Extract class methods (default on)");
    mine_cmd->add_flag("--include-nested,!--no-include-nested", mine.include_nested,
                       "Extract nested functions (default on)");
    mine_cmd
        ->add_option("--min-chars", mine.min_chars,
                     "Minimum non-whitespace characters in a docstring")
        ->capture_default_str();
    mine_cmd->add_option("--exclude", mine.excludes,
                         "Glob of root-relative paths to skip (repeatable; '*' crosses '/')");
    mine_cmd->add_option("--threads", mine.threads, "Worker threads (0 = auto)")
        ->capture_default_str();

    // ---- bench ----
    BenchOptions bench;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Score generated docstrings against references");
    bench_cmd->add_option("--functions", bench.functions, "Function-task set JSON")->required();
    auto* pregen_opt =
        bench_cmd->add_option("--pregenerated", bench.pregenerated,
                              "JSON Lines of pregenerated docstrings");
    auto* model_url_opt =
        bench_cmd->add_option("--model-url", bench.model_url, "Generation endpoint URL")
            ->envname("DOCUMINT_GEN_URL");
    auto* model_id_opt = bench_cmd->add_option("--model-id", bench.model_id,
                                               "Model name recorded in the run");
    bench_cmd->add_option("--embedder", bench.embedder, "builtin|remote")
        ->check(CLI::IsMember({"builtin", "remote"}))
        ->capture_default_str();
    bench_cmd->add_option("--embed-url", bench.embed_url, "Embedding endpoint URL")
        ->envname("DOCUMINT_EMBED_URL");
    bench_cmd->add_option("--dimension", bench.dimension, "Builtin embedding dimension")
        ->capture_default_str();
    bench_cmd->add_option("--timeout-ms", bench.timeout_ms, "HTTP timeout in milliseconds")
        ->capture_default_str();
    bench_cmd->add_option("--out", bench.out, "Scores output path")->required();
    pregen_opt->excludes(model_url_opt);

    // ---- compare ----
    std::string cmp_base, cmp_tuned, cmp_format = "md";
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "Compare a base run against a tuned run");
    compare_cmd->add_option("--base", cmp_base, "Base scores JSON")->required();
    compare_cmd->add_option("--tuned", cmp_tuned, "Tuned scores JSON")->required();
    compare_cmd->add_option("--format", cmp_format, "md|csv")
        ->check(CLI::IsMember({"md", "csv"}))
        ->capture_default_str();

    // ---- report ----
    std::vector<std::string> report_scores;
    std::string report_format = "md";
    CLI::App* report_cmd = app.add_subcommand("report", "Render a table of score runs");
    report_cmd->add_option("--scores", report_scores, "Scores JSON files (repeatable)")
        ->required();
    report_cmd->add_option("--format", report_format, "md|csv")
        ->check(CLI::IsMember({"md", "csv"}))
        ->capture_default_str();

    // ---- score ----
    ScoreOptions score;
    CLI::App* score_cmd = app.add_subcommand("score", "Score one docstring text");
    auto* text_opt = score_cmd->add_option("--text", score.text, "Docstring text");
    auto* file_opt = score_cmd->add_option("--file", score.file, "File holding the docstring");
    auto* ref_text_opt =
        score_cmd->add_option("--reference", score.reference_text, "Reference docstring text");
    auto* ref_file_opt = score_cmd->add_option("--reference-file", score.reference_file,
                                               "File holding the reference docstring");
    score_cmd->add_option("--embedder", score.embedder, "builtin|remote")
        ->check(CLI::IsMember({"builtin", "remote"}))
        ->capture_default_str();
    score_cmd->add_option("--embed-url", score.embed_url, "Embedding endpoint URL")
        ->envname("DOCUMINT_EMBED_URL");
    score_cmd->add_option("--dimension", score.dimension, "Builtin embedding dimension")
        ->capture_default_str();
    score_cmd->add_option("--timeout-ms", score.timeout_ms, "HTTP timeout in milliseconds")
        ->capture_default_str();
    text_opt->excludes(file_opt);
    ref_text_opt->excludes(ref_file_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (log_level == "error") dm::util::set_log_level(dm::util::LogLevel::error);
    else if (log_level == "warn") dm::util::set_log_level(dm::util::LogLevel::warn);
    else if (log_level == "info") dm::util::set_log_level(dm::util::LogLevel::info);
    else dm::util::set_log_level(dm::util::LogLevel::debug);

    try {
        if (app.got_subcommand(mine_cmd)) return run_mine(mine);
        if (app.got_subcommand(bench_cmd)) {
            if (bench.pregenerated.empty()) {
                if (bench.model_url.empty()) {
                    std::cerr << "documint bench: either --pregenerated or --model-url (or "
                                 "DOCUMINT_GEN_URL) is required\n";
                    return kExitUsage;
                }
                if (bench.model_id.empty()) {
                    std::cerr << "documint bench: --model-id is required with --model-url\n";
                    return kExitUsage;
                }
            } else if (model_id_opt->count() > 0) {
                std::cerr << "documint bench: --model-id conflicts with --pregenerated (the "
                             "file carries its own model_id)\n";
                return kExitUsage;
            }
            return run_bench(bench);
        }
        if (app.got_subcommand(compare_cmd)) return run_compare(cmp_base, cmp_tuned, cmp_format);
        if (app.got_subcommand(report_cmd)) return run_report(report_scores, report_format);
        if (app.got_subcommand(score_cmd)) {
            if (text_opt->count() == 0 && file_opt->count() == 0) {
                std::cerr << "documint score: --text or --file is required\n";
                return kExitUsage;
            }
            return run_score(score);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "documint: " << e.what() << "\n";
        return kExitUsage;
    } catch (const dm::Error& e) {
        std::cerr << "documint: " << e.what() << "\n";
        return kExitDomainError;
    } catch (const std::exception& e) {
        std::cerr << "documint: unexpected error: " << e.what() << "\n";
        return kExitDomainError;
    }
    return kExitUsage;
}
