#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "documint/embedding.hpp"
#include "documint/metrics.hpp"

namespace documint::bench {

enum class OriginTag { mbpp, humaneval, apps, custom };

const char* to_string(OriginTag tag);
OriginTag origin_tag_from_string(std::string_view text);  // throws SchemaError

struct FunctionTask {
    std::string task_id;
    std::string source;  // docstring-free function definition
    std::string reference_docstring;
    OriginTag origin_tag = OriginTag::custom;
};

struct GenerationRecord {
    std::string task_id;
    std::string model_id;
    std::string generated_docstring;  // already unwrapped
    std::optional<std::chrono::milliseconds> latency;
};

struct TaskScore {
    std::string task_id;
    metrics::MetricVector vec;
    metrics::BandVerdict bands;
};

struct RunScore {
    std::string model_id;
    std::vector<TaskScore> per_task;  // sorted by task_id
    metrics::MetricVector aggregate;
};

struct ComparisonReport {
    RunScore base;
    RunScore tuned;
    double accuracy_improvement_pct = 0.0;     // relative_improvement on aggregates
    double conciseness_improvement_pct = 0.0;  // relative_improvement on aggregates
    double clarity_raw_diff = 0.0;             // tuned - base, no percentage
    metrics::ClarityBand clarity_base_band = metrics::ClarityBand::ideal;
    metrics::ClarityBand clarity_tuned_band = metrics::ClarityBand::ideal;
};

enum class ReportFormat { md, csv };

// System prompt requesting the three qualities and the
// """<generated docstring>""" output format.
extern const std::string_view kGenerationPrompt;

// kGenerationPrompt, one blank line, then the task source.
std::string build_prompt(const FunctionTask& task);

// Trims, removes one wrapping triple-quote pair if present (""" preferred
// over '''), trims again. The only post-processing applied to generations.
std::string unwrap_generation(std::string_view raw);

// Loads a JSON array of {task_id, source, reference_docstring, origin_tag}.
// Rejects duplicate ids, empty references, sources that fail to re-parse to
// exactly one top-level function, and sources carrying any docstring.
// Throws SchemaError naming the first offending task_id.
std::vector<FunctionTask> load_function_set(const std::string& path);

// Loads JSON Lines of {task_id, model_id, docstring}. Lines for unknown
// task_ids are skipped; duplicates and mixed model_ids are SchemaErrors;
// a task left uncovered raises MissingGenerationError. Docstrings are
// unwrapped on load.
std::vector<GenerationRecord> load_pregenerated(const std::string& path,
                                                const std::vector<FunctionTask>& tasks);

// Remote generation: POST {"prompt": ...} -> {"text": ...} per task, at
// most max_in_flight requests at once; records returned in task order with
// docstrings unwrapped and latency filled.
std::vector<GenerationRecord> collect_generations(
    const std::vector<FunctionTask>& tasks, const std::string& endpoint_url,
    const std::string& model_id,
    std::chrono::milliseconds timeout = std::chrono::milliseconds(30000),
    int max_in_flight = 4);

// Scores one generation per task: accuracy = cosine(embed(generated),
// embed(reference)); conciseness/clarity on the generated text alone.
// Embedding happens in one batch; per-task rows come back sorted by
// task_id; aggregate is the arithmetic mean in that order.
RunScore score_run(const std::vector<GenerationRecord>& records,
                   const std::vector<FunctionTask>& tasks, embed::Embedder& embedder);

// Single-threaded reference twin; identical results.
RunScore score_run_serial(const std::vector<GenerationRecord>& records,
                          const std::vector<FunctionTask>& tasks, embed::Embedder& embedder);

// Throws TaskSetMismatchError unless both runs cover the same task_ids.
ComparisonReport compare_runs(const RunScore& base, const RunScore& tuned);

// Markdown or CSV; accuracy/conciseness at 3 decimals, clarity at 2; a
// trailing "Best" column names the metrics each row wins (argmax over the
// printed values). Row order = input order.
std::string render_report(const std::vector<RunScore>& runs, ReportFormat format);
std::string render_report(const ComparisonReport& report, ReportFormat format);

// Scores artifact: {model_id, task_count, per_task: [...], aggregate}.
std::string run_score_to_json(const RunScore& score);
void write_run_score(const RunScore& score, const std::string& out_path);
RunScore load_run_score(const std::string& path);  // throws SchemaError

}  // namespace documint::bench
