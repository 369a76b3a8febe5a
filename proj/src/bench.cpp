#include "documint/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "documint/errors.hpp"
#include "documint/parser.hpp"
#include "documint/remote.hpp"
#include "documint/util.hpp"
#include "json.hpp"

namespace documint::bench {

const std::string_view kGenerationPrompt =
    "You are a helpful AI assistant that specializes in generating high-quality docstrings "
    "for Python code functions. Your task is to create docstrings that are:\n"
    "\n"
    "Accurate: Cover functionality, parameters, return values, and exceptions.\n"
    "\n"
    "Concise: Brief and to the point, focusing on essential information.\n"
    "\n"
    "Clear: Use simple language and avoid ambiguity.\n"
    "\n"
    "Generate docstring in this format: \"\"\"<generated docstring>\"\"\".";

namespace {

struct BandNames {
    static metrics::ConcisenessBand conciseness(std::string_view name, const std::string& where) {
        if (name == "too_terse") return metrics::ConcisenessBand::too_terse;
        if (name == "ideal") return metrics::ConcisenessBand::ideal;
        if (name == "verbose") return metrics::ConcisenessBand::verbose;
        throw SchemaError(where + ": unknown conciseness band \"" + std::string(name) + "\"");
    }

    static metrics::ClarityBand clarity(std::string_view name, const std::string& where) {
        if (name == "too_complex") return metrics::ClarityBand::too_complex;
        if (name == "ideal") return metrics::ClarityBand::ideal;
        if (name == "too_simple") return metrics::ClarityBand::too_simple;
        throw SchemaError(where + ": unknown clarity band \"" + std::string(name) + "\"");
    }
};

std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// Best-per-column flags computed over the printed (rounded) values so the
// flags never disagree with what the table shows.
std::vector<std::string> best_flags(const std::vector<RunScore>& runs) {
    std::vector<std::string> flags(runs.size());
    if (runs.empty()) return flags;
    auto flag_column = [&](const char* name, auto printed) {
        std::vector<double> values(runs.size());
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < runs.size(); ++i) {
            values[i] = std::strtod(printed(runs[i]).c_str(), nullptr);
            best = std::max(best, values[i]);
        }
        for (std::size_t i = 0; i < runs.size(); ++i) {
            if (values[i] == best) {
                if (!flags[i].empty()) flags[i] += ' ';
                flags[i] += name;
            }
        }
    };
    flag_column("accuracy", [](const RunScore& r) { return fmt3(r.aggregate.accuracy); });
    flag_column("conciseness", [](const RunScore& r) { return fmt3(r.aggregate.conciseness); });
    flag_column("clarity", [](const RunScore& r) { return fmt2(r.aggregate.clarity); });
    return flags;
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += '"';
    return quoted;
}

TaskScore score_one(const FunctionTask& task, const std::string& generated,
                    const std::vector<double>& v_generated,
                    const std::vector<double>& v_reference) {
    TaskScore row;
    row.task_id = task.task_id;
    row.vec.accuracy = metrics::accuracy(v_generated, v_reference);
    row.vec.conciseness = metrics::conciseness(generated);
    row.vec.clarity = metrics::clarity(metrics::text_stats(generated));
    row.bands = metrics::band_verdict(row.vec);
    return row;
}

struct ScoreInputs {
    std::string model_id;
    std::vector<const FunctionTask*> tasks;          // sorted by task_id
    std::vector<const GenerationRecord*> records;    // aligned with tasks
    std::vector<embed::EmbeddingVector> vectors;     // 2n: generated then reference
};

// Shared set-up for both score_run twins: validation, ordering, and the
// single embedding batch.
ScoreInputs prepare_score(const std::vector<GenerationRecord>& records,
                          const std::vector<FunctionTask>& tasks, embed::Embedder& embedder) {
    if (tasks.empty()) throw EmptyRunError("no tasks to score");

    ScoreInputs in;
    std::unordered_map<std::string, const GenerationRecord*> by_task;
    for (const auto& record : records) {
        if (!by_task.emplace(record.task_id, &record).second) {
            throw SchemaError("duplicate generation for task \"" + record.task_id + "\"");
        }
        if (in.model_id.empty()) {
            in.model_id = record.model_id;
        } else if (record.model_id != in.model_id) {
            throw SchemaError("mixed model_ids in one run: \"" + in.model_id + "\" vs \"" +
                              record.model_id + "\"");
        }
    }

    in.tasks.reserve(tasks.size());
    for (const auto& task : tasks) in.tasks.push_back(&task);
    std::sort(in.tasks.begin(), in.tasks.end(),
              [](const FunctionTask* a, const FunctionTask* b) { return a->task_id < b->task_id; });

    std::vector<std::string> texts;
    texts.reserve(tasks.size() * 2);
    in.records.reserve(tasks.size());
    for (const FunctionTask* task : in.tasks) {
        auto it = by_task.find(task->task_id);
        if (it == by_task.end()) {
            throw MissingGenerationError("no generation for task \"" + task->task_id + "\"");
        }
        if (util::trim(it->second->generated_docstring).empty()) {
            throw EmptyTextError("task \"" + task->task_id + "\": generated docstring is empty");
        }
        if (util::trim(task->reference_docstring).empty()) {
            throw EmptyTextError("task \"" + task->task_id + "\": reference docstring is empty");
        }
        in.records.push_back(it->second);
        texts.push_back(it->second->generated_docstring);
    }
    for (const FunctionTask* task : in.tasks) texts.push_back(task->reference_docstring);

    in.vectors = embedder.embed(texts);
    if (in.vectors.size() != texts.size()) {
        throw ContractViolationError("embedder returned " + std::to_string(in.vectors.size()) +
                                     " vectors for " + std::to_string(texts.size()) + " texts");
    }
    return in;
}

RunScore finish_score(ScoreInputs& in, std::vector<TaskScore>&& rows) {
    RunScore score;
    score.model_id = in.model_id;
    score.per_task = std::move(rows);
    std::vector<metrics::MetricVector> vectors;
    vectors.reserve(score.per_task.size());
    for (const auto& row : score.per_task) vectors.push_back(row.vec);
    score.aggregate = metrics::aggregate(vectors);
    return score;
}

}  // namespace

const char* to_string(OriginTag tag) {
    switch (tag) {
        case OriginTag::mbpp: return "mbpp";
        case OriginTag::humaneval: return "humaneval";
        case OriginTag::apps: return "apps";
        case OriginTag::custom: return "custom";
    }
    return "?";
}

OriginTag origin_tag_from_string(std::string_view text) {
    if (text == "mbpp") return OriginTag::mbpp;
    if (text == "humaneval") return OriginTag::humaneval;
    if (text == "apps") return OriginTag::apps;
    if (text == "custom") return OriginTag::custom;
    throw SchemaError("unknown origin_tag \"" + std::string(text) + "\"");
}

std::string build_prompt(const FunctionTask& task) {
    std::string prompt(kGenerationPrompt);
    prompt += "\n\n";
    prompt += task.source;
    return prompt;
}

std::string unwrap_generation(std::string_view raw) {
    std::string_view text = util::trim(raw);
    for (std::string_view quote : {std::string_view("\"\"\""), std::string_view("'''")}) {
        if (text.size() >= 6 && text.substr(0, 3) == quote &&
            text.substr(text.size() - 3) == quote) {
            text = text.substr(3, text.size() - 6);
            break;
        }
    }
    return std::string(util::trim(text));
}

std::vector<FunctionTask> load_function_set(const std::string& path) {
    std::string text = util::read_file(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw SchemaError("function set '" + path + "' is not valid JSON: " + err.what());
    }
    if (!doc.is_array()) {
        throw SchemaError("function set '" + path + "' must be a JSON array");
    }
    if (doc.empty()) {
        throw SchemaError("function set '" + path + "' contains no tasks");
    }

    std::vector<FunctionTask> tasks;
    tasks.reserve(doc.size());
    std::unordered_set<std::string> seen_ids;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& entry = doc[i];
        std::string where = "function set '" + path + "' entry " + std::to_string(i);
        if (!entry.is_object()) throw SchemaError(where + " must be an object");
        for (const char* key : {"task_id", "source", "reference_docstring", "origin_tag"}) {
            if (!entry.contains(key) || !entry[key].is_string()) {
                throw SchemaError(where + ": missing string key \"" + key + "\"");
            }
        }
        FunctionTask task;
        task.task_id = entry["task_id"].get<std::string>();
        task.source = entry["source"].get<std::string>();
        task.reference_docstring = entry["reference_docstring"].get<std::string>();
        task.origin_tag = origin_tag_from_string(entry["origin_tag"].get<std::string>());

        if (task.task_id.empty()) throw SchemaError(where + ": task_id must be non-empty");
        if (!seen_ids.insert(task.task_id).second) {
            throw SchemaError("duplicate task_id \"" + task.task_id + "\" in '" + path + "'");
        }
        if (util::trim(task.reference_docstring).empty()) {
            throw SchemaError("task \"" + task.task_id + "\": reference docstring is empty");
        }
        py::ScanOutcome outcome = py::scan_module(task.source, task.task_id);
        if (!outcome.ok()) {
            throw SchemaError("task \"" + task.task_id + "\": source does not parse (line " +
                              std::to_string(outcome.failure->line) + ": " +
                              outcome.failure->reason + ")");
        }
        std::size_t top_level = 0;
        for (const auto& record : outcome.records) {
            if (record.qualified_name.find('.') == std::string::npos) ++top_level;
            if (record.docstring.has_value()) {
                throw SchemaError("task \"" + task.task_id +
                                  "\": source must be docstring-free (found one on " +
                                  record.qualified_name + ")");
            }
        }
        if (top_level != 1) {
            throw SchemaError("task \"" + task.task_id + "\": source must define exactly one "
                              "top-level function, found " + std::to_string(top_level));
        }
        tasks.push_back(std::move(task));
    }
    return tasks;
}

std::vector<GenerationRecord> load_pregenerated(const std::string& path,
                                                const std::vector<FunctionTask>& tasks) {
    std::string text = util::read_file(path);
    std::unordered_set<std::string> wanted;
    for (const auto& task : tasks) wanted.insert(task.task_id);

    std::unordered_map<std::string, GenerationRecord> by_task;
    std::string model_id;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view line(text.data() + start,
                              (nl == std::string::npos ? text.size() : nl) - start);
        start = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        if (util::trim(line).empty()) continue;

        std::string where = path + ":" + std::to_string(line_no);
        nlohmann::json entry;
        try {
            entry = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& err) {
            throw SchemaError(where + ": invalid JSON line: " + err.what());
        }
        if (!entry.is_object()) throw SchemaError(where + ": line must be a JSON object");
        for (const char* key : {"task_id", "model_id", "docstring"}) {
            if (!entry.contains(key) || !entry[key].is_string()) {
                throw SchemaError(where + ": missing string key \"" + key + "\"");
            }
        }
        GenerationRecord record;
        record.task_id = entry["task_id"].get<std::string>();
        record.model_id = entry["model_id"].get<std::string>();
        record.generated_docstring = unwrap_generation(entry["docstring"].get<std::string>());

        if (model_id.empty()) {
            model_id = record.model_id;
        } else if (record.model_id != model_id) {
            throw SchemaError(where + ": mixed model_ids (\"" + model_id + "\" vs \"" +
                              record.model_id + "\")");
        }
        if (wanted.find(record.task_id) == wanted.end()) {
            util::log_info("skipping pregenerated line for unknown task \"" + record.task_id +
                           "\"");
            continue;
        }
        if (!by_task.emplace(record.task_id, std::move(record)).second) {
            throw SchemaError(where + ": duplicate generation for task \"" +
                              entry["task_id"].get<std::string>() + "\"");
        }
    }

    std::vector<GenerationRecord> records;
    records.reserve(tasks.size());
    for (const auto& task : tasks) {
        auto it = by_task.find(task.task_id);
        if (it == by_task.end()) {
            throw MissingGenerationError("pregenerated file '" + path +
                                         "' lacks task \"" + task.task_id + "\"");
        }
        records.push_back(std::move(it->second));
    }
    return records;
}

std::vector<GenerationRecord> collect_generations(const std::vector<FunctionTask>& tasks,
                                                  const std::string& endpoint_url,
                                                  const std::string& model_id,
                                                  std::chrono::milliseconds timeout,
                                                  int max_in_flight) {
    std::vector<GenerationRecord> records(tasks.size());
    if (tasks.empty()) return records;

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::size_t first_error_index = std::numeric_limits<std::size_t>::max();
    std::mutex error_mutex;

    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size() || failed.load()) return;
            try {
                auto t0 = std::chrono::steady_clock::now();
                nlohmann::json payload{{"prompt", build_prompt(tasks[i])}};
                nlohmann::json response = remote::post_json(endpoint_url, payload, timeout);
                auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0);
                if (!response.is_object() || !response.contains("text") ||
                    !response["text"].is_string()) {
                    throw ContractViolationError(
                        "generation response for task \"" + tasks[i].task_id +
                        "\" lacks a string \"text\" field");
                }
                GenerationRecord record;
                record.task_id = tasks[i].task_id;
                record.model_id = model_id;
                record.generated_docstring =
                    unwrap_generation(response["text"].get<std::string>());
                record.latency = elapsed;
                records[i] = std::move(record);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (i < first_error_index) {
                    first_error_index = i;
                    first_error = std::current_exception();
                }
                failed.store(true);
            }
        }
    };

    std::size_t n_workers = std::min<std::size_t>(
        tasks.size(), static_cast<std::size_t>(std::max(1, max_in_flight)));
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return records;
}

RunScore score_run(const std::vector<GenerationRecord>& records,
                   const std::vector<FunctionTask>& tasks, embed::Embedder& embedder) {
    ScoreInputs in = prepare_score(records, tasks, embedder);
    const std::size_t n = in.tasks.size();
    std::vector<TaskScore> rows(n);
    std::exception_ptr first_error;
    std::size_t first_error_index = std::numeric_limits<std::size_t>::max();

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        auto idx = static_cast<std::size_t>(i);
        try {
            rows[idx] = score_one(*in.tasks[idx], in.records[idx]->generated_docstring,
                                  in.vectors[idx].values, in.vectors[n + idx].values);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(documint_score_error)
#endif
            {
                if (idx < first_error_index) {
                    first_error_index = idx;
                    first_error = std::current_exception();
                }
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return finish_score(in, std::move(rows));
}

RunScore score_run_serial(const std::vector<GenerationRecord>& records,
                          const std::vector<FunctionTask>& tasks, embed::Embedder& embedder) {
    ScoreInputs in = prepare_score(records, tasks, embedder);
    const std::size_t n = in.tasks.size();
    std::vector<TaskScore> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i] = score_one(*in.tasks[i], in.records[i]->generated_docstring,
                            in.vectors[i].values, in.vectors[n + i].values);
    }
    return finish_score(in, std::move(rows));
}

ComparisonReport compare_runs(const RunScore& base, const RunScore& tuned) {
    if (base.per_task.size() != tuned.per_task.size()) {
        throw TaskSetMismatchError("base run has " + std::to_string(base.per_task.size()) +
                                   " tasks, tuned run has " +
                                   std::to_string(tuned.per_task.size()));
    }
    for (std::size_t i = 0; i < base.per_task.size(); ++i) {
        if (base.per_task[i].task_id != tuned.per_task[i].task_id) {
            throw TaskSetMismatchError("task sets differ: \"" + base.per_task[i].task_id +
                                       "\" vs \"" + tuned.per_task[i].task_id + "\"");
        }
    }
    ComparisonReport report;
    report.base = base;
    report.tuned = tuned;
    report.accuracy_improvement_pct =
        metrics::relative_improvement(base.aggregate.accuracy, tuned.aggregate.accuracy);
    report.conciseness_improvement_pct =
        metrics::relative_improvement(base.aggregate.conciseness, tuned.aggregate.conciseness);
    report.clarity_raw_diff = tuned.aggregate.clarity - base.aggregate.clarity;
    report.clarity_base_band = metrics::band_verdict(base.aggregate).clarity_band;
    report.clarity_tuned_band = metrics::band_verdict(tuned.aggregate).clarity_band;
    return report;
}

std::string render_report(const std::vector<RunScore>& runs, ReportFormat format) {
    std::vector<std::string> flags = best_flags(runs);
    std::string out;
    if (format == ReportFormat::md) {
        out += "| Model | Accuracy | Conciseness | Clarity | Best |\n";
        out += "|---|---|---|---|---|\n";
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const auto& agg = runs[i].aggregate;
            out += "| " + runs[i].model_id + " | " + fmt3(agg.accuracy) + " | " +
                   fmt3(agg.conciseness) + " | " + fmt2(agg.clarity) + " | " + flags[i] + " |\n";
        }
    } else {
        out += "model,accuracy,conciseness,clarity,best\n";
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const auto& agg = runs[i].aggregate;
            out += csv_field(runs[i].model_id) + "," + fmt3(agg.accuracy) + "," +
                   fmt3(agg.conciseness) + "," + fmt2(agg.clarity) + "," + csv_field(flags[i]) +
                   "\n";
        }
    }
    return out;
}

std::string render_report(const ComparisonReport& report, ReportFormat format) {
    char acc[64], con[64];
    std::snprintf(acc, sizeof(acc), "%+.1f%%", report.accuracy_improvement_pct);
    std::snprintf(con, sizeof(con), "%+.1f%%", report.conciseness_improvement_pct);
    char cla[96];
    std::snprintf(cla, sizeof(cla), "%+.2f (%s -> %s)", report.clarity_raw_diff,
                  metrics::to_string(report.clarity_base_band),
                  metrics::to_string(report.clarity_tuned_band));

    auto run_cells = [](const RunScore& r) {
        return std::array<std::string, 3>{fmt3(r.aggregate.accuracy),
                                          fmt3(r.aggregate.conciseness),
                                          fmt2(r.aggregate.clarity)};
    };
    auto base = run_cells(report.base);
    auto tuned = run_cells(report.tuned);

    std::string out;
    if (format == ReportFormat::md) {
        out += "| Row | Model | Accuracy | Conciseness | Clarity |\n";
        out += "|---|---|---|---|---|\n";
        out += "| base | " + report.base.model_id + " | " + base[0] + " | " + base[1] + " | " +
               base[2] + " |\n";
        out += "| tuned | " + report.tuned.model_id + " | " + tuned[0] + " | " + tuned[1] +
               " | " + tuned[2] + " |\n";
        out += std::string("| delta | - | ") + acc + " | " + con + " | " + cla + " |\n";
    } else {
        out += "row,model,accuracy,conciseness,clarity\n";
        out += "base," + csv_field(report.base.model_id) + "," + base[0] + "," + base[1] + "," +
               base[2] + "\n";
        out += "tuned," + csv_field(report.tuned.model_id) + "," + tuned[0] + "," + tuned[1] +
               "," + tuned[2] + "\n";
        out += std::string("delta,-,") + acc + "," + con + "," + csv_field(cla) + "\n";
    }
    return out;
}

std::string run_score_to_json(const RunScore& score) {
    nlohmann::ordered_json doc;
    doc["model_id"] = score.model_id;
    doc["task_count"] = score.per_task.size();
    doc["per_task"] = nlohmann::ordered_json::array();
    for (const auto& row : score.per_task) {
        nlohmann::ordered_json obj;
        obj["task_id"] = row.task_id;
        obj["accuracy"] = row.vec.accuracy;
        obj["conciseness"] = row.vec.conciseness;
        obj["clarity"] = row.vec.clarity;
        obj["conciseness_band"] = metrics::to_string(row.bands.conciseness_band);
        obj["clarity_band"] = metrics::to_string(row.bands.clarity_band);
        doc["per_task"].push_back(std::move(obj));
    }
    doc["aggregate"] = {{"accuracy", score.aggregate.accuracy},
                        {"conciseness", score.aggregate.conciseness},
                        {"clarity", score.aggregate.clarity}};
    return doc.dump(2) + "\n";
}

void write_run_score(const RunScore& score, const std::string& out_path) {
    util::write_file_atomic(out_path, run_score_to_json(score));
}

RunScore load_run_score(const std::string& path) {
    std::string text = util::read_file(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw SchemaError("scores file '" + path + "' is not valid JSON: " + err.what());
    }
    if (!doc.is_object() || !doc.contains("model_id") || !doc["model_id"].is_string() ||
        !doc.contains("per_task") || !doc["per_task"].is_array() || !doc.contains("aggregate") ||
        !doc["aggregate"].is_object()) {
        throw SchemaError("scores file '" + path +
                          "' must hold {model_id, per_task, aggregate}");
    }

    RunScore score;
    score.model_id = doc["model_id"].get<std::string>();
    for (std::size_t i = 0; i < doc["per_task"].size(); ++i) {
        const auto& entry = doc["per_task"][i];
        std::string where = "scores file '" + path + "' per_task[" + std::to_string(i) + "]";
        if (!entry.is_object()) throw SchemaError(where + " must be an object");
        for (const char* key : {"task_id", "conciseness_band", "clarity_band"}) {
            if (!entry.contains(key) || !entry[key].is_string()) {
                throw SchemaError(where + ": missing string key \"" + key + "\"");
            }
        }
        for (const char* key : {"accuracy", "conciseness", "clarity"}) {
            if (!entry.contains(key) || !entry[key].is_number()) {
                throw SchemaError(where + ": missing numeric key \"" + key + "\"");
            }
        }
        TaskScore row;
        row.task_id = entry["task_id"].get<std::string>();
        row.vec.accuracy = entry["accuracy"].get<double>();
        row.vec.conciseness = entry["conciseness"].get<double>();
        row.vec.clarity = entry["clarity"].get<double>();
        row.bands.conciseness_band =
            BandNames::conciseness(entry["conciseness_band"].get<std::string>(), where);
        row.bands.clarity_band =
            BandNames::clarity(entry["clarity_band"].get<std::string>(), where);
        score.per_task.push_back(std::move(row));
    }
    const auto& agg = doc["aggregate"];
    for (const char* key : {"accuracy", "conciseness", "clarity"}) {
        if (!agg.contains(key) || !agg[key].is_number()) {
            throw SchemaError("scores file '" + path + "' aggregate: missing numeric key \"" +
                              std::string(key) + "\"");
        }
    }
    score.aggregate.accuracy = agg["accuracy"].get<double>();
    score.aggregate.conciseness = agg["conciseness"].get<double>();
    score.aggregate.clarity = agg["clarity"].get<double>();

    if (doc.contains("task_count") &&
        doc["task_count"].get<std::size_t>() != score.per_task.size()) {
        throw SchemaError("scores file '" + path + "': task_count disagrees with per_task");
    }
    std::sort(score.per_task.begin(), score.per_task.end(),
              [](const TaskScore& a, const TaskScore& b) { return a.task_id < b.task_id; });
    return score;
}

}  // namespace documint::bench
