#include "documint/miner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "documint/errors.hpp"
#include "documint/parser.hpp"
#include "documint/util.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace documint::miner {

namespace {

struct FileWork {
    std::string rel_path;   // '/'-separated, used for ordering and origins
    fs::path abs_path;
};

struct FileResult {
    bool parsed = false;
    std::uint64_t functions_seen = 0;
    std::uint64_t functions_with_docstring = 0;
    std::uint64_t filtered_by_config = 0;
    std::vector<CorpusSample> samples;
};

bool has_py_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    if (ext.size() != 3) return false;
    return ext[0] == '.' && (ext[1] == 'p' || ext[1] == 'P') && (ext[2] == 'y' || ext[2] == 'Y');
}

bool excluded(const std::string& rel_path, const MinerConfig& config) {
    for (const auto& glob : config.exclude_globs) {
        if (util::glob_match(glob, rel_path)) return true;
    }
    return false;
}

std::vector<FileWork> discover_files(const std::string& root_path, const MinerConfig& config) {
    fs::path root(root_path);
    std::error_code ec;
    fs::file_status status = fs::status(root, ec);
    if (ec || !fs::is_directory(status)) {
        throw WalkError("cannot walk '" + root_path + "': not a readable directory");
    }

    std::vector<FileWork> files;
    fs::recursive_directory_iterator it(root, ec);
    if (ec) {
        throw WalkError("cannot walk '" + root_path + "': " + ec.message());
    }
    for (fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
        if (ec) {
            throw WalkError("cannot walk '" + root_path + "': " + ec.message());
        }
        if (!it->is_regular_file(ec) || ec) continue;
        const fs::path& p = it->path();
        if (!has_py_extension(p)) continue;
        std::string rel = p.lexically_relative(root).generic_string();
        if (excluded(rel, config)) continue;
        files.push_back(FileWork{std::move(rel), p});
    }
    std::sort(files.begin(), files.end(),
              [](const FileWork& a, const FileWork& b) { return a.rel_path < b.rel_path; });
    return files;
}

std::size_t non_whitespace_chars(const std::string& text) {
    std::size_t n = 0;
    for (char c : text) {
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\v' && c != '\f') ++n;
    }
    return n;
}

// strip_docstring removes only the record's own docstring; nested functions
// keep theirs. The exported instruction must be docstring-free throughout,
// so re-parse and strip until none remain (spans shift after each removal).
std::string docstring_free_instruction(const py::FunctionRecord& record) {
    std::string text = py::strip_docstring(record);
    while (true) {
        py::ScanOutcome outcome = py::scan_module(text, "instruction");
        if (!outcome.ok()) break;
        const py::FunctionRecord* with_doc = nullptr;
        for (const auto& r : outcome.records) {
            if (r.docstring.has_value()) {
                with_doc = &r;
                break;
            }
        }
        if (!with_doc) break;
        text = text.substr(0, with_doc->span.start_byte) + py::strip_docstring(*with_doc) +
               text.substr(with_doc->span.end_byte);
    }
    return text;
}

FileResult process_file(const FileWork& work, const MinerConfig& config) {
    FileResult result;
    std::string source;
    try {
        source = util::read_file(work.abs_path.string());
    } catch (const IoError&) {
        return result;  // unreadable file counts as a parse failure
    }
    py::ScanOutcome outcome = py::scan_module(source, work.rel_path);
    if (!outcome.ok()) return result;

    result.parsed = true;
    for (const auto& record : outcome.records) {
        ++result.functions_seen;
        if (!record.docstring.has_value() || record.docstring->content.empty()) continue;
        ++result.functions_with_docstring;
        if ((record.is_method && !config.include_methods) ||
            (record.is_nested && !config.include_nested) ||
            non_whitespace_chars(record.docstring->content) < config.min_chars) {
            ++result.filtered_by_config;
            continue;
        }
        CorpusSample sample;
        sample.instruction = docstring_free_instruction(record);
        sample.response = record.docstring->content;
        sample.repo_id = config.repo_id;
        sample.file_path = work.rel_path;
        sample.qualified_name = record.qualified_name;
        sample.content_hash = sample_content_hash(sample.instruction, sample.response);
        result.samples.push_back(std::move(sample));
    }
    return result;
}

MiningResult assemble(std::vector<FileResult>&& per_file) {
    MiningResult result;
    result.stats.files_seen = per_file.size();
    for (auto& file : per_file) {
        if (file.parsed) ++result.stats.files_parsed;
        else ++result.stats.parse_failures;
        result.stats.functions_seen += file.functions_seen;
        result.stats.functions_with_docstring += file.functions_with_docstring;
        result.stats.filtered_by_config += file.filtered_by_config;
        for (auto& sample : file.samples) {
            result.samples.push_back(std::move(sample));
        }
    }
    result.stats.duplicates_removed = dedup_samples(result.samples);
    result.stats.samples_exported = result.samples.size();
    return result;
}

}  // namespace

std::optional<std::string> filter_repo(const RepoMeta& meta, const Thresholds& thresholds) {
    if (!(meta.contributors > thresholds.min_contributors)) return "contributors";
    if (!(meta.commits > thresholds.min_commits)) return "commits";
    if (!(meta.stars > thresholds.min_stars)) return "stars";
    if (!(meta.forks > thresholds.min_forks)) return "forks";
    return std::nullopt;
}

std::uint64_t sample_content_hash(const std::string& instruction, const std::string& response) {
    std::string key = util::normalize_whitespace(instruction);
    key += '\0';
    key += util::normalize_whitespace(response);
    return util::fnv1a64(key);
}

MiningResult mine_tree(const std::string& root_path, const MinerConfig& config) {
    std::vector<FileWork> files = discover_files(root_path, config);
    std::vector<FileResult> per_file(files.size());
#ifdef _OPENMP
    int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(files.size()); ++i) {
        per_file[static_cast<std::size_t>(i)] =
            process_file(files[static_cast<std::size_t>(i)], config);
    }
#else
    for (std::size_t i = 0; i < files.size(); ++i) {
        per_file[i] = process_file(files[i], config);
    }
#endif
    return assemble(std::move(per_file));
}

MiningResult mine_tree_serial(const std::string& root_path, const MinerConfig& config) {
    std::vector<FileWork> files = discover_files(root_path, config);
    std::vector<FileResult> per_file(files.size());
    for (std::size_t i = 0; i < files.size(); ++i) {
        per_file[i] = process_file(files[i], config);
    }
    return assemble(std::move(per_file));
}

std::size_t dedup_samples(std::vector<CorpusSample>& samples) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(samples.size() * 2);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (seen.insert(samples[i].content_hash).second) {
            if (kept != i) samples[kept] = std::move(samples[i]);
            ++kept;
        }
    }
    std::size_t removed = samples.size() - kept;
    samples.resize(kept);
    return removed;
}

std::size_t export_alpaca(const std::vector<CorpusSample>& samples, const std::string& out_path) {
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const auto& sample : samples) {
        nlohmann::ordered_json obj;
        obj["instruction"] = sample.instruction;
        obj["response"] = sample.response;
        array.push_back(std::move(obj));
    }
    std::string payload = array.dump();
    util::write_file_atomic(out_path, payload);
    return payload.size();
}

void write_stats(const MiningStats& stats, const std::string& out_path) {
    nlohmann::ordered_json obj;
    obj["files_seen"] = stats.files_seen;
    obj["files_parsed"] = stats.files_parsed;
    obj["parse_failures"] = stats.parse_failures;
    obj["functions_seen"] = stats.functions_seen;
    obj["functions_with_docstring"] = stats.functions_with_docstring;
    obj["filtered_by_config"] = stats.filtered_by_config;
    obj["duplicates_removed"] = stats.duplicates_removed;
    obj["samples_exported"] = stats.samples_exported;
    util::write_file_atomic(out_path, obj.dump(2) + "\n");
}

std::vector<RepoMeta> load_manifest(const std::string& manifest_path) {
    std::string text = util::read_file(manifest_path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw SchemaError("manifest '" + manifest_path + "' is not valid JSON: " + err.what());
    }
    if (!doc.is_array()) {
        throw SchemaError("manifest '" + manifest_path + "' must be a JSON array");
    }
    std::vector<RepoMeta> repos;
    repos.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& entry = doc[i];
        std::string where = "manifest entry " + std::to_string(i);
        if (!entry.is_object()) throw SchemaError(where + " must be an object");
        RepoMeta meta;
        auto require = [&](const char* key) -> const nlohmann::json& {
            auto it = entry.find(key);
            if (it == entry.end()) {
                throw SchemaError(where + " is missing required key \"" + key + "\"");
            }
            return *it;
        };
        const auto& repo_id = require("repo_id");
        const auto& root = require("root_path");
        if (!repo_id.is_string() || !root.is_string()) {
            throw SchemaError(where + ": repo_id and root_path must be strings");
        }
        meta.repo_id = repo_id.get<std::string>();
        meta.root_path = root.get<std::string>();
        auto count = [&](const char* key) -> std::int64_t {
            const auto& value = require(key);
            if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
                throw SchemaError(where + ": \"" + key + "\" must be a non-negative integer");
            }
            return value.get<std::int64_t>();
        };
        meta.contributors = count("contributors");
        meta.commits = count("commits");
        meta.stars = count("stars");
        meta.forks = count("forks");
        repos.push_back(std::move(meta));
    }
    return repos;
}

}  // namespace documint::miner
