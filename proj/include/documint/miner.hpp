#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace documint::miner {

// Metadata for one candidate repository, supplied via the input manifest.
struct RepoMeta {
    std::string repo_id;
    std::int64_t contributors = 0;
    std::int64_t commits = 0;
    std::int64_t stars = 0;
    std::int64_t forks = 0;
    std::string root_path;
};

// Acceptance thresholds; a repository passes only if every count is
// strictly greater than its threshold.
struct Thresholds {
    std::int64_t min_contributors = 50;
    std::int64_t min_commits = 5000;
    std::int64_t min_stars = 35000;
    std::int64_t min_forks = 10000;
};

// Returns std::nullopt on acceptance, otherwise the name of the first
// failing field (checked in order: contributors, commits, stars, forks).
std::optional<std::string> filter_repo(const RepoMeta& meta,
                                       const Thresholds& thresholds = Thresholds{});

struct MinerConfig {
    bool include_methods = true;
    bool include_nested = true;
    std::size_t min_chars = 1;  // minimum non-whitespace characters in the response
    std::vector<std::string> exclude_globs;  // matched against the root-relative path
    int threads = 0;                         // 0 = library default
    std::string repo_id;                     // stamped into each sample's origin
};

struct CorpusSample {
    std::string instruction;  // function source with the docstring removed
    std::string response;     // cleaned docstring content
    std::string repo_id;
    std::string file_path;  // root-relative, '/'-separated
    std::string qualified_name;
    std::uint64_t content_hash = 0;  // over the normalized (instruction, response) pair
};

struct MiningStats {
    std::uint64_t files_seen = 0;
    std::uint64_t files_parsed = 0;
    std::uint64_t parse_failures = 0;
    std::uint64_t functions_seen = 0;
    std::uint64_t functions_with_docstring = 0;
    std::uint64_t filtered_by_config = 0;
    std::uint64_t duplicates_removed = 0;
    std::uint64_t samples_exported = 0;

    bool operator==(const MiningStats&) const = default;
};

struct MiningResult {
    std::vector<CorpusSample> samples;
    MiningStats stats;
};

// Hash used for exact-duplicate detection: FNV-1a over the
// whitespace-normalized instruction, a NUL separator, and the normalized
// response.
std::uint64_t sample_content_hash(const std::string& instruction, const std::string& response);

// Walks root_path for ".py" files (case-insensitive), parses each, and
// extracts one sample per documented function admitted by the config.
// Samples arrive deduplicated, in path-lexicographic order. Throws
// WalkError when the root itself is unreadable; unreadable individual
// files count as parse failures.
MiningResult mine_tree(const std::string& root_path, const MinerConfig& config = MinerConfig{});

// Single-threaded reference twin of mine_tree; byte-identical results.
MiningResult mine_tree_serial(const std::string& root_path,
                              const MinerConfig& config = MinerConfig{});

// Removes exact duplicates by content_hash (first occurrence wins, order
// stable); returns the number removed.
std::size_t dedup_samples(std::vector<CorpusSample>& samples);

// Writes the samples as a compact JSON array of {"instruction", "response"}
// objects (exactly those keys, in that order); returns bytes written.
std::size_t export_alpaca(const std::vector<CorpusSample>& samples, const std::string& out_path);

// Pretty-printed stats sidecar (conventionally <out>.stats.json).
void write_stats(const MiningStats& stats, const std::string& out_path);

// Parses the repository manifest: a JSON array of objects with repo_id,
// contributors, commits, stars, forks, root_path. Throws SchemaError on
// malformed input or negative counts.
std::vector<RepoMeta> load_manifest(const std::string& manifest_path);

}  // namespace documint::miner
