#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace documint::util {

// FNV-1a, 64-bit. Pinned hash for the builtin embedder and dedup keys so
// fixtures stay stable across platforms.
constexpr std::uint64_t kFnvOffset = 0xCBF29CE484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001B3ULL;

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = kFnvOffset) {
    std::uint64_t h = seed;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= kFnvPrime;
    }
    return h;
}

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

std::string_view trim(std::string_view text);

// True when pattern matches path; '*' matches any run of characters
// (including '/'), '?' matches exactly one.
bool glob_match(std::string_view pattern, std::string_view path);

// Collapses runs of spaces/tabs to a single space and strips trailing
// spaces/tabs on every line. Shared by dedup hashing.
std::string normalize_whitespace(std::string_view text);

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file, then renames over the target, so readers
// never observe a partial file. Returns bytes written.
std::size_t write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

// --- logging ---------------------------------------------------------------

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

void set_log_level(LogLevel level);
LogLevel log_level();
void log(LogLevel level, const std::string& message);

inline void log_error(const std::string& m) { log(LogLevel::error, m); }
inline void log_warn(const std::string& m) { log(LogLevel::warn, m); }
inline void log_info(const std::string& m) { log(LogLevel::info, m); }
inline void log_debug(const std::string& m) { log(LogLevel::debug, m); }

}  // namespace documint::util
