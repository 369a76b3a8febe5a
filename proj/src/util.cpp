#include "documint/util.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "documint/errors.hpp"

namespace documint::util {

std::string_view trim(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && is_ascii_space(text[begin])) ++begin;
    while (end > begin && is_ascii_space(text[end - 1])) --end;
    return text.substr(begin, end - begin);
}

bool glob_match(std::string_view pattern, std::string_view path) {
    // Iterative wildcard match with single-star backtracking.
    std::size_t p = 0, s = 0;
    std::size_t star = std::string_view::npos, mark = 0;
    while (s < path.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == path[s])) {
            ++p;
            ++s;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = s;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            s = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

std::string normalize_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::string line;
    auto flush_line = [&](bool add_newline) {
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line;
        if (add_newline) out += '\n';
        line.clear();
    };
    for (char c : text) {
        if (c == '\n') {
            flush_line(true);
        } else if (c == ' ' || c == '\t') {
            if (!line.empty() && line.back() != ' ') line += ' ';
            else if (line.empty()) line += ' ';
            // runs collapse: skip when the previous char is already a space
        } else {
            line += c;
        }
    }
    flush_line(false);
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed for " + path.string());
    return std::move(buf).str();
}

std::size_t write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
    static std::atomic<unsigned> counter{0};
    std::filesystem::path dir = path.parent_path();
    if (dir.empty()) dir = ".";
    std::filesystem::path tmp =
        dir / (path.filename().string() + ".tmp." + std::to_string(counter.fetch_add(1)));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("rename to " + path.string() + " failed: " + ec.message());
    }
    return bytes.size();
}

namespace {
std::atomic<int> g_level{static_cast<int>(LogLevel::warn)};
const char* level_tag(LogLevel level) {
    switch (level) {
        case LogLevel::error: return "error";
        case LogLevel::warn: return "warn";
        case LogLevel::info: return "info";
        case LogLevel::debug: return "debug";
    }
    return "?";
}
}  // namespace

void set_log_level(LogLevel level) { g_level.store(static_cast<int>(level)); }

LogLevel log_level() { return static_cast<LogLevel>(g_level.load()); }

void log(LogLevel level, const std::string& message) {
    if (static_cast<int>(level) > g_level.load()) return;
    std::fprintf(stderr, "documint [%s] %s\n", level_tag(level), message.c_str());
}

}  // namespace documint::util
