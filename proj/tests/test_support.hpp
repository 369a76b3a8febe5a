#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <unistd.h>

#include "documint/util.hpp"

namespace documint_test {

inline std::filesystem::path fixture_dir() { return DOCUMINT_FIXTURE_DIR; }

inline std::string fixture_path(const std::string& rel) {
    return (fixture_dir() / rel).string();
}

inline std::string read_fixture(const std::string& rel) {
    return documint::util::read_file(fixture_path(rel));
}

namespace detail {
inline std::filesystem::path make_temp_dir() {
    static std::atomic<unsigned> counter{0};
    std::filesystem::path dir =
        std::filesystem::temp_directory_path() /
        ("documint_test_" + std::to_string(::getpid()) + "_" +
         std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(dir);
    return dir;
}
}  // namespace detail

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() : path(detail::make_temp_dir()) {}

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path path;
};

}  // namespace documint_test
