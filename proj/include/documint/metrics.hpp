#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace documint::metrics {

// The w / l / s counts behind the clarity formula.
struct TextStats {
    std::uint64_t words = 0;
    std::uint64_t sentences = 0;
    std::uint64_t syllables = 0;

    bool operator==(const TextStats&) const = default;
};

struct MetricVector {
    double accuracy = 0.0;
    double conciseness = 0.0;
    double clarity = 0.0;

    bool operator==(const MetricVector&) const = default;
};

enum class ConcisenessBand { too_terse, ideal, verbose };
enum class ClarityBand { too_complex, ideal, too_simple };

struct BandVerdict {
    ConcisenessBand conciseness_band = ConcisenessBand::ideal;
    ClarityBand clarity_band = ClarityBand::ideal;

    bool operator==(const BandVerdict&) const = default;
};

const char* to_string(ConcisenessBand band);
const char* to_string(ClarityBand band);

// Words are maximal runs of ASCII alphanumerics; "param_1" counts as two.
std::vector<std::string> words(std::string_view text);

// Counting rules: sentences end at '.', '!', '?' or a newline with empty
// segments dropped (floor 1); syllables are vowel groups with a trailing
// silent-e rule (floor 1 per word); syllable total is floored at the word
// count. Throws EmptyTextError on whitespace-only input.
TextStats text_stats(std::string_view text);

std::uint64_t syllables_in_word(std::string_view word);

// Flesch reading ease: 206.835 - 1.015*(w/l) - 84.6*(s/w). Not clamped;
// negative values pass through.
double clarity(const TextStats& stats);

// Raw DEFLATE (RFC 1951, level 6, no zlib/gzip container) byte length.
std::size_t deflate_size(std::string_view text);

// Compressed size over original size, clamped into [0, 1].
double conciseness(std::string_view text);

// Cosine similarity, clamped into [-1, 1]. Throws DimensionMismatchError /
// ZeroVectorError.
double accuracy(const std::vector<double>& v_g, const std::vector<double>& v_e);

// Band boundaries are inclusive on the ideal side: [0.5, 0.6] and [50, 70].
BandVerdict band_verdict(const MetricVector& m);

// 100*(tuned - base)/base, truncated toward zero at one decimal place.
// Throws NonPositiveBaseError when base <= 0.
double relative_improvement(double base, double tuned);

// Component-wise arithmetic mean. Throws EmptyRunError on an empty list.
MetricVector aggregate(const std::vector<MetricVector>& vectors);

}  // namespace documint::metrics
