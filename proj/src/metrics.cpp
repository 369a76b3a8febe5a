#include "documint/metrics.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "documint/errors.hpp"
#include "documint/util.hpp"

namespace documint::metrics {

namespace {

bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_vowel(char c) {
    switch (c) {
        case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
            return true;
        default:
            return false;
    }
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

const char* to_string(ConcisenessBand band) {
    switch (band) {
        case ConcisenessBand::too_terse: return "too_terse";
        case ConcisenessBand::ideal: return "ideal";
        case ConcisenessBand::verbose: return "verbose";
    }
    return "?";
}

const char* to_string(ClarityBand band) {
    switch (band) {
        case ClarityBand::too_complex: return "too_complex";
        case ClarityBand::ideal: return "ideal";
        case ClarityBand::too_simple: return "too_simple";
    }
    return "?";
}

std::vector<std::string> words(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_word_char(text[i])) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < text.size() && is_word_char(text[i])) ++i;
        out.emplace_back(text.substr(start, i - start));
    }
    return out;
}

std::uint64_t syllables_in_word(std::string_view word) {
    std::string w(word);
    std::transform(w.begin(), w.end(), w.begin(), lower);
    std::int64_t groups = 0;
    bool prev_vowel = false;
    for (char c : w) {
        bool v = is_vowel(c);
        if (v && !prev_vowel) ++groups;
        prev_vowel = v;
    }
    bool silent_e = !w.empty() && w.back() == 'e';
    if (silent_e && w.size() >= 3 && w[w.size() - 2] == 'l' && !is_vowel(w[w.size() - 3])) {
        silent_e = false;  // consonant + "le" keeps the syllable ("table")
    }
    if (silent_e) --groups;
    return static_cast<std::uint64_t>(std::max<std::int64_t>(groups, 1));
}

TextStats text_stats(std::string_view text) {
    if (util::trim(text).empty()) throw EmptyTextError();

    auto ws = words(text);
    std::uint64_t w = std::max<std::uint64_t>(ws.size(), 1);

    std::uint64_t sentences = 0;
    bool segment_has_content = false;
    for (char c : text) {
        if (c == '.' || c == '!' || c == '?' || c == '\n') {
            if (segment_has_content) ++sentences;
            segment_has_content = false;
        } else if (!util::is_ascii_space(c)) {
            segment_has_content = true;
        }
    }
    if (segment_has_content) ++sentences;
    std::uint64_t l = std::max<std::uint64_t>(sentences, 1);

    std::uint64_t s = 0;
    for (const auto& word : ws) s += syllables_in_word(word);
    s = std::max(s, w);

    return TextStats{w, l, s};
}

double clarity(const TextStats& stats) {
    double w = static_cast<double>(stats.words);
    double l = static_cast<double>(stats.sentences);
    double s = static_cast<double>(stats.syllables);
    return 206.835 - 1.015 * (w / l) - 84.6 * (s / w);
}

std::size_t deflate_size(std::string_view text) {
    z_stream stream{};
    // windowBits = -15 selects a raw DEFLATE stream with no container.
    if (deflateInit2(&stream, 6, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
        throw std::runtime_error("deflateInit2 failed");
    }
    std::vector<unsigned char> out(deflateBound(&stream, static_cast<uLong>(text.size())));
    stream.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(text.data()));
    stream.avail_in = static_cast<uInt>(text.size());
    stream.next_out = out.data();
    stream.avail_out = static_cast<uInt>(out.size());
    int rc = deflate(&stream, Z_FINISH);
    std::size_t produced = stream.total_out;
    deflateEnd(&stream);
    if (rc != Z_STREAM_END) throw std::runtime_error("deflate did not finish");
    return produced;
}

double conciseness(std::string_view text) {
    if (util::trim(text).empty()) throw EmptyTextError();
    double original = static_cast<double>(text.size());
    double compressed = static_cast<double>(deflate_size(text));
    return std::clamp(compressed / original, 0.0, 1.0);
}

double accuracy(const std::vector<double>& v_g, const std::vector<double>& v_e) {
    if (v_g.size() != v_e.size()) {
        throw DimensionMismatchError("embedding dimensions differ: " +
                                     std::to_string(v_g.size()) + " vs " +
                                     std::to_string(v_e.size()));
    }
    double dot = 0.0, gg = 0.0, ee = 0.0;
    for (std::size_t i = 0; i < v_g.size(); ++i) {
        dot += v_g[i] * v_e[i];
        gg += v_g[i] * v_g[i];
        ee += v_e[i] * v_e[i];
    }
    if (gg == 0.0 || ee == 0.0) throw ZeroVectorError();
    return std::clamp(dot / std::sqrt(gg * ee), -1.0, 1.0);
}

BandVerdict band_verdict(const MetricVector& m) {
    BandVerdict v;
    if (m.conciseness < 0.5) v.conciseness_band = ConcisenessBand::too_terse;
    else if (m.conciseness <= 0.6) v.conciseness_band = ConcisenessBand::ideal;
    else v.conciseness_band = ConcisenessBand::verbose;

    if (m.clarity < 50.0) v.clarity_band = ClarityBand::too_complex;
    else if (m.clarity <= 70.0) v.clarity_band = ClarityBand::ideal;
    else v.clarity_band = ClarityBand::too_simple;
    return v;
}

double relative_improvement(double base, double tuned) {
    if (!(base > 0.0)) throw NonPositiveBaseError();
    double raw = 100.0 * (tuned - base) / base;
    return std::trunc(raw * 10.0) / 10.0;
}

MetricVector aggregate(const std::vector<MetricVector>& vectors) {
    if (vectors.empty()) throw EmptyRunError();
    double acc = 0.0, con = 0.0, cla = 0.0;
    for (const auto& v : vectors) {
        acc += v.accuracy;
        con += v.conciseness;
        cla += v.clarity;
    }
    double n = static_cast<double>(vectors.size());
    return MetricVector{acc / n, con / n, cla / n};
}

}  // namespace documint::metrics
