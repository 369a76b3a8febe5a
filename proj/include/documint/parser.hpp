#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace documint::py {

struct SourceSpan {
    std::string file_id;
    std::uint32_t start_line = 0;  // 1-based
    std::uint32_t end_line = 0;
    std::size_t start_byte = 0;
    std::size_t end_byte = 0;
};

struct Param {
    std::string name;  // keeps the "*" / "**" marker for varargs
    std::optional<std::string> annotation;
    std::optional<std::string> default_value;
};

enum class QuoteStyle { triple_double, triple_single, single_double, single_single };

const char* to_string(QuoteStyle style);

struct DocstringBlock {
    std::string raw_literal;  // exact source, prefix and quotes included
    std::string content;      // dequoted + dedented (lines 2..n), blank edges trimmed
    QuoteStyle quote_style = QuoteStyle::triple_double;
    std::uint32_t line_count = 0;
};

struct FunctionRecord {
    std::string qualified_name;
    std::string signature_text;  // "def"/"async def" header through the colon
    std::vector<Param> params;
    bool is_async = false;
    bool is_method = false;  // innermost enclosing scope is a class body
    bool is_nested = false;  // some enclosing scope is another function
    std::vector<std::string> decorators;
    std::string body_source;  // everything after the colon, to the suite end
    std::optional<DocstringBlock> docstring;
    SourceSpan span;

    // Byte offsets of the docstring statement inside
    // signature_text + body_source; used by strip_docstring. Zero when
    // there is no docstring.
    std::size_t doc_rel_begin = 0;
    std::size_t doc_rel_end = 0;
};

struct ParseFailure {
    std::string reason;
    std::uint32_t line = 0;  // 1-based; 0 when no line applies
};

// Either a record list or a failure; a failed file contributes no records.
struct ScanOutcome {
    std::vector<FunctionRecord> records;
    std::optional<ParseFailure> failure;

    bool ok() const { return !failure.has_value(); }
};

// Locates every def / async def in the source, including nested functions
// and methods, in source order. The file fails as a whole (UTF-8 errors,
// foreign coding declarations, unterminated strings, inconsistent dedents,
// malformed headers); scan never throws for input defects.
ScanOutcome scan_module(std::string_view source, std::string file_id);

// Function source (signature + body, the record's span text) with the
// docstring statement removed. If the removal would leave the suite empty,
// a single `pass` is inserted at the docstring's indentation. Records
// without a docstring come back byte-identical.
std::string strip_docstring(const FunctionRecord& record);

}  // namespace documint::py
