#include "documint/parser.hpp"

#include <algorithm>
#include <cstddef>

#include "documint/util.hpp"

namespace documint::py {

namespace {

// Thrown internally for any input defect; scan_module converts it into a
// ParseFailure so callers never see exceptions for bad files.
struct LexError {
    std::string reason;
    std::uint32_t line;
};

bool is_name_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}

bool is_name_char(unsigned char c) { return is_name_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_blank_char(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

bool line_is_blank(std::string_view line) {
    for (char c : line) {
        if (!is_blank_char(c)) return false;
    }
    return true;
}

bool is_string_prefix(std::string_view name) {
    if (name.empty() || name.size() > 3) return false;
    for (char c : name) {
        switch (c) {
            case 'r': case 'R': case 'b': case 'B':
            case 'u': case 'U': case 'f': case 'F':
                break;
            default:
                return false;
        }
    }
    return true;
}

// Docstrings may carry no prefix or a raw/unicode marker; bytes and
// f-strings are not constant string literals.
bool is_docstring_prefix(std::string_view prefix) {
    if (prefix.empty()) return true;
    if (prefix.size() != 1) return false;
    char c = prefix[0];
    return c == 'r' || c == 'R' || c == 'u' || c == 'U';
}

enum class TokType { Name, Number, String, Op, Comment, Newline, Indent, Dedent, EndMarker };

struct Token {
    TokType type;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::uint32_t line = 0;      // 1-based line of the first byte
    std::uint32_t end_line = 0;  // 1-based line of the last byte
    std::uint32_t aux = 0;       // Indent: new width; String: prefix length
};

bool is_real(const Token& t) {
    return t.type == TokType::Name || t.type == TokType::Number ||
           t.type == TokType::String || t.type == TokType::Op;
}

struct OpenBracket {
    char ch;
    std::uint32_t line;
};

class Tokenizer {
public:
    Tokenizer(std::string_view src, std::vector<Token>& out) : src_(src), out_(out) {}

    void run() {
        indents_.push_back(0);
        while (pos_ < src_.size()) {
            if (at_line_start_ && brackets_.empty()) {
                if (!handle_line_start()) continue;
            }
            scan_token();
        }
        if (!brackets_.empty()) {
            throw LexError{std::string("'") + brackets_.back().ch + "' was never closed",
                           brackets_.back().line};
        }
        if (!at_line_start_) emit(TokType::Newline, src_.size(), src_.size());
        while (indents_.size() > 1) {
            indents_.pop_back();
            emit(TokType::Dedent, src_.size(), src_.size());
        }
        emit(TokType::EndMarker, src_.size(), src_.size());
    }

private:
    void emit(TokType type, std::size_t begin, std::size_t end, std::uint32_t aux = 0) {
        Token t;
        t.type = type;
        t.begin = begin;
        t.end = end;
        t.line = line_;
        t.end_line = line_;
        t.aux = aux;
        out_.push_back(t);
    }

    // Returns false when the line was blank or comment-only and has been
    // fully consumed (such lines never touch the indent stack).
    bool handle_line_start() {
        std::size_t p = pos_;
        std::uint32_t width = 0;
        while (p < src_.size()) {
            char c = src_[p];
            if (c == ' ') ++width;
            else if (c == '\t') width = (width / 8 + 1) * 8;
            else if (c == '\f') width = 0;
            else if (c == '\r') { /* stray CR, no width */ }
            else break;
            ++p;
        }
        if (p >= src_.size()) {
            pos_ = p;
            return false;
        }
        char c = src_[p];
        if (c == '\n') {
            pos_ = p + 1;
            ++line_;
            return false;
        }
        if (c == '#') {
            std::size_t eol = src_.find('\n', p);
            if (eol == std::string_view::npos) eol = src_.size();
            emit(TokType::Comment, p, eol);
            if (eol < src_.size()) {
                ++line_;
                pos_ = eol + 1;
            } else {
                pos_ = eol;
            }
            return false;
        }
        if (width > indents_.back()) {
            indents_.push_back(width);
            emit(TokType::Indent, pos_, p, width);
        } else {
            while (width < indents_.back()) {
                indents_.pop_back();
                emit(TokType::Dedent, p, p);
            }
            if (width != indents_.back()) {
                throw LexError{"unindent does not match any outer indentation level", line_};
            }
        }
        at_line_start_ = false;
        pos_ = p;
        return true;
    }

    void scan_token() {
        char c = src_[pos_];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
            ++pos_;
            return;
        }
        if (c == '\n') {
            if (brackets_.empty()) {
                emit(TokType::Newline, pos_, pos_ + 1);
                at_line_start_ = true;
            }
            ++pos_;
            ++line_;
            return;
        }
        if (c == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n') {
            pos_ += 2;
            ++line_;
            return;
        }
        if (c == '#') {
            std::size_t eol = src_.find('\n', pos_);
            if (eol == std::string_view::npos) eol = src_.size();
            emit(TokType::Comment, pos_, eol);
            pos_ = eol;
            return;
        }
        if (c == '"' || c == '\'') {
            scan_string(pos_, pos_);
            return;
        }
        if (is_name_start(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && is_name_char(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
            }
            std::string_view name = src_.substr(start, pos_ - start);
            if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'') &&
                is_string_prefix(name)) {
                scan_string(start, pos_);
                return;
            }
            emit(TokType::Name, start, pos_);
            return;
        }
        if (is_digit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() &&
             is_digit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            std::size_t start = pos_;
            while (pos_ < src_.size()) {
                char d = src_[pos_];
                if (is_digit(static_cast<unsigned char>(d)) || d == '.' || d == '_' ||
                    (d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z')) {
                    ++pos_;
                } else {
                    break;
                }
            }
            emit(TokType::Number, start, pos_);
            return;
        }
        if (c == '(' || c == '[' || c == '{') {
            brackets_.push_back({c, line_});
        } else if (c == ')' || c == ']' || c == '}') {
            if (brackets_.empty()) {
                throw LexError{std::string("unmatched '") + c + "'", line_};
            }
            brackets_.pop_back();
        }
        emit(TokType::Op, pos_, pos_ + 1);
        ++pos_;
    }

    void scan_string(std::size_t prefix_begin, std::size_t quote_begin) {
        std::uint32_t start_line = line_;
        char quote = src_[quote_begin];
        bool triple = quote_begin + 2 < src_.size() && src_[quote_begin + 1] == quote &&
                      src_[quote_begin + 2] == quote;
        std::size_t p = quote_begin + (triple ? 3 : 1);
        while (true) {
            if (p >= src_.size()) {
                throw LexError{triple ? "unterminated triple-quoted string literal"
                                      : "unterminated string literal",
                               start_line};
            }
            char c = src_[p];
            if (c == '\\') {
                if (p + 1 < src_.size() && src_[p + 1] == '\n') ++line_;
                p += 2;
                continue;
            }
            if (c == '\n') {
                if (!triple) throw LexError{"unterminated string literal", start_line};
                ++line_;
                ++p;
                continue;
            }
            if (c == quote) {
                if (!triple) {
                    ++p;
                    break;
                }
                if (p + 2 < src_.size() && src_[p + 1] == quote && src_[p + 2] == quote) {
                    p += 3;
                    break;
                }
                ++p;
                continue;
            }
            ++p;
        }
        Token t;
        t.type = TokType::String;
        t.begin = prefix_begin;
        t.end = p;
        t.line = start_line;
        t.end_line = line_;
        t.aux = static_cast<std::uint32_t>(quote_begin - prefix_begin);
        out_.push_back(t);
        pos_ = p;
    }

    std::string_view src_;
    std::vector<Token>& out_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1;
    bool at_line_start_ = true;
    std::vector<std::uint32_t> indents_;
    std::vector<OpenBracket> brackets_;
};

// --- whole-file validation -------------------------------------------------

std::optional<ParseFailure> check_utf8(std::string_view src) {
    std::uint32_t line = 1;
    std::size_t i = 0;
    while (i < src.size()) {
        unsigned char c = src[i];
        if (c == '\n') ++line;
        if (c < 0x80) {
            ++i;
            continue;
        }
        std::size_t extra;
        unsigned char low = 0x80, high = 0xBF;
        if (c >= 0xC2 && c <= 0xDF) extra = 1;
        else if (c == 0xE0) { extra = 2; low = 0xA0; }
        else if (c >= 0xE1 && c <= 0xEC) extra = 2;
        else if (c == 0xED) { extra = 2; high = 0x9F; }
        else if (c >= 0xEE && c <= 0xEF) extra = 2;
        else if (c == 0xF0) { extra = 3; low = 0x90; }
        else if (c >= 0xF1 && c <= 0xF3) extra = 3;
        else if (c == 0xF4) { extra = 3; high = 0x8F; }
        else return ParseFailure{"invalid UTF-8 byte", line};
        if (i + extra >= src.size()) return ParseFailure{"invalid UTF-8 byte", line};
        for (std::size_t k = 1; k <= extra; ++k) {
            unsigned char cont = src[i + k];
            unsigned char lo = (k == 1) ? low : 0x80;
            unsigned char hi = (k == 1) ? high : 0xBF;
            if (cont < lo || cont > hi) return ParseFailure{"invalid UTF-8 byte", line};
        }
        i += extra + 1;
    }
    return std::nullopt;
}

bool encoding_accepted(std::string_view name) {
    std::string lower(name);
    for (auto& c : lower) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return lower == "utf-8" || lower == "utf8" || lower == "ascii" || lower == "us-ascii";
}

// A comment on line 1 or 2 containing coding[:=] <name> declares the file
// encoding; anything but UTF-8/ASCII spellings fails the file.
std::optional<ParseFailure> check_coding_declaration(std::string_view src) {
    std::size_t line_begin = 0;
    for (std::uint32_t line_no = 1; line_no <= 2 && line_begin < src.size(); ++line_no) {
        std::size_t eol = src.find('\n', line_begin);
        if (eol == std::string_view::npos) eol = src.size();
        std::string_view line = src.substr(line_begin, eol - line_begin);
        std::size_t i = 0;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\f')) ++i;
        if (i < line.size() && line[i] == '#') {
            std::size_t at = line.find("coding", i);
            if (at != std::string_view::npos && at + 6 < line.size() &&
                (line[at + 6] == ':' || line[at + 6] == '=')) {
                std::size_t v = at + 7;
                while (v < line.size() && (line[v] == ' ' || line[v] == '\t')) ++v;
                std::size_t start = v;
                while (v < line.size()) {
                    char c = line[v];
                    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.') {
                        ++v;
                    } else {
                        break;
                    }
                }
                std::string_view name = line.substr(start, v - start);
                if (!name.empty() && !encoding_accepted(name)) {
                    return ParseFailure{
                        "unsupported encoding declaration \"" + std::string(name) + "\"",
                        line_no};
                }
            }
        }
        line_begin = eol + 1;
    }
    return std::nullopt;
}

// --- line table --------------------------------------------------------------

struct LineTable {
    std::vector<std::size_t> begins;
    std::vector<bool> content;  // line carries part of a real token
    std::vector<bool> comment;  // line carries a comment token
    std::string_view src;

    std::size_t count() const { return begins.size(); }

    std::size_t line_end(std::uint32_t line) const {
        return line < begins.size() ? begins[line] : src.size();
    }

    bool is_content(std::uint32_t line) const { return content[line - 1]; }

    bool is_comment_only(std::uint32_t line) const {
        return comment[line - 1] && !content[line - 1];
    }

    std::uint32_t indent_width(std::uint32_t line) const {
        std::uint32_t width = 0;
        for (std::size_t i = begins[line - 1]; i < src.size(); ++i) {
            char c = src[i];
            if (c == ' ') ++width;
            else if (c == '\t') width = (width / 8 + 1) * 8;
            else if (c == '\f') width = 0;
            else if (c == '\r') { /* ignore */ }
            else break;
        }
        return width;
    }
};

LineTable build_line_table(std::string_view src, const std::vector<Token>& tokens) {
    LineTable table;
    table.src = src;
    table.begins.push_back(0);
    for (std::size_t i = 0; i + 1 < src.size(); ++i) {
        if (src[i] == '\n') table.begins.push_back(i + 1);
    }
    table.content.assign(table.begins.size(), false);
    table.comment.assign(table.begins.size(), false);
    for (const auto& t : tokens) {
        if (t.type == TokType::Comment) {
            if (t.line >= 1 && t.line <= table.begins.size()) table.comment[t.line - 1] = true;
        } else if (is_real(t)) {
            std::uint32_t limit = static_cast<std::uint32_t>(table.begins.size());
            for (std::uint32_t line = t.line; line <= t.end_line && line <= limit; ++line) {
                table.content[line - 1] = true;
            }
        }
    }
    return table;
}

// --- docstring helpers ---------------------------------------------------------

std::string clean_docstring_content(std::string_view inner) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (true) {
        std::size_t nl = inner.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(inner.substr(start));
            break;
        }
        lines.push_back(inner.substr(start, nl - start));
        start = nl + 1;
    }

    std::vector<std::string> cleaned;
    cleaned.reserve(lines.size());
    if (lines.size() > 1) {
        // Common leading-whitespace prefix across the non-blank lines 2..n;
        // the first line stays verbatim.
        std::optional<std::string_view> margin;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            if (line_is_blank(lines[i])) continue;
            std::size_t ws = 0;
            while (ws < lines[i].size() && (lines[i][ws] == ' ' || lines[i][ws] == '\t')) ++ws;
            std::string_view run = lines[i].substr(0, ws);
            if (!margin) {
                margin = run;
            } else {
                std::size_t common = 0;
                while (common < margin->size() && common < run.size() &&
                       (*margin)[common] == run[common]) {
                    ++common;
                }
                margin = margin->substr(0, common);
            }
        }
        std::size_t cut = margin ? margin->size() : 0;
        cleaned.emplace_back(lines[0]);
        for (std::size_t i = 1; i < lines.size(); ++i) {
            if (line_is_blank(lines[i])) cleaned.emplace_back();
            else cleaned.emplace_back(lines[i].substr(cut));
        }
    } else {
        cleaned.emplace_back(lines[0]);
    }

    std::size_t first = 0;
    std::size_t last = cleaned.size();
    while (first < last && line_is_blank(cleaned[first])) ++first;
    while (last > first && line_is_blank(cleaned[last - 1])) --last;

    std::string out;
    for (std::size_t i = first; i < last; ++i) {
        if (i > first) out += '\n';
        out += cleaned[i];
    }
    return out;
}

DocstringBlock make_docstring_block(std::string_view raw_literal, std::size_t prefix_len) {
    DocstringBlock block;
    block.raw_literal = std::string(raw_literal);
    std::string_view rest = raw_literal.substr(prefix_len);
    std::size_t quote_len;
    if (rest.rfind("\"\"\"", 0) == 0) {
        block.quote_style = QuoteStyle::triple_double;
        quote_len = 3;
    } else if (rest.rfind("'''", 0) == 0) {
        block.quote_style = QuoteStyle::triple_single;
        quote_len = 3;
    } else if (rest[0] == '"') {
        block.quote_style = QuoteStyle::single_double;
        quote_len = 1;
    } else {
        block.quote_style = QuoteStyle::single_single;
        quote_len = 1;
    }
    std::string_view inner = rest.substr(quote_len, rest.size() - 2 * quote_len);
    block.content = clean_docstring_content(inner);
    block.line_count = 0;
    if (!block.content.empty()) {
        block.line_count = 1;
        for (char c : block.content) {
            if (c == '\n') ++block.line_count;
        }
    }
    return block;
}

// --- structural pass ------------------------------------------------------------

struct Scope {
    enum class Kind { Cls, Fn };
    Kind kind;
    std::string name;
    std::size_t level;  // indent-stack depth that keeps this scope alive
    int record;         // Fn scopes: index into the record list
    bool awaiting_first_stmt;
};

class Structurizer {
public:
    Structurizer(std::string_view src, const std::vector<Token>& tokens, const LineTable& lines,
                 std::string file_id)
        : src_(src), tokens_(tokens), lines_(lines), file_id_(std::move(file_id)) {}

    std::vector<FunctionRecord> run() {
        std::size_t i = 0;
        bool stmt_start = true;
        while (i < tokens_.size()) {
            const Token& t = tokens_[i];
            switch (t.type) {
                case TokType::Newline:
                    stmt_start = true;
                    ++i;
                    break;
                case TokType::Indent:
                    indent_stack_.push_back(t.aux);
                    stmt_start = true;
                    ++i;
                    break;
                case TokType::Dedent:
                    indent_stack_.pop_back();
                    close_scopes();
                    stmt_start = true;
                    ++i;
                    break;
                case TokType::Comment:
                case TokType::EndMarker:
                    ++i;
                    break;
                default:
                    note_real_token(t);
                    if (stmt_start) {
                        i = handle_statement(i);
                        stmt_start = false;
                    } else {
                        if (t.type == TokType::Op && text_of(t) == ";") stmt_start = true;
                        ++i;
                    }
                    break;
            }
        }
        while (!scopes_.empty()) pop_scope();
        return std::move(records_);
    }

private:
    std::string_view text_of(const Token& t) const {
        return src_.substr(t.begin, t.end - t.begin);
    }

    void note_real_token(const Token& t) {
        if (is_real(t)) last_real_line_ = std::max(last_real_line_, t.end_line);
    }

    std::size_t next_significant(std::size_t i) const {
        while (i < tokens_.size() && tokens_[i].type == TokType::Comment) ++i;
        return i;
    }

    void close_scopes() {
        while (!scopes_.empty() && scopes_.back().level > indent_stack_.size()) pop_scope();
    }

    void pop_scope() {
        Scope scope = scopes_.back();
        scopes_.pop_back();
        if (scope.kind == Scope::Kind::Fn && scope.record >= 0) {
            finalize_record(records_[static_cast<std::size_t>(scope.record)]);
        }
    }

    // The first statement of the innermost pending suite decides the
    // docstring; any statement head consumes the slot.
    void take_first_statement_slot(std::size_t i) {
        if (scopes_.empty() || !scopes_.back().awaiting_first_stmt) return;
        Scope& scope = scopes_.back();
        scope.awaiting_first_stmt = false;
        const Token& t = tokens_[i];
        if (scope.kind == Scope::Kind::Fn && scope.record >= 0 &&
            t.type == TokType::String && string_token_is_docstring(i)) {
            attach_docstring(records_[static_cast<std::size_t>(scope.record)], t);
        }
    }

    std::size_t handle_statement(std::size_t i) {
        take_first_statement_slot(i);
        const Token& t = tokens_[i];
        if (t.type == TokType::Op && text_of(t) == "@") return consume_decorator(i);
        if (t.type == TokType::Name) {
            std::string_view word = text_of(t);
            if (word == "def") return consume_function(i, i, false);
            if (word == "async") {
                std::size_t j = next_significant(i + 1);
                if (j < tokens_.size() && tokens_[j].type == TokType::Name &&
                    text_of(tokens_[j]) == "def") {
                    return consume_function(i, j, true);
                }
            }
            if (word == "class") return consume_class(i);
        }
        pending_decorators_.clear();
        return i + 1;
    }

    // Consumes "@..." through the end of its logical line; returns the index
    // of the terminating Newline (left for the main loop).
    std::size_t consume_decorator(std::size_t i) {
        std::size_t begin = tokens_[i].begin;
        std::size_t last_end = tokens_[i].end;
        ++i;
        while (i < tokens_.size() && tokens_[i].type != TokType::Newline &&
               tokens_[i].type != TokType::EndMarker) {
            if (is_real(tokens_[i])) {
                note_real_token(tokens_[i]);
                last_end = tokens_[i].end;
            }
            ++i;
        }
        pending_decorators_.emplace_back(src_.substr(begin, last_end - begin));
        return i;
    }

    std::size_t consume_class(std::size_t i) {
        pending_decorators_.clear();
        std::uint32_t header_line = tokens_[i].line;
        std::size_t j = next_significant(i + 1);
        if (j >= tokens_.size() || tokens_[j].type != TokType::Name) {
            throw LexError{"malformed class header", header_line};
        }
        std::string name(text_of(tokens_[j]));
        int depth = 0;
        ++j;
        while (j < tokens_.size() && tokens_[j].type != TokType::EndMarker) {
            const Token& t = tokens_[j];
            if (t.type == TokType::Op) {
                std::string_view op = text_of(t);
                if (op == "(" || op == "[" || op == "{") ++depth;
                else if (op == ")" || op == "]" || op == "}") --depth;
                else if (op == ":" && depth == 0) break;
            }
            note_real_token(t);
            ++j;
        }
        if (j >= tokens_.size() || tokens_[j].type != TokType::Op) {
            throw LexError{"malformed class header", header_line};
        }
        note_real_token(tokens_[j]);
        ++j;
        std::size_t k = next_significant(j);
        if (k < tokens_.size() && tokens_[k].type == TokType::Newline) {
            std::size_t after = next_significant(k + 1);
            if (after < tokens_.size() && tokens_[after].type == TokType::Indent) {
                // level counts the Indent the main loop is about to push
                scopes_.push_back(
                    Scope{Scope::Kind::Cls, name, indent_stack_.size() + 1, -1, false});
            }
            return k;
        }
        return j;  // inline class suite; no def can live there
    }

    std::size_t consume_function(std::size_t start_idx, std::size_t def_idx, bool is_async) {
        const Token& start_tok = tokens_[start_idx];
        std::uint32_t header_line = start_tok.line;

        FunctionRecord record;
        record.is_async = is_async;
        record.decorators = std::move(pending_decorators_);
        pending_decorators_.clear();
        record.span.file_id = file_id_;
        record.span.start_line = header_line;
        record.span.start_byte = start_tok.begin;
        for (const auto& scope : scopes_) {
            if (scope.kind == Scope::Kind::Fn) record.is_nested = true;
        }
        record.is_method = !scopes_.empty() && scopes_.back().kind == Scope::Kind::Cls;

        std::size_t j = next_significant(def_idx + 1);
        if (j >= tokens_.size() || tokens_[j].type != TokType::Name) {
            throw LexError{"malformed def header: missing function name", header_line};
        }
        std::string name(text_of(tokens_[j]));
        std::string qualified;
        for (const auto& scope : scopes_) {
            qualified += scope.name;
            qualified += '.';
        }
        qualified += name;
        record.qualified_name = std::move(qualified);
        note_real_token(tokens_[j]);
        ++j;

        j = next_significant(j);
        if (j >= tokens_.size() || tokens_[j].type != TokType::Op || text_of(tokens_[j]) != "(") {
            throw LexError{"malformed def header: missing parameter list", header_line};
        }
        j = parse_params(j, record);

        // Header colon at bracket depth zero (skips "->" annotations).
        int depth = 0;
        std::size_t colon = std::string::npos;
        while (j < tokens_.size() && tokens_[j].type != TokType::EndMarker) {
            const Token& t = tokens_[j];
            if (t.type == TokType::Op) {
                std::string_view op = text_of(t);
                if (op == "(" || op == "[" || op == "{") ++depth;
                else if (op == ")" || op == "]" || op == "}") --depth;
                else if (op == ":" && depth == 0) {
                    colon = j;
                    break;
                }
            }
            note_real_token(t);
            ++j;
        }
        if (colon == std::string::npos) {
            throw LexError{"malformed def header: missing colon", header_line};
        }
        note_real_token(tokens_[colon]);
        std::size_t sig_end = tokens_[colon].end;
        record.signature_text =
            std::string(src_.substr(record.span.start_byte, sig_end - record.span.start_byte));
        records_.push_back(std::move(record));
        int record_idx = static_cast<int>(records_.size() - 1);

        std::size_t k = next_significant(colon + 1);
        if (k < tokens_.size() && tokens_[k].type != TokType::Newline &&
            tokens_[k].type != TokType::EndMarker) {
            // Inline suite: everything lives on this logical line.
            if (tokens_[k].type == TokType::String && string_token_is_docstring(k)) {
                attach_docstring(records_[static_cast<std::size_t>(record_idx)], tokens_[k]);
            }
            std::size_t m = k;
            while (m < tokens_.size() && tokens_[m].type != TokType::Newline &&
                   tokens_[m].type != TokType::EndMarker) {
                note_real_token(tokens_[m]);
                ++m;
            }
            finalize_record(records_[static_cast<std::size_t>(record_idx)]);
            return m;
        }
        if (k < tokens_.size() && tokens_[k].type == TokType::Newline) {
            std::size_t after = next_significant(k + 1);
            if (after < tokens_.size() && tokens_[after].type == TokType::Indent) {
                scopes_.push_back(Scope{Scope::Kind::Fn, name, indent_stack_.size() + 1,
                                        record_idx, true});
                return k;
            }
            // No indented suite follows; tolerated so that stripped
            // functions whose suite is only comments keep re-parsing.
            finalize_record(records_[static_cast<std::size_t>(record_idx)]);
            return k;
        }
        throw LexError{"expected an indented block", header_line};
    }

    // Parses "(...)" starting at the open paren; returns the index just past
    // the closing paren. Fills record.params.
    std::size_t parse_params(std::size_t open_idx, FunctionRecord& record) {
        note_real_token(tokens_[open_idx]);
        std::size_t j = open_idx + 1;
        int depth = 1;
        std::vector<std::vector<std::size_t>> elements(1);
        while (j < tokens_.size() && tokens_[j].type != TokType::EndMarker) {
            const Token& t = tokens_[j];
            if (t.type == TokType::Comment) {
                ++j;
                continue;
            }
            if (t.type == TokType::Op) {
                std::string_view op = text_of(t);
                if (op == "(" || op == "[" || op == "{") {
                    ++depth;
                } else if (op == ")" || op == "]" || op == "}") {
                    --depth;
                    if (depth == 0) {
                        note_real_token(t);
                        ++j;
                        break;
                    }
                } else if (op == "," && depth == 1) {
                    elements.emplace_back();
                    note_real_token(t);
                    ++j;
                    continue;
                }
            }
            if (is_real(t)) {
                note_real_token(t);
                elements.back().push_back(j);
            }
            ++j;
        }
        for (const auto& element : elements) {
            if (!element.empty()) parse_one_param(element, record);
        }
        return j;
    }

    void parse_one_param(const std::vector<std::size_t>& idxs, FunctionRecord& record) {
        std::size_t pos = 0;
        int stars = 0;
        while (pos < idxs.size() && tokens_[idxs[pos]].type == TokType::Op &&
               text_of(tokens_[idxs[pos]]) == "*") {
            ++stars;
            ++pos;
        }
        if (pos < idxs.size() && tokens_[idxs[pos]].type == TokType::Op &&
            text_of(tokens_[idxs[pos]]) == "/") {
            return;  // positional-only marker
        }
        if (pos >= idxs.size()) return;  // bare "*" keyword-only marker
        if (tokens_[idxs[pos]].type != TokType::Name) return;

        Param param;
        param.name = std::string(static_cast<std::size_t>(stars), '*') +
                     std::string(text_of(tokens_[idxs[pos]]));
        ++pos;

        if (pos < idxs.size() && tokens_[idxs[pos]].type == TokType::Op &&
            text_of(tokens_[idxs[pos]]) == ":") {
            ++pos;
            // Annotation runs to a top-level '='; ':' or '=' inside nested
            // brackets or a lambda body stay part of it.
            int depth = 0;
            std::size_t first = pos;
            std::size_t last = pos;
            bool any = false;
            while (pos < idxs.size()) {
                const Token& t = tokens_[idxs[pos]];
                if (t.type == TokType::Op) {
                    std::string_view op = text_of(t);
                    if (op == "(" || op == "[" || op == "{") ++depth;
                    else if (op == ")" || op == "]" || op == "}") --depth;
                    else if (op == "=" && depth == 0) break;
                }
                last = pos;
                any = true;
                ++pos;
            }
            if (any) {
                param.annotation = std::string(
                    src_.substr(tokens_[idxs[first]].begin,
                                tokens_[idxs[last]].end - tokens_[idxs[first]].begin));
            }
        }
        if (pos < idxs.size() && tokens_[idxs[pos]].type == TokType::Op &&
            text_of(tokens_[idxs[pos]]) == "=") {
            ++pos;
            if (pos < idxs.size()) {
                param.default_value = std::string(
                    src_.substr(tokens_[idxs[pos]].begin,
                                tokens_[idxs.back()].end - tokens_[idxs[pos]].begin));
            }
        }
        record.params.push_back(std::move(param));
    }

    bool string_token_is_docstring(std::size_t idx) const {
        const Token& t = tokens_[idx];
        std::string_view text = text_of(t);
        if (!is_docstring_prefix(text.substr(0, t.aux))) return false;
        std::size_t j = next_significant(idx + 1);
        if (j >= tokens_.size()) return true;
        const Token& after = tokens_[j];
        if (after.type == TokType::Newline || after.type == TokType::EndMarker ||
            after.type == TokType::Dedent) {
            return true;
        }
        if (after.type == TokType::Op && text_of(after) == ";") return true;
        return false;  // implicit concatenation, attribute access, operators...
    }

    void attach_docstring(FunctionRecord& record, const Token& literal) {
        record.docstring = make_docstring_block(text_of(literal), literal.aux);
        record.doc_rel_begin = literal.begin - record.span.start_byte;
        record.doc_rel_end = literal.end - record.span.start_byte;
    }

    void finalize_record(FunctionRecord& record) {
        std::uint32_t header_indent = lines_.indent_width(record.span.start_line);
        std::uint32_t end_line = std::max(last_real_line_, record.span.start_line);
        // Trailing comment lines indented deeper than the header belong to
        // the suite; the scan stops at the next line holding real code.
        for (std::uint32_t row = end_line + 1; row <= lines_.count(); ++row) {
            if (lines_.is_content(row)) break;
            if (lines_.is_comment_only(row) && lines_.indent_width(row) > header_indent) {
                end_line = row;
            }
        }
        record.span.end_line = end_line;
        record.span.end_byte = lines_.line_end(end_line);
        std::size_t sig_end = record.span.start_byte + record.signature_text.size();
        record.body_source =
            std::string(src_.substr(sig_end, record.span.end_byte - sig_end));
    }

    std::string_view src_;
    const std::vector<Token>& tokens_;
    const LineTable& lines_;
    std::string file_id_;
    std::vector<FunctionRecord> records_;
    std::vector<Scope> scopes_;
    std::vector<std::uint32_t> indent_stack_{0};
    std::vector<std::string> pending_decorators_;
    std::uint32_t last_real_line_ = 1;
};

}  // namespace

const char* to_string(QuoteStyle style) {
    switch (style) {
        case QuoteStyle::triple_double: return "triple-double";
        case QuoteStyle::triple_single: return "triple-single";
        case QuoteStyle::single_double: return "single-double";
        case QuoteStyle::single_single: return "single-single";
    }
    return "?";
}

ScanOutcome scan_module(std::string_view source, std::string file_id) {
    ScanOutcome outcome;
    if (auto bad = check_utf8(source)) {
        outcome.failure = std::move(bad);
        return outcome;
    }
    if (auto bad = check_coding_declaration(source)) {
        outcome.failure = std::move(bad);
        return outcome;
    }
    std::vector<Token> tokens;
    try {
        Tokenizer(source, tokens).run();
        LineTable lines = build_line_table(source, tokens);
        Structurizer structurizer(source, tokens, lines, std::move(file_id));
        outcome.records = structurizer.run();
    } catch (const LexError& err) {
        outcome.records.clear();
        outcome.failure = ParseFailure{err.reason, err.line};
    }
    return outcome;
}

std::string strip_docstring(const FunctionRecord& record) {
    std::string text = record.signature_text + record.body_source;
    if (!record.docstring.has_value()) return text;

    const std::size_t sig_len = record.signature_text.size();
    const std::size_t db = record.doc_rel_begin;
    const std::size_t de = record.doc_rel_end;

    // The removal swallows a trailing ';' separator plus its padding.
    std::size_t removal_end = de;
    {
        std::size_t q = de;
        while (q < text.size() && (text[q] == ' ' || text[q] == '\t')) ++q;
        if (q < text.size() && text[q] == ';') {
            ++q;
            while (q < text.size() && (text[q] == ' ' || text[q] == '\t')) ++q;
            removal_end = q;
        }
    }

    std::size_t line_start = 0;
    if (db > 0) {
        std::size_t nl = text.rfind('\n', db - 1);
        line_start = (nl == std::string::npos) ? 0 : nl + 1;
    }
    std::size_t eol = text.find('\n', removal_end);
    std::size_t line_end = (eol == std::string::npos) ? text.size() : eol + 1;

    std::string_view view(text);
    std::string_view prefix = view.substr(line_start, db - line_start);
    std::string_view rest =
        view.substr(removal_end, ((eol == std::string::npos) ? text.size() : eol) - removal_end);
    bool own_line = line_start >= sig_len && line_is_blank(prefix);

    if (own_line && util::trim(rest).empty()) {
        // Remove the docstring's whole lines; revive the suite with `pass`
        // only when nothing at all (not even a comment) remains.
        std::string candidate = text.substr(0, line_start) + text.substr(line_end);
        if (util::trim(std::string_view(candidate).substr(sig_len)).empty()) {
            return text.substr(0, line_start) + std::string(prefix) + "pass\n" +
                   text.substr(line_end);
        }
        return candidate;
    }
    std::string candidate = text.substr(0, db) + text.substr(removal_end);
    if (util::trim(std::string_view(candidate).substr(sig_len)).empty()) {
        return text.substr(0, db) + "pass" + text.substr(removal_end);
    }
    return candidate;
}

}  // namespace documint::py
