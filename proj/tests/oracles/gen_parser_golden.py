"""Generate the parser golden fixture from the corpus directory.

Derives every record from CPython's own ast + tokenize modules so the C++
extractor is checked against the reference interpreter. The golden schema
is an array of per-file entries:

  {"file": name, "records": [FunctionRecord...]}          on success
  {"file": name, "parse_failure": {"line": N}}            on failure

FunctionRecord fields: qualified_name, signature_text, params
[{name, annotation, default}], is_async, is_method, decorators,
body_source, docstring (null or {raw_literal, content, quote_style,
line_count}), span {start_line, end_line, start_byte, end_byte}.

Pinned extraction semantics mirrored here:
  - span starts at the 'def' / 'async' keyword (decorators excluded) and
    ends after the last suite line, where trailing comment lines indented
    deeper than the header still belong to the suite;
  - signature_text runs through the header colon; body_source is the rest
    of the span, so signature_text + body_source == span bytes;
  - a docstring is a single string literal statement (no implicit
    concatenation) with prefix '', 'r' or 'u';
  - docstring content = quotes removed, common leading whitespace of
    lines 2..n removed (blank lines ignored for the margin), first line
    kept verbatim, then leading/trailing blank lines dropped;
  - UTF-8 only: invalid bytes or a non-UTF-8 coding declaration fail the
    whole file.

Run from the repository root:  python3 tests/oracles/gen_parser_golden.py
"""

import ast
import io
import json
import os
import re
import tokenize

CORPUS = os.path.join(os.path.dirname(__file__), "..", "fixtures", "parser", "corpus")
OUT = os.path.join(os.path.dirname(__file__), "..", "fixtures", "parser", "golden.json")

ACCEPTED_ENCODINGS = {"utf-8", "utf8", "ascii", "us-ascii"}
CODING_RE = re.compile(rb"^[ \t\f]*#.*?coding[:=][ \t]*([-_.a-zA-Z0-9]+)")
ALLOWED_DOC_PREFIXES = {"", "r", "u"}


def expanded_indent(prefix):
    width = 0
    for ch in prefix:
        if ch == "\t":
            width = (width // 8 + 1) * 8
        else:
            width += 1
    return width


def line_starts(src):
    starts = [0]
    for i, b in enumerate(src):
        if b == 0x0A:
            starts.append(i + 1)
    return starts


class FileOracle:
    def __init__(self, src_bytes):
        self.src = src_bytes
        self.text = src_bytes.decode("utf-8")
        self.lines = self.text.split("\n")
        self.starts = line_starts(src_bytes)
        self.tokens = list(tokenize.generate_tokens(io.StringIO(self.text).readline))
        self.tree = ast.parse(self.text)
        self.stmt_lines = self._statement_lines()

    def byte_pos(self, row, col_chars):
        return self.starts[row - 1] + len(self.lines[row - 1][:col_chars].encode("utf-8"))

    def byte_pos_ast(self, row, col_bytes):
        return self.starts[row - 1] + col_bytes

    def line_end_byte(self, row):
        if row < len(self.starts):
            return self.starts[row]
        return len(self.src)

    def _statement_lines(self):
        rows = []
        for node in ast.walk(self.tree):
            if isinstance(node, ast.stmt):
                line = node.lineno
                col = node.col_offset
                for dec in getattr(node, "decorator_list", []):
                    if dec.lineno < line:
                        line = dec.lineno
                        col = max(dec.col_offset - 1, 0)  # include the '@'
                rows.append((line, col))
        return sorted(rows)

    def header_colon_end(self, def_row, def_col_bytes):
        start = self.byte_pos_ast(def_row, def_col_bytes)
        depth = 0
        for tok in self.tokens:
            tok_start = self.byte_pos(*tok.start)
            if tok_start < start:
                continue
            if tok.type == tokenize.OP:
                if tok.string in "([{":
                    depth += 1
                elif tok.string in ")]}":
                    depth -= 1
                elif tok.string == ":" and depth == 0:
                    return self.byte_pos(*tok.end)
        raise RuntimeError("header colon not found")

    def suite_end(self, node, header_indent):
        last_row = node.end_lineno
        boundary = len(self.lines) + 1
        for line, col in self.stmt_lines:
            if line > node.end_lineno and col <= node.col_offset:
                boundary = line
                break
        for row in range(node.end_lineno + 1, boundary):
            raw = self.lines[row - 1]
            stripped = raw.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                prefix = raw[: len(raw) - len(raw.lstrip(" \t"))]
                if expanded_indent(prefix) > header_indent:
                    last_row = row
        return last_row, self.line_end_byte(last_row)

    def docstring_block(self, node):
        body = node.body
        if not body or not isinstance(body[0], ast.Expr):
            return None
        value = body[0].value
        if not isinstance(value, ast.Constant) or not isinstance(value.value, str):
            return None
        stmt = body[0]
        start = self.byte_pos_ast(stmt.lineno, stmt.col_offset)
        end = self.byte_pos_ast(stmt.end_lineno, stmt.end_col_offset)
        strings = [
            t for t in self.tokens
            if t.type == tokenize.STRING
            and start <= self.byte_pos(*t.start) < end
        ]
        if len(strings) != 1:
            return None
        raw_literal = self.src[start:end].decode("utf-8")
        m = re.match(r"[A-Za-z]*", raw_literal)
        prefix = m.group(0)
        if prefix.lower() not in ALLOWED_DOC_PREFIXES:
            return None
        rest = raw_literal[len(prefix):]
        for marker, style in (
            ('"""', "triple-double"), ("'''", "triple-single"),
            ('"', "single-double"), ("'", "single-single"),
        ):
            if rest.startswith(marker):
                quote, quote_style = marker, style
                break
        inner = rest[len(quote):-len(quote)]
        content = self.clean_content(inner)
        line_count = 0 if content == "" else content.count("\n") + 1
        return {
            "raw_literal": raw_literal,
            "content": content,
            "quote_style": quote_style,
            "line_count": line_count,
        }

    @staticmethod
    def clean_content(inner):
        lines = inner.split("\n")
        if len(lines) > 1:
            margin = None
            for ln in lines[1:]:
                if not ln.strip():
                    continue
                ws = ln[: len(ln) - len(ln.lstrip(" \t"))]
                if margin is None:
                    margin = ws
                else:
                    common = 0
                    for a, b in zip(margin, ws):
                        if a != b:
                            break
                        common += 1
                    margin = margin[:common]
            margin = margin or ""
            cleaned = [lines[0]]
            for ln in lines[1:]:
                cleaned.append("" if not ln.strip() else ln[len(margin):])
            lines = cleaned
        while lines and not lines[0].strip():
            lines.pop(0)
        while lines and not lines[-1].strip():
            lines.pop()
        return "\n".join(lines)

    def params(self, node):
        args = node.args
        out = []

        def seg(expr):
            return None if expr is None else ast.get_source_segment(self.text, expr)

        positional = list(args.posonlyargs) + list(args.args)
        defaults = [None] * (len(positional) - len(args.defaults)) + list(args.defaults)
        for arg, default in zip(positional, defaults):
            out.append({"name": arg.arg, "annotation": seg(arg.annotation),
                        "default": seg(default)})
        if args.vararg:
            out.append({"name": "*" + args.vararg.arg,
                        "annotation": seg(args.vararg.annotation), "default": None})
        for arg, default in zip(args.kwonlyargs, args.kw_defaults):
            out.append({"name": arg.arg, "annotation": seg(arg.annotation),
                        "default": seg(default)})
        if args.kwarg:
            out.append({"name": "**" + args.kwarg.arg,
                        "annotation": seg(args.kwarg.annotation), "default": None})
        return out

    def collect(self):
        records = []

        def visit(node, stack):
            for child in ast.iter_child_nodes(node):
                if isinstance(child, (ast.FunctionDef, ast.AsyncFunctionDef)):
                    records.append(self.record(child, stack))
                    visit(child, stack + [(child.name, "def")])
                elif isinstance(child, ast.ClassDef):
                    visit(child, stack + [(child.name, "class")])
                else:
                    visit(child, stack)

        visit(self.tree, [])
        records.sort(key=lambda r: r["span"]["start_byte"])
        return records

    def record(self, node, stack):
        start_byte = self.byte_pos_ast(node.lineno, node.col_offset)
        header_line = self.lines[node.lineno - 1]
        header_prefix = header_line[: len(header_line.encode("utf-8")[: node.col_offset].decode("utf-8"))]
        header_indent = expanded_indent(header_prefix)
        sig_end = self.header_colon_end(node.lineno, node.col_offset)
        end_line, end_byte = self.suite_end(node, header_indent)
        return {
            "qualified_name": ".".join([n for n, _ in stack] + [node.name]),
            "signature_text": self.src[start_byte:sig_end].decode("utf-8"),
            "params": self.params(node),
            "is_async": isinstance(node, ast.AsyncFunctionDef),
            "is_method": bool(stack) and stack[-1][1] == "class",
            "is_nested": any(kind == "def" for _, kind in stack),
            "decorators": ["@" + ast.get_source_segment(self.text, d)
                           for d in node.decorator_list],
            "body_source": self.src[sig_end:end_byte].decode("utf-8"),
            "docstring": self.docstring_block(node),
            "span": {
                "start_line": node.lineno,
                "end_line": end_line,
                "start_byte": start_byte,
                "end_byte": end_byte,
            },
        }


def scan_file(path):
    src = open(path, "rb").read()
    try:
        src.decode("utf-8")
    except UnicodeDecodeError as err:
        return {"parse_failure": {"line": src[: err.start].count(b"\n") + 1}}
    for idx, line in enumerate(src.split(b"\n")[:2], start=1):
        m = CODING_RE.match(line)
        if m and m.group(1).decode().lower() not in ACCEPTED_ENCODINGS:
            return {"parse_failure": {"line": idx}}
    try:
        oracle = FileOracle(src)
    except (SyntaxError, tokenize.TokenError) as err:
        line = getattr(err, "lineno", None) or 1
        return {"parse_failure": {"line": line}}
    return {"records": oracle.collect()}


def main():
    entries = []
    for name in sorted(os.listdir(CORPUS)):
        if not name.lower().endswith(".py"):
            continue
        entry = {"file": name}
        entry.update(scan_file(os.path.join(CORPUS, name)))
        entries.append(entry)
    with open(OUT, "w") as fh:
        json.dump({"files": entries}, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    total = sum(len(e.get("records", [])) for e in entries)
    failures = [e["file"] for e in entries if "parse_failure" in e]
    print(f"wrote {OUT}: {total} records, failures: {failures}")


if __name__ == "__main__":
    main()
