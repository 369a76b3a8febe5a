"""Freeze bucket indices for the built-in hashing embedder.

Run from the repository root:  python3 tests/oracles/gen_embed_golden.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(__file__))
import oracle_metrics as om

OUT = os.path.join(os.path.dirname(__file__), "..", "fixtures", "embed",
                   "builtin_golden.json")

CASES = [
    {"text": "add two numbers", "dimension": 256},
    {"text": "Sort the list in place", "dimension": 256},
    {"text": "a b", "dimension": 64},
]


def main():
    rows = []
    for case in CASES:
        vec = om.embed(case["text"], case["dimension"])
        buckets = {str(i): v for i, v in enumerate(vec) if v != 0.0}
        rows.append({**case, "buckets": buckets})
    hashes = {
        token: om.fnv1a64(token.encode("utf-8"))
        for token in ["add", "two", "numbers", "a", "b"]
    }
    with open(OUT, "w") as fh:
        json.dump({"cases": rows, "fnv1a64": hashes}, fh, indent=2)
        fh.write("\n")
    print("wrote", OUT)
    for row in rows:
        print(row["text"], "->", row["buckets"])


if __name__ == "__main__":
    main()
