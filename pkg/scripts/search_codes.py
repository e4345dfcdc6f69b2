"""Build the sample code files in src/cstar/data.

Usage: python scripts/search_codes.py [outdir]

* sd14: two copies of the [7,3,4] simplex code glued by the all-ones word.
* c18, sd40: G = [I | A] with A an m x m circulant; first rows are scanned
  in increasing order and the first hit is written (reproducible).
* c40_23: greedy (lexicographic) parity-check columns with every 6 columns
  independent give a [39,23,7] code; an overall parity bit makes it [40,23,8].
"""

import itertools
import sys
from pathlib import Path

import numpy as np

from cstar.gf2_codes import (
    BinaryCode,
    dual,
    format_matrix,
    is_self_dual,
    min_hamming_distance,
    rref,
)


def circulant(first_row, m):
    return [[first_row[(j - i) % m] for j in range(m)] for i in range(m)]


def double_circulant(a_rows):
    m = len(a_rows)
    rows = ["".join("1" if j == i else "0" for j in range(m)) + "".join(map(str, r)) for i, r in enumerate(a_rows)]
    return rref(rows)


def bordered(first_row, m, alpha=1, beta=1, gamma=1):
    """[I | B] with B = [[alpha, beta...],[gamma..., circulant(m-1)]]."""
    c = circulant(first_row, m - 1)
    rows = [[alpha] + [beta] * (m - 1)] + [[gamma] + r for r in c]
    return double_circulant(rows)


def low_weight_ok(code: BinaryCode, d: int, depth: int = 3) -> bool:
    g = code.generator
    for r in range(1, depth + 1):
        for combo in itertools.combinations(g, r):
            w = 0
            for x in combo:
                w ^= x
            if w.bit_count() < d:
                return False
    return True


def search(m, d, self_dual, bordered_form=False, limit=None):
    width = m - 1 if bordered_form else m
    for bits in range(1, 1 << width):
        row = [(bits >> j) & 1 for j in range(width)]
        code = bordered(row, m) if bordered_form else double_circulant(circulant(row, m))
        if code.k != m:
            continue
        if self_dual and not is_self_dual(code):
            continue
        if not low_weight_ok(code, d):
            continue
        if min_hamming_distance(code) == d:
            return code
    return None


def glued_simplex14() -> BinaryCode:
    simplex = ["1110100", "0111010", "0011101"]
    rows = [r + "0" * 7 for r in simplex] + ["0" * 7 + r for r in simplex] + ["1" * 14]
    return rref(rows)


def greedy_columns(r: int, d: int) -> list[int]:
    """Lexicographic syndromes such that any d-1 of them are independent."""
    size = 1 << r
    idx = np.arange(size)
    reach = [np.zeros(size, dtype=bool) for _ in range(d - 1)]  # reach[t]: sums of <= t columns
    for t in range(d - 1):
        reach[t][0] = True
    cols = []
    for h in range(1, size):
        if reach[d - 2][h]:
            continue
        for t in range(d - 2, 0, -1):
            reach[t] |= reach[t - 1][idx ^ h]
        cols.append(h)
    return cols


def extended(code: BinaryCode) -> BinaryCode:
    n = code.n
    return rref([g | ((g.bit_count() & 1) << n) for g in code.generator], n=n + 1)


def greedy40() -> BinaryCode:
    cols = greedy_columns(16, 7)[:39]
    h_rows = [sum(((c >> i) & 1) << j for j, c in enumerate(cols)) for i in range(16)]
    return extended(dual(rref(h_rows, n=39)))


SPECIAL = [
    ("sd14.txt", glued_simplex14, 4, "self-dual [14,7,4] code, e7 + e7 glued by all-ones"),
    ("c40_23.txt", greedy40, 8, "[40,23,8] code, extended greedy lexicode"),
]

TARGETS = [
    ("c18.txt", 9, 6, False, False, "[18,9,6] code, double circulant"),
    ("sd40.txt", 20, 8, True, False, "extremal self-dual [40,20,8] code, double circulant"),
]


if __name__ == "__main__":
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "src/cstar/data"
    out.mkdir(parents=True, exist_ok=True)
    for fname, make, d, label in SPECIAL:
        code = make()
        assert min_hamming_distance(code) == d, fname
        (out / fname).write_text(format_matrix(code, [label, "built by scripts/search_codes.py", f"d={d}"]))
        print(f"{fname}: {code}")
    for fname, m, d, sd, bord, label in TARGETS:
        code = search(m, d, sd, bord)
        if code is None:
            code = search(m, d, sd, bordered_form=True)
            label = label.replace("double circulant", "bordered double circulant")
        if code is None:
            print(f"{fname}: nothing found")
            continue
        text = format_matrix(code, [label, "found by scripts/search_codes.py", f"d={d}"])
        (out / fname).write_text(text)
        print(f"{fname}: {code}")
