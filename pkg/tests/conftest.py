"""Shared brute-force oracles. None of these use the package's enumeration paths."""

import itertools

import numpy as np
import pytest

from cstar.gf2_codes import rref


def all_subspaces(n):
    """Every linear subspace of F2^n, each once (as canonical codes)."""
    vectors = range(1, 1 << n)
    seen = {rref([], n=n)}
    frontier = [rref([], n=n)]
    while frontier:
        nxt = []
        for code in frontier:
            for v in vectors:
                bigger = rref(list(code.generator) + [v], n=n)
                if bigger not in seen:
                    seen.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return sorted(seen, key=lambda c: (c.k, c.generator))


def random_subspaces(n, count, seed):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        k = int(rng.integers(0, n + 1))
        rows = [int(r) for r in rng.integers(0, 1 << n, size=k)]
        out.append(rref(rows, n=n))
    return out


def span_set(rows, n):
    """Codewords as bit tuples, by summing every subset of rows."""
    words = set()
    for coeffs in itertools.product([0, 1], repeat=len(rows)):
        w = [0] * n
        for c, r in zip(coeffs, rows):
            if c:
                w = [(a + ((r >> j) & 1)) % 2 for j, a in enumerate(w)]
        words.add(tuple(w))
    return words


def coupled_points(c2_words, n):
    """Residues c1 + 2 c2 + 4 c3 of the coupled scheme, straight from its definition."""
    pts = set()
    for c1 in (0, 1):
        for a in c2_words:
            for x in itertools.product([0, 1], repeat=n):
                if sum(x) % 2 != c1:
                    continue
                pts.add(tuple(c1 + 2 * ai + 4 * xi for ai, xi in zip(a, x)))
    return pts


def brute_min_distance(residues, modulus=8):
    """Minimum squared distance between distinct integer points.

    Any pair can be translated so one point lies in [0, M)^n; its nearest
    partner then lies in [-M, 2M)^n, so lifting every residue by z in
    {-1, 0, 1}^n covers all candidates.
    """
    res = np.array(sorted(residues), dtype=np.int64)
    n = res.shape[1]
    shifts = np.array(list(itertools.product([-1, 0, 1], repeat=n)), dtype=np.int64) * modulus
    lifted = (res[:, None, :] + shifts[None, :, :]).reshape(-1, n)
    best = None
    for p in res:
        d = ((lifted - p) ** 2).sum(axis=1)
        d = d[d > 0]
        m = int(d.min())
        best = m if best is None else min(best, m)
    return best


def brute_closed(residues, modulus=8):
    pts = set(residues)
    return all(tuple((a + b) % modulus for a, b in zip(p, q)) in pts for p in pts for q in pts)


@pytest.fixture(scope="session")
def subspaces4():
    return all_subspaces(4)
