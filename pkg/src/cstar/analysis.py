"""Latticeness decisions, minimum distance and packing figures.

Distances are exact integers throughout. A residue digit ``v`` mod ``M = 2^L``
is at squared distance ``min(v, M - v)^2`` from the nearest point of ``M Z``,
so the squared norm of the shortest lift of a residue vector is the sum of
those per-digit values ("folded norm").
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .constructions import (
    ConstellationQuotient,
    Coupled3,
    ExplicitSet,
    MainCode,
    DEFAULT_QUOTIENT_BUDGET,
    digits_to_levels,
    levels_to_digits,
    membership,
    projection_span,
    quotient,
    zero_antiprojection,
)
from .gf2_codes import (
    BitWord,
    BudgetExceeded,
    CodeError,
    DEFAULT_ENUM_BUDGET,
    contains_all_ones,
    distance_status,
    is_self_orthogonal,
    is_subcode,
)

DEFAULT_PAIR_POINTS = 2**13
DEFAULT_TRIALS = 10_000
_BLOCK = 1 << 20  # pair sums materialised per block

METHODS = ("theorem2", "theorem1_sufficient", "exhaustive_closure", "sampled_closure")

Witness = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class LatticenessVerdict:
    is_lattice: bool | None
    method: str
    witness: Witness | None = None
    notes: str = ""

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.witness is not None and self.is_lattice is not False:
            raise ValueError("a witness implies is_lattice=False")
        if self.method == "theorem1_sufficient" and self.is_lattice is False:
            raise ValueError("a sufficient condition cannot refute latticeness")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witness"] = [list(w) for w in self.witness] if self.witness else None
        return d


def folded_table(levels: int) -> np.ndarray:
    m = 1 << levels
    v = np.arange(m)
    return np.minimum(v, m - v) ** 2


def folded_norms(residues: np.ndarray, levels: int) -> np.ndarray:
    """Squared norm of the shortest lift of each residue row."""
    table = folded_table(levels).astype(np.int64)
    return table[np.asarray(residues) % (1 << levels)].sum(axis=-1)


def verify_witness(main: MainCode, witness: Witness) -> bool:
    """Both points are members and their integer sum is not."""
    p, q = (np.asarray(w, dtype=np.int64) for w in witness)
    return membership(p, main) and membership(q, main) and not membership(p + q, main)


# -- latticeness --------------------------------------------------------------


def theorem2_check(main: MainCode) -> LatticenessVerdict:
    """Exact verdict for the coupled 3-level scheme.

    Lattice iff C2 is self-orthogonal and contains the all-ones word.
    """
    if not isinstance(main.body, Coupled3):
        raise CodeError("theorem2_check applies only to the coupled 3-level scheme")
    c2 = main.body.c2
    so, ones = is_self_orthogonal(c2), contains_all_ones(c2)
    missing = [msg for ok, msg in ((so, "C2 is not self-orthogonal"), (ones, "C2 lacks the all-ones word")) if not ok]
    return LatticenessVerdict(so and ones, "theorem2", notes="; ".join(missing) or "C2 self-orthogonal with all-ones")


def _schur_closed(inner, outer) -> bool:
    # the Schur product is bilinear, so checking basis pairs covers all pairs
    g = inner.generator
    return all(BitWord(inner.n, a & b) in outer for i, a in enumerate(g) for b in g[i:])


def theorem1_check(main: MainCode) -> LatticenessVerdict:
    """Sufficient condition: nested chain C1 <= S2(0) <= C2 <= ... <= CL with Schur closure.

    Returns True when the condition holds, otherwise None (undecided).
    """
    if isinstance(main.body, ExplicitSet):
        return LatticenessVerdict(None, "theorem1_sufficient", notes="requires a linear main code")
    L = main.levels
    proj = [projection_span(main, i) for i in range(1, L + 1)]
    zero = [None] + [zero_antiprojection(main, i) for i in range(2, L + 1)]
    for i in range(2, L + 1):
        links = (
            (proj[i - 2], zero[i - 1], f"C{i - 1} <= S{i}(0)"),
            (zero[i - 1], proj[i - 1], f"S{i}(0) <= C{i}"),
        )
        for a, b, label in links:
            if not is_subcode(a, b):
                return LatticenessVerdict(None, "theorem1_sufficient", notes=f"chain fails: {label}")
        if not _schur_closed(proj[i - 2], zero[i - 1]):
            return LatticenessVerdict(
                None, "theorem1_sufficient", notes=f"Schur closure fails: C{i - 1} * C{i - 1} not in S{i}(0)"
            )
    return LatticenessVerdict(True, "theorem1_sufficient", notes="chain nested and Schur-closed")


def _pair_blocks(n_points: int, n: int):
    rows = max(1, _BLOCK // max(1, n_points * n))
    for i0 in range(0, n_points, rows):
        yield i0, min(n_points, i0 + rows)


def closure_check_exhaustive(q: ConstellationQuotient, max_points: int = DEFAULT_PAIR_POINTS) -> LatticenessVerdict:
    """Scan every unordered pair of residues for closure under addition mod 2^L.

    A finite subset of (Z/2^L)^n containing 0 and closed under addition is a
    subgroup, so the infinite constellation is then a lattice. The witness is
    the lexicographically first failing pair (p <= q).
    """
    N = len(q)
    if N > max_points:
        raise BudgetExceeded(f"{N} points exceeds the pair-scan budget of {max_points}")
    zero = np.zeros(q.n, dtype=np.uint8)
    if not q.contains_array(zero[None, :])[0]:
        return LatticenessVerdict(False, "exhaustive_closure", notes="zero vector is not a point")
    pts = q.points.astype(np.int16)
    m = q.modulus
    for i0, i1 in _pair_blocks(N, q.n):
        sums = (pts[i0:i1, None, :] + pts[None, i0:, :]) % m
        ok = q.contains_array(sums.astype(np.uint8))
        # only pairs with j >= i
        ok |= np.arange(i0, N)[None, :] < np.arange(i0, i1)[:, None]
        if not ok.all():
            a, b = np.argwhere(~ok)[0]
            p, r = q.points[i0 + a], q.points[i0 + b]
            return LatticenessVerdict(
                False,
                "exhaustive_closure",
                witness=(tuple(int(v) for v in p), tuple(int(v) for v in r)),
                notes=f"closure fails after exhaustive scan of {N} points",
            )
    return LatticenessVerdict(True, "exhaustive_closure", notes=f"all {N * (N + 1) // 2} pair sums are points")


def _sum_fails(main: MainCode, a: list[np.ndarray], b: list[np.ndarray]):
    m = 1 << main.levels
    pa = levels_to_digits(a, main.n).astype(np.int16)
    pb = levels_to_digits(b, main.n).astype(np.int16)
    s = ((pa + pb) % m).astype(np.uint8)
    return ~main.contains_levels_array(digits_to_levels(s, main.levels)), pa, pb


def closure_check_sampled(main: MainCode, trials: int = DEFAULT_TRIALS, seed: int = 0, batch: int = 4096) -> LatticenessVerdict:
    """Test random member pairs for closure.

    Draws come from ``numpy.random.default_rng(seed)`` (PCG64) consumed in
    fixed-size batches, so trial ``t`` always sees the same pair for a seed.
    Never concludes True: no violation leaves the verdict undecided.
    """
    rng = np.random.default_rng(seed)
    done = 0
    while done < trials:
        count = min(batch, trials - done)
        a = main.random_codeword_levels(rng, count)
        b = main.random_codeword_levels(rng, count)
        bad, pa, pb = _sum_fails(main, a, b)
        if bad.any():
            t = int(np.argmax(bad))
            witness = (tuple(int(v) for v in pa[t]), tuple(int(v) for v in pb[t]))
            return LatticenessVerdict(False, "sampled_closure", witness=witness, notes=f"violation at trial {done + t}")
        done += count
    return LatticenessVerdict(None, "sampled_closure", notes=f"no violation in {trials} trials (seed {seed})")


def counterexample_search(
    main: MainCode,
    budget: int,
    seed: int = 0,
    quotient_budget: int = DEFAULT_QUOTIENT_BUDGET,
) -> Witness | None:
    """Look for two members whose sum is not a member, testing at most ``budget`` pairs.

    When the quotient can be enumerated, pairs are scanned in lexicographic
    order and the first hit is returned. Otherwise ``budget`` random pairs are
    drawn. None means nothing was found, which is not a proof of latticeness.
    """
    if budget <= 0:
        return None
    try:
        q = quotient(main, quotient_budget)
    except BudgetExceeded:
        q = None
    if q is not None:
        N, m = len(q), q.modulus
        pts = q.points.astype(np.int16)
        tested = 0
        for i in range(N):
            row = (pts[i][None, :] + pts[i:]) % m
            if tested + len(row) > budget:
                row = row[: budget - tested]
            ok = q.contains_array(row.astype(np.uint8))
            if not ok.all():
                j = i + int(np.argmin(ok))
                return tuple(int(v) for v in q.points[i]), tuple(int(v) for v in q.points[j])
            tested += len(row)
            if tested >= budget:
                break
        return None
    verdict = closure_check_sampled(main, trials=budget, seed=seed)
    return verdict.witness


# -- minimum distance ---------------------------------------------------------


def min_norm_exhaustive(q: ConstellationQuotient) -> int:
    """Squared length of the shortest nonzero constellation vector (distance to the origin)."""
    norms = folded_norms(q.points, q.levels)
    nonzero = norms[q.points.any(axis=1)]
    cap = q.modulus**2
    return int(min(cap, nonzero.min())) if nonzero.size else cap


def min_dist_exhaustive(
    q: ConstellationQuotient,
    lattice: bool | None = None,
    max_pair_points: int = DEFAULT_PAIR_POINTS,
    max_points: int = DEFAULT_QUOTIENT_BUDGET,
) -> int:
    """Squared minimum distance between distinct constellation points.

    For a lattice this is the shortest nonzero vector (single scan); otherwise
    every pair of residues is compared. Same-residue translates contribute
    (2^L)^2. Pass ``lattice`` when already decided; otherwise it is settled by
    an exhaustive closure check.
    """
    if len(q) > max_points:
        raise BudgetExceeded(f"{len(q)} points exceeds budget {max_points}")
    if lattice is None:
        lattice = bool(closure_check_exhaustive(q, max_pair_points).is_lattice)
    if lattice:
        return min_norm_exhaustive(q)
    N = len(q)
    if N > max_pair_points:
        raise BudgetExceeded(f"{N} points exceeds the pair-scan budget of {max_pair_points}")
    table = folded_table(q.levels).astype(np.int32)
    pts = q.points.astype(np.int16)
    m = q.modulus
    best = m * m
    for i0, i1 in _pair_blocks(N, q.n):
        diff = (pts[i0:i1, None, :] - pts[None, :, :]) % m
        d = table[diff].sum(axis=-1)
        idx = np.arange(i0, i1)
        d[idx - i0, idx] = best
        best = min(best, int(d.min()))
    return best


def _c2_distance(main: MainCode, d_c2: int | None, budget: int) -> int | None:
    c2 = main.body.c2
    if c2.k == 0:
        return None
    if d_c2 is None:
        d_c2, _ = distance_status(c2, budget)
        if d_c2 is None:
            raise CodeError("minimum distance of C2 unknown; assert it in the code file")
    return d_c2


def min_dist_level_formula(main: MainCode, d_c2: int | None = None, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """min{9 + (n-1), 4 d_H(C2), 16 * 2} for the coupled scheme.

    The last term uses distance 2 inside each parity class of level 3. A zero
    C2 contributes no middle term.
    """
    if not isinstance(main.body, Coupled3):
        raise CodeError("the level formula applies only to the coupled 3-level scheme")
    d = _c2_distance(main, d_c2, budget)
    terms = [9 + (main.n - 1), 16 * 2]
    if d is not None:
        terms.append(4 * d)
    return min(terms)


def min_dist_coupled(main: MainCode, d_c2: int | None = None, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """Exact squared minimum distance of the coupled scheme, by case split.

    * equal level-1 and level-2 words: level-3 words differ in >= 2 places, 32;
    * equal level-1 words, different level-2 words: 4 d_H(C2);
    * different level-1 words: n + 8 if C2 is self-orthogonal, else n
      (a pair a, a' in C2 with wt(a') + <a, a'> odd lets every coordinate
      fold to 1).
    """
    if not isinstance(main.body, Coupled3):
        raise CodeError("min_dist_coupled applies only to the coupled 3-level scheme")
    d = _c2_distance(main, d_c2, budget)
    n = main.n
    terms = [32, n + 8 if is_self_orthogonal(main.body.c2) else n]
    if d is not None:
        terms.append(4 * d)
    return min(terms)


def coupled_short_pair(main: MainCode) -> Witness | None:
    """Two integer points with different level-1 words at squared distance n.

    Exists iff C2 is not self-orthogonal: pick a, a' in C2 with
    wt(a' & ~a) odd (a basis word or a basis pair always suffices), put
    c3 = 0 under (0, a) and c3 = a' & ~a under (1...1, a').
    """
    if not isinstance(main.body, Coupled3):
        raise CodeError("coupled_short_pair applies only to the coupled 3-level scheme")
    c2 = main.body.c2
    g = (0,) + c2.generator
    for a in g:
        for b in g:
            t = b & ~a
            if t.bit_count() % 2:
                n, ones = main.n, (1 << main.n) - 1
                p = levels_to_digits([np.uint64(0), np.uint64(a), np.uint64(0)], n)
                q = levels_to_digits([np.uint64(ones), np.uint64(b), np.uint64(t)], n).astype(np.int64)
                q[q - p > 4] -= 8  # nearest lift of each coordinate
                return tuple(int(v) for v in p), tuple(int(v) for v in q)
    return None


# -- packing ------------------------------------------------------------------


def log_unit_ball_volume(n: int) -> float:
    return (n / 2) * math.log(math.pi) - math.lgamma(n / 2 + 1)


@dataclass(frozen=True)
class PackingReport:
    n: int
    levels: int
    d_min_sq: int
    d_min_sq_status: str
    point_count: int
    log2_volume_per_point: Fraction | float
    density: float
    hermite: float

    def to_dict(self) -> dict:
        d = asdict(self)
        v = self.log2_volume_per_point
        d["log2_volume_per_point"] = str(v) if isinstance(v, Fraction) else v
        return d


def packing_report(
    n: int, levels: int, point_count: int, d_min_sq: int | None, d_status: str
) -> PackingReport:
    """Density and Hermite constant of a constellation with ``point_count`` residues mod 2^L.

    density = count * V_n * (d/2)^n / 2^(L n)
    hermite = d^2 / (2^(L n) / count)^(2/n)
    """
    if d_min_sq is None:
        raise CodeError("packing report needs a squared minimum distance")
    if d_status not in ("exhaustive", "formula", "formula+verified", "structural"):
        raise ValueError(f"unknown distance status {d_status!r}")
    if point_count & (point_count - 1) == 0:
        log2_count = Fraction(point_count.bit_length() - 1)
    else:
        log2_count = math.log2(point_count)
    log2_vol = levels * n - log2_count
    log_density = (
        math.log(point_count) + log_unit_ball_volume(n) + (n / 2) * math.log(d_min_sq / 4) - levels * n * math.log(2)
    )
    hermite = d_min_sq / 2 ** (2 * float(log2_vol) / n)
    return PackingReport(n, levels, d_min_sq, d_status, point_count, log2_vol, math.exp(log_density), hermite)


def hermite_from_density(density: float, n: int) -> float:
    """4 (density / V_n)^(2/n)."""
    return 4 * math.exp((2 / n) * (math.log(density) - log_unit_ball_volume(n)))


# -- end-to-end ---------------------------------------------------------------


def check_expectations(report: dict, expected: dict) -> dict:
    """Compare report figures against preset expectations.

    ``expected`` maps a report key (d_min_sq, density, hermite) to an object
    with value / tolerance / provenance / discrepancy attributes.
    """
    figures = {
        "d_min_sq": report["d_min_sq"],
        "density": report["packing"]["density"],
        "hermite": report["packing"]["hermite"],
    }
    out = {}
    for key, exp in expected.items():
        got = figures[key]
        out[key] = {
            "expected": exp.value,
            "tolerance": exp.tolerance,
            "provenance": exp.provenance,
            "computed": got,
            "match": abs(got - exp.value) <= exp.tolerance,
            "discrepancy": exp.discrepancy,
        }
    return out


def analyze_scheme(
    main: MainCode,
    expected: dict | None = None,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    pair_points: int = DEFAULT_PAIR_POINTS,
    quotient_budget: int = DEFAULT_QUOTIENT_BUDGET,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
) -> dict:
    """Run every check on a coupled scheme and collect a JSON-ready report.

    The theorem verdict decides latticeness; closure checks are run as an
    independent cross-check. The reported distance prefers brute force, then
    the exact case split, and always records the level formula alongside.
    """
    if not isinstance(main.body, Coupled3):
        raise CodeError("analyze_scheme expects the coupled 3-level scheme")
    c2 = main.body.c2
    d_c2, d_c2_status = distance_status(c2, enum_budget)

    t2 = theorem2_check(main)
    t1 = theorem1_check(main)
    q = None
    if main.size <= quotient_budget:
        q = quotient(main, quotient_budget)
    if q is not None and len(q) <= pair_points:
        closure = closure_check_exhaustive(q, pair_points)
    else:
        closure = closure_check_sampled(main, trials, seed)
    consistent = closure.is_lattice is None or closure.is_lattice == t2.is_lattice
    if closure.witness is not None:
        consistent = consistent and verify_witness(main, closure.witness)
    is_lattice = t2.is_lattice

    exhaustive = None
    min_norm = None
    if q is not None:
        min_norm = min_norm_exhaustive(q)
        if is_lattice or len(q) <= pair_points:
            exhaustive = min_dist_exhaustive(q, lattice=is_lattice, max_pair_points=pair_points)
    known_d = d_c2 is not None or c2.k == 0
    formula = min_dist_level_formula(main, d_c2) if known_d else None
    structural = min_dist_coupled(main, d_c2) if known_d else None

    if exhaustive is not None:
        d_min_sq = exhaustive
        status = "formula+verified" if formula == exhaustive else "exhaustive"
    elif structural is not None:
        d_min_sq = structural
        status = "formula" if formula == structural else "structural"
    else:
        raise BudgetExceeded("minimum distance unavailable: C2 distance unknown and quotient too large")

    packing = packing_report(main.n, main.levels, main.size, d_min_sq, status)
    report = {
        "scheme": {
            "n": main.n,
            "levels": main.levels,
            "c2": {"n": c2.n, "k": c2.k, "d": d_c2, "d_status": d_c2_status},
            "point_count": main.size,
        },
        "is_lattice": is_lattice,
        "theorem2": t2.to_dict(),
        "theorem1": t1.to_dict(),
        "closure": closure.to_dict(),
        "verdicts_consistent": consistent,
        "d_min_sq": d_min_sq,
        "d_min_sq_status": status,
        "d_min_sq_exhaustive": exhaustive,
        "d_min_sq_formula": formula,
        "d_min_sq_structural": structural,
        "formula_agrees": None if exhaustive is None or formula is None else formula == exhaustive,
        "min_norm_sq": min_norm,
        "packing": packing.to_dict(),
        "seed": seed,
        "trials": trials,
        "budgets": {"pair_points": pair_points, "quotient": quotient_budget, "enumeration": enum_budget},
    }
    report["expected"] = check_expectations(report, expected or {})
    report["mismatch"] = any(not e["match"] and not e["discrepancy"] for e in report["expected"].values())
    return report
