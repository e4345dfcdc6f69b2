"""Named codes, matrix-file loading and the reference-dimension presets."""

from __future__ import annotations

import os
import re
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .constructions import MainCode, build_coupled_scheme, explicit_set
from .gf2_codes import (
    BinaryCode,
    CodeError,
    DEFAULT_ENUM_BUDGET,
    contains_all_ones,
    distance_status,
    is_self_dual,
    is_self_orthogonal,
    parity,
    parse_matrix_text,
    repetition,
    rref,
)

__all__ = [
    "repetition",
    "parity",
    "reed_muller",
    "extended_hamming8",
    "golay24",
    "load_code",
    "builtin",
    "Preset",
    "PRESETS",
    "preset",
]

DATA_ENV = "CSTAR_DATA_DIR"
PACKAGE_DATA = Path(__file__).parent / "data"

# rows of the [8,4,4] generator as printed alongside the E8 construction
HAMMING8_ROWS = ("11111111", "01010101", "00110011", "00001111")

# [I | B] with B the bordered circulant of the quadratic residues mod 11
_GOLAY_B = (
    "011111111111",
    "111011100010",
    "110111000101",
    "101110001011",
    "111100010110",
    "111000101101",
    "110001011011",
    "100010110111",
    "100101101110",
    "101011011100",
    "110110111000",
    "101101110001",
)


def reed_muller(r: int, m: int) -> BinaryCode:
    """RM(r, m) by the (u, u+v) recursion.

    RM(r, m) = {(u, u+v) : u in RM(r, m-1), v in RM(r-1, m-1)}, with
    RM(0, m) the repetition code and RM(m, m) the full space.
    """
    if not 0 <= r <= m <= 6:
        raise CodeError(f"need 0 <= r <= m <= 6, got r={r}, m={m}")
    return _rm(r, m)


@lru_cache(maxsize=None)
def _rm(r: int, m: int) -> BinaryCode:
    n = 1 << m
    if r == 0:
        return repetition(n)
    if r == m:
        return BinaryCode(n, tuple(1 << j for j in range(n)))
    half = n // 2
    u_part = [g | (g << half) for g in _rm(r, m - 1).generator]
    v_part = [g << half for g in _rm(r - 1, m - 1).generator]
    return rref(u_part + v_part, n=n)


def extended_hamming8() -> BinaryCode:
    return rref(list(HAMMING8_ROWS))


@lru_cache(maxsize=None)
def golay24() -> BinaryCode:
    rows = ["".join("1" if j == i else "0" for j in range(12)) + b for i, b in enumerate(_GOLAY_B)]
    code = rref(rows)
    if code.k != 12 or not is_self_dual(code):
        raise AssertionError("embedded Golay generator is not a self-dual [24,12] code")
    return code


def load_code(path, budget: int = DEFAULT_ENUM_BUDGET) -> BinaryCode:
    """Read a generator-matrix file and canonicalise it.

    A ``# d=<int>`` header is kept as the asserted distance; it is checked
    against enumeration when 2^k fits the budget (mismatch raises CodeError).
    Dependent rows are absorbed with a warning.
    """
    text = Path(path).read_text(encoding="utf-8")
    rows, header = parse_matrix_text(text)
    if header.get("explicit"):
        raise CodeError(f"{path} is a raw codeword list; use load_main_code_set")
    base = rref(rows)
    if base.k < len(rows):
        warnings.warn(f"{path}: {len(rows) - base.k} dependent row(s) absorbed (k={base.k})", stacklevel=2)
    code = BinaryCode(base.n, base.generator, asserted_distance=header.get("d"))
    distance_status(code, budget)
    return code


def load_main_code_set(path, levels: int) -> MainCode:
    """Read a raw codeword list (header ``# explicit``) as a main code."""
    rows, header = parse_matrix_text(Path(path).read_text(encoding="utf-8"))
    if not header.get("explicit"):
        raise CodeError(f"{path} lacks the '# explicit' header")
    return explicit_set(rows, levels)


_BUILTIN_PATTERNS = {
    r"golay24": lambda: golay24(),
    r"ext-hamming8": lambda: extended_hamming8(),
    r"rm-(\d+)-(\d+)": lambda r, m: reed_muller(int(r), int(m)),
    r"repetition-(\d+)": lambda n: repetition(int(n)),
    r"parity-(\d+)": lambda n: parity(int(n)),
}


def builtin(name: str) -> BinaryCode:
    """Resolve a builtin code id: golay24, ext-hamming8, rm-R-M, repetition-N, parity-N."""
    for pattern, make in _BUILTIN_PATTERNS.items():
        m = re.fullmatch(pattern, name)
        if m:
            return make(*m.groups())
    raise CodeError(f"unknown builtin code {name!r}")


# -- presets ------------------------------------------------------------------


@dataclass(frozen=True)
class Expectation:
    """A published value and the tolerance we hold it to.

    ``discrepancy`` marks a published value known not to follow from the
    distance and volume formulas; a mismatch there is flagged, never treated
    as failure.
    """

    value: float
    tolerance: float
    provenance: str
    discrepancy: bool = False


@dataclass(frozen=True)
class Preset:
    name: str
    n: int
    c2_label: str
    lattice_expected: bool
    builtin: str | None = None
    file: str | None = None
    required_nk: tuple[int, int] | None = None
    required_d: int | None = None
    require_self_dual: bool = False
    expected: dict[str, Expectation] = field(default_factory=dict)
    notes: str = ""

    @property
    def file_sourced(self) -> bool:
        return self.file is not None


def _e(value, tol, prov, discrepancy=False):
    return Expectation(value, tol, prov, discrepancy)


PRESETS: dict[str, Preset] = {
    p.name: p
    for p in [
        Preset(
            "dim4_rm12", 4, "RM(1,2)", False, builtin="rm-1-2",
            expected={
                "d_min_sq": _e(8, 0, "non-lattice dimension 4 example, min{12, 8, 32} = 8"),
                "density": _e(0.6168502750680849, 1e-9, "same packing density as D4, pi^2/16"),
            },
            notes="non-lattice; RM(1,2) is not self-orthogonal",
        ),
        Preset(
            "dim8_e8", 8, "ext. Hamming [8,4,4]", True, builtin="ext-hamming8",
            expected={
                "d_min_sq": _e(16, 0, "E8 construction, min{16, 16, 32, 32} = 16"),
                "density": _e(0.25367, 5e-5, "E8 density, approx. 0.25367"),
                "hermite": _e(2.0, 1e-9, "E8 Hermite constant"),
            },
        ),
        Preset(
            "dim14_selfdual", 14, "self-dual [14,7,4]", True, file="sd14.txt",
            required_nk=(14, 7), required_d=4, require_self_dual=True,
            expected={
                "d_min_sq": _e(16, 0, "dimension 14, min{22, 16, 32} = 16"),
                "hermite": _e(2.0, 1e-9, "dimension 14, 16 / (2^21)^(2/14) = 2"),
            },
            notes="cited upper bound for gamma_14 is 2.4886 (context only)",
        ),
        Preset(
            "dim18_nonlattice", 18, "[18,9,6]", False, file="c18.txt",
            required_nk=(18, 9), required_d=6,
            notes="reported only as achieving the best known Hermite constant; no number given",
        ),
        Preset(
            "dim24_leech", 24, "Golay [24,12,8]", True, builtin="golay24",
            expected={
                "d_min_sq": _e(32, 0, "Leech parameters, min{33, 32, 32} = 32"),
                "hermite": _e(4.0, 1e-9, "Leech: 32 / (2^36)^(2/24) = 4"),
            },
        ),
        Preset(
            "dim32_bw", 32, "RM(2,5)", True, builtin="rm-2-5",
            expected={
                "d_min_sq": _e(32, 0, "dimension 32, min{40, 32, 32} = 32"),
                "hermite": _e(4.0, 1e-9, "coincides with the Barnes-Wall BW32 Hermite constant"),
            },
        ),
        Preset(
            "dim40_extremal", 40, "extremal self-dual [40,20,8]", True, file="sd40.txt",
            required_nk=(40, 20), required_d=8, require_self_dual=True,
            expected={
                "d_min_sq": _e(32, 0, "dimension 40, min{48, 32, 32} = 32"),
                "hermite": _e(4.0, 1e-9, "dimension 40, 32 / (2^60)^(2/40) = 4"),
            },
        ),
        Preset(
            "dim40_nonlattice", 40, "[40,23,8]", False, file="c40_23.txt",
            required_nk=(40, 23), required_d=8,
            expected={
                "hermite": _e(4.287, 5e-4, "reported gamma_40 = 4.287", discrepancy=True),
            },
            notes="formulas give 32 / 2^(2*57/40) ~ 4.438, not 4.287",
        ),
    ]
}


def data_dir(override=None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else PACKAGE_DATA


class MissingCodeFile(CodeError):
    pass


def preset_code(p: Preset, data=None, budget: int = DEFAULT_ENUM_BUDGET) -> BinaryCode:
    """Resolve and validate the middle-level code of a preset (fail-closed)."""
    if p.builtin is not None:
        code = builtin(p.builtin)
    else:
        path = data_dir(data) / p.file
        if not path.exists():
            raise MissingCodeFile(f"preset {p.name} needs code file {path}")
        code = load_code(path, budget)
    validate_code(code, p, budget)
    return code


def validate_code(code: BinaryCode, p: Preset, budget: int = DEFAULT_ENUM_BUDGET):
    if p.required_nk is not None and (code.n, code.k) != p.required_nk:
        raise CodeError(f"{p.name}: need [n,k] = {list(p.required_nk)}, got [{code.n},{code.k}]")
    if code.n != p.n:
        raise CodeError(f"{p.name}: need length {p.n}, got {code.n}")
    if p.require_self_dual and not is_self_dual(code):
        raise CodeError(f"{p.name}: code is not self-dual")
    if p.lattice_expected and not (is_self_orthogonal(code) and contains_all_ones(code)):
        raise CodeError(f"{p.name}: code must be self-orthogonal and contain the all-ones word")
    if p.required_d is not None:
        d, status = distance_status(code, budget)
        if d is None:
            raise CodeError(f"{p.name}: minimum distance unknown; assert it with '# d={p.required_d}'")
        if d != p.required_d:
            raise CodeError(f"{p.name}: need d = {p.required_d}, got {d} ({status})")


def preset(name: str, data=None, budget: int = DEFAULT_ENUM_BUDGET) -> tuple[MainCode, Preset]:
    if name not in PRESETS:
        raise CodeError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    p = PRESETS[name]
    return build_coupled_scheme(p.n, preset_code(p, data, budget)), p
