"""Construction C* constellations from binary codes: latticeness, distance and packing."""

from .gf2_codes import (
    BitWord,
    BinaryCode,
    BudgetExceeded,
    CodeError,
    carry_decompose,
    dual,
    is_self_dual,
    is_self_orthogonal,
    min_hamming_distance,
    rref,
    schur,
    weight_enumerator,
)
from .constructions import (
    MainCode,
    build_coupled_scheme,
    construction_c,
    membership,
    product_code,
    quotient,
)
from .analysis import (
    analyze_scheme,
    closure_check_exhaustive,
    min_dist_exhaustive,
    min_dist_level_formula,
    packing_report,
    theorem1_check,
    theorem2_check,
)
from .catalog import golay24, preset, reed_muller

__version__ = "0.1.0"

__all__ = [
    "BitWord",
    "BinaryCode",
    "BudgetExceeded",
    "CodeError",
    "carry_decompose",
    "dual",
    "is_self_dual",
    "is_self_orthogonal",
    "min_hamming_distance",
    "rref",
    "schur",
    "weight_enumerator",
    "MainCode",
    "build_coupled_scheme",
    "construction_c",
    "membership",
    "product_code",
    "quotient",
    "analyze_scheme",
    "closure_check_exhaustive",
    "min_dist_exhaustive",
    "min_dist_level_formula",
    "packing_report",
    "theorem1_check",
    "theorem2_check",
    "golay24",
    "preset",
    "reed_muller",
]
