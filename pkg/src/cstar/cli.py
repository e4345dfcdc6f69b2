"""Command-line front end.

Exit codes: 0 ok, 1 no witness found, 2 input error, 3 expectation
mismatch, 4 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field

from . import analysis, catalog
from .constructions import DEFAULT_QUOTIENT_BUDGET, build_coupled_scheme
from .gf2_codes import (
    DEFAULT_ENUM_BUDGET,
    BudgetExceeded,
    CodeError,
    contains_all_ones,
    distance_status,
    is_self_dual,
    is_self_orthogonal,
    weight_enumerator,
)

EXIT_OK, EXIT_NO_WITNESS, EXIT_INPUT, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2, 3, 4


@dataclass
class CommandConfig:
    subcommand: str
    preset: str | None = None
    c2_file: str | None = None
    builtin: str | None = None
    n: int | None = None
    data_dir: str | None = None
    pair_budget: int = analysis.DEFAULT_PAIR_POINTS
    quotient_budget: int = DEFAULT_QUOTIENT_BUDGET
    enum_budget: int = DEFAULT_ENUM_BUDGET
    budget: int = 10**6
    trials: int = analysis.DEFAULT_TRIALS
    seed: int = 0
    format: str = "table"
    extra: dict = field(default_factory=dict)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _fmt_density(x: float) -> str:
    return f"{x:.5f}" if x >= 1e-4 else f"{x:.3e}"


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _resolve_code(cfg: CommandConfig):
    if cfg.builtin and cfg.c2_file:
        raise CodeError("give either --builtin or --c2-file, not both")
    if cfg.builtin:
        return catalog.builtin(cfg.builtin)
    if cfg.c2_file:
        try:
            return catalog.load_code(cfg.c2_file, cfg.enum_budget)
        except OSError as exc:
            raise CodeError(str(exc)) from exc
    raise CodeError("no code given; use --builtin or --c2-file")


def _resolve_scheme(cfg: CommandConfig):
    if cfg.preset:
        return catalog.preset(cfg.preset, cfg.data_dir, cfg.enum_budget)
    c2 = _resolve_code(cfg)
    n = cfg.n if cfg.n is not None else c2.n
    return build_coupled_scheme(n, c2), None


def cmd_code_info(cfg: CommandConfig) -> tuple[int, str]:
    code = _resolve_code(cfg)
    d, status = distance_status(code, cfg.enum_budget)
    info = {
        "n": code.n,
        "k": code.k,
        "d": d,
        "d_status": status,
        "self_orthogonal": is_self_orthogonal(code),
        "self_dual": is_self_dual(code),
        "contains_all_ones": contains_all_ones(code),
    }
    try:
        info["weight_enumerator"] = list(weight_enumerator(code, cfg.enum_budget))
    except BudgetExceeded:
        info["weight_enumerator"] = None
    if cfg.format == "json":
        return EXIT_OK, _dump(info)
    dtxt = "?" if d is None else str(d)
    lines = [
        f"[{code.n},{code.k},{dtxt}] self-dual: {_yn(info['self_dual'])}",
        f"distance: {dtxt} ({status})",
        f"self-orthogonal: {_yn(info['self_orthogonal'])}, self-dual: {_yn(info['self_dual'])}",
        f"contains all-ones: {_yn(info['contains_all_ones'])}",
    ]
    we = info["weight_enumerator"]
    if we is not None:
        lines.append("weight enumerator: " + " ".join(f"{w}:{c}" for w, c in enumerate(we) if c))
    return EXIT_OK, "\n".join(lines)


def _analysis_table(report: dict, title: str) -> str:
    s, p = report["scheme"], report["packing"]
    c2 = s["c2"]
    lines = [
        title,
        f"  C2: [{c2['n']},{c2['k']},{c2['d']}] (d {c2['d_status']}), points mod 8: {s['point_count']}",
        f"  lattice: {_yn(report['is_lattice'])}  (theorem2: {report['theorem2']['notes']})",
        f"  theorem1: {report['theorem1']['is_lattice']}  ({report['theorem1']['notes']})",
        f"  closure [{report['closure']['method']}]: {report['closure']['is_lattice']}  ({report['closure']['notes']})",
    ]
    if report["closure"]["witness"]:
        a, b = report["closure"]["witness"]
        lines.append(f"  witness: {tuple(a)} + {tuple(b)}")
    lines += [
        f"  d_min^2: {report['d_min_sq']} ({report['d_min_sq_status']}); exhaustive={report['d_min_sq_exhaustive']}"
        f" formula={report['d_min_sq_formula']} structural={report['d_min_sq_structural']}"
        f" min-norm={report['min_norm_sq']}",
        f"  log2 volume/point: {p['log2_volume_per_point']}",
        f"  density: {_fmt_density(p['density'])}   hermite: {p['hermite']:.3f}",
    ]
    for key, e in report["expected"].items():
        tag = "ok" if e["match"] else ("DISCREPANCY" if e["discrepancy"] else "MISMATCH")
        lines.append(f"  expected {key} = {e['expected']} +/- {e['tolerance']}: computed {e['computed']} [{tag}]")
    return "\n".join(lines)


def cmd_analyze(cfg: CommandConfig) -> tuple[int, str]:
    main, meta = _resolve_scheme(cfg)
    report = analysis.analyze_scheme(
        main,
        expected=meta.expected if meta else None,
        trials=cfg.trials,
        seed=cfg.seed,
        pair_points=cfg.pair_budget,
        quotient_budget=cfg.quotient_budget,
        enum_budget=cfg.enum_budget,
    )
    report["preset"] = meta.name if meta else None
    code = EXIT_MISMATCH if report["mismatch"] else EXIT_OK
    if cfg.format == "json":
        return code, _dump(report)
    title = f"preset {meta.name}" if meta else f"coupled scheme n={main.n}"
    return code, _analysis_table(report, title)


def cmd_find_counterexample(cfg: CommandConfig) -> tuple[int, str]:
    main, _ = _resolve_scheme(cfg)
    witness = analysis.counterexample_search(main, cfg.budget, cfg.seed, cfg.quotient_budget)
    if witness is None:
        msg = {"witness": None, "note": "none found (not a proof of latticeness)"}
        return EXIT_NO_WITNESS, _dump(msg) if cfg.format == "json" else msg["note"]
    a, b = witness
    total = [x + y for x, y in zip(a, b)]
    msg = {"witness": [list(a), list(b)], "sum": total, "verified": analysis.verify_witness(main, witness)}
    if cfg.format == "json":
        return EXIT_OK, _dump(msg)
    return EXIT_OK, f"{tuple(a)} + {tuple(b)} = {tuple(total)} is not a point (verified: {_yn(msg['verified'])})"


def paper_table_rows(cfg: CommandConfig) -> list[dict]:
    rows = []
    for name, p in catalog.PRESETS.items():
        row = {"preset": name, "n": p.n, "c2": p.c2_label, "lattice_expected": p.lattice_expected, "notes": p.notes}
        try:
            main, _ = catalog.preset(name, cfg.data_dir, cfg.enum_budget)
        except catalog.MissingCodeFile:
            row.update(status="skipped", reason="code file not supplied")
            rows.append(row)
            continue
        except CodeError as exc:
            row.update(status="skipped", reason=f"validation failed: {exc}")
            rows.append(row)
            continue
        rep = analysis.analyze_scheme(
            main, p.expected, cfg.trials, cfg.seed, cfg.pair_budget, cfg.quotient_budget, cfg.enum_budget
        )
        row.update(
            status="computed",
            is_lattice=rep["is_lattice"],
            d_min_sq=rep["d_min_sq"],
            d_min_sq_status=rep["d_min_sq_status"],
            d_min_sq_formula=rep["d_min_sq_formula"],
            density=rep["packing"]["density"],
            hermite=rep["packing"]["hermite"],
            expected=rep["expected"],
            match=not rep["mismatch"],
            discrepancy=any(not e["match"] and e["discrepancy"] for e in rep["expected"].values()),
        )
        rows.append(row)
    return rows


def cmd_paper_table(cfg: CommandConfig) -> tuple[int, str]:
    rows = paper_table_rows(cfg)
    if cfg.format == "json":
        return EXIT_OK, _dump({"rows": rows})
    head = f"{'preset':<18}{'n':>3}  {'C2':<30}{'lattice':<9}{'d^2':>4}  {'density':>9}  {'hermite':>8}  result"
    lines = [head, "-" * len(head)]
    for r in rows:
        if r["status"] != "computed":
            lines.append(f"{r['preset']:<18}{r['n']:>3}  {r['c2']:<30}skipped: {r['reason']}")
            continue
        if r["discrepancy"]:
            verdict = "flagged discrepancy"
        elif not r["expected"]:
            verdict = "no reported value"
        else:
            verdict = "match" if r["match"] else "MISMATCH"
        details = "; ".join(
            f"{k} expected {e['expected']} ({e['provenance']})" for k, e in r["expected"].items() if not e["match"]
        )
        lines.append(
            f"{r['preset']:<18}{r['n']:>3}  {r['c2']:<30}{_yn(r['is_lattice']):<9}{r['d_min_sq']:>4}"
            f"  {_fmt_density(r['density']):>9}  {r['hermite']:>8.3f}  {verdict}" + (f" [{details}]" if details else "")
        )
    return EXIT_OK, "\n".join(lines)


COMMANDS = {
    "code-info": cmd_code_info,
    "analyze": cmd_analyze,
    "find-counterexample": cmd_find_counterexample,
    "paper-table": cmd_paper_table,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cstar", description="Construction C* lattices from binary codes")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--enum-budget", type=int, default=DEFAULT_ENUM_BUDGET)
        p.add_argument("--data-dir", default=None, help="directory of code files (default: $CSTAR_DATA_DIR)")
        p.add_argument("--builtin")
        p.add_argument("--c2-file")
        if name != "code-info":
            p.add_argument("--preset")
            p.add_argument("--n", type=int)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--trials", type=int, default=analysis.DEFAULT_TRIALS)
            p.add_argument("--pair-budget", type=int, default=analysis.DEFAULT_PAIR_POINTS)
            p.add_argument("--quotient-budget", type=int, default=DEFAULT_QUOTIENT_BUDGET)
        if name == "find-counterexample":
            p.add_argument("--budget", type=int, default=10**6, help="maximum number of pairs tested")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = CommandConfig(**{k: v for k, v in vars(args).items() if k in CommandConfig.__dataclass_fields__})
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            code, text = COMMANDS[cfg.subcommand](cfg)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
