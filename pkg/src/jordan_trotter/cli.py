"""Command line front end: verification suites and CSV experiment runs.

Subcommands
-----------
verify-taylor
    Exact order checks in the free algebra; one line per claim.
bounds
    Monte-Carlo dominance sweep of the closed-form error bounds.
contour
    Single-step errors of selected formulas over a (t d1, t d2) grid for
    the generator t H = td1 X + td2 Y, against eigendecomposition-exact
    evolution.
fidelity
    State errors from |0> under H = alpha Z + beta X, against the
    closed-form single-qubit evolution.
slope
    Fitted convergence order of one formula; exits nonzero when the
    fitted slope leaves the target band.

All delimited output is UTF-8, comma separated, LF line endings, floats
printed with 17 significant digits.  Runs are deterministic for a fixed
configuration, including the parallelism degree.  Exit codes: 0 checks
passed, 1 a numeric assertion failed, 2 bad usage.
"""
from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .bounds import (
    THEOREM_IDS,
    dominance_reports,
    empirical_unitary_error,
    exact_evolution,
    exact_single_qubit,
    fit_order,
    state_error,
)
from .formulas import (
    TermList,
    eval_g,
    eval_j1,
    eval_j2,
    eval_q3,
    eval_qs2,
    eval_s2,
    eval_s3,
    evaluate,
    n_step_evolution,
    qtilde_spec,
    standard_formula,
)
from .linalg import NormKind
from .symbolic import order_claims

DEFAULT_SEED = 1729
DEFAULT_RANGE = 2.0 * math.pi

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

TWO_TERM_FORMULAS = ("j1", "j2", "s2", "q3", "s3", "qtilde4")
SLOPE_TARGETS = {
    "j1": 2.0,
    "j2": 3.0,
    "s2": 3.0,
    "qs2": 3.0,
    "q3": 4.0,
    "s3": 5.0,
    "qtilde4": 5.0,
    "j2-nstep": -2.0,
}
# Errors below this are dominated by rounding and excluded from fits.
ERROR_FLOOR = 1e-12


@dataclass(frozen=True)
class RunConfig:
    """Validated knobs for one command invocation."""

    command: str
    seed: int = DEFAULT_SEED
    out: Path | None = None
    grid: int = 201
    d1_min: float = -DEFAULT_RANGE
    d1_max: float = DEFAULT_RANGE
    d2_min: float = -DEFAULT_RANGE
    d2_max: float = DEFAULT_RANGE
    t_min: float = 10.0**-2.5
    t_max: float = 0.1
    points: int = 14
    formulas: tuple = ()
    norm_kind: NormKind = NormKind.FROBENIUS
    jobs: int = 1
    samples: int = 200
    degree: int = 4
    q3_weight: Fraction = Fraction(2, 3)
    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        if self.grid < 2:
            raise ValueError(f"grid resolution must be >= 2, got {self.grid}")
        if self.points < 1:
            raise ValueError(f"point count must be >= 1, got {self.points}")
        if self.jobs < 1:
            raise ValueError(f"parallelism degree must be >= 1, got {self.jobs}")
        if self.samples < 1:
            raise ValueError(f"sample count must be >= 1, got {self.samples}")
        if self.d1_min >= self.d1_max or self.d2_min >= self.d2_max:
            raise ValueError("grid ranges must satisfy min < max")
        if self.t_min <= 0 or self.t_min >= self.t_max:
            raise ValueError("time range must satisfy 0 < t-min < t-max")


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def two_term_step(formula_id: str, t: float, a, b) -> np.ndarray:
    """Single unitary-convention step of a two-term formula.

    The first element plays the role the experiments assign it: leading
    factor of the plain product, outer element of the sandwiches.
    """
    z = -1j * t
    if formula_id == "j1":
        return eval_j1(t, a, b)
    if formula_id == "j2":
        return eval_j2(z, [a, b])
    if formula_id == "s2":
        return eval_s2(z, [b, a])
    if formula_id == "q3":
        return eval_q3(z, a, b)
    if formula_id == "s3":
        return eval_s3(t, a, b)
    if formula_id == "qtilde4":
        return evaluate(qtilde_spec(4), z, [b, a])
    raise ValueError(f"formula {formula_id!r} is not a two-term step")


def _contour_row_block(args):
    td1, axis2, formulas, norm_value = args
    kind = NormKind(norm_value)
    block = []
    for td2 in axis2:
        a = td1 * PAULI_X
        b = td2 * PAULI_Y
        exact = exact_evolution(a + b, 1.0)
        errs = [
            empirical_unitary_error(two_term_step(fid, 1.0, a, b), exact, kind)
            for fid in formulas
        ]
        block.append((float(td1), float(td2), *errs))
    return block


def contour_rows(cfg: RunConfig):
    """Header and rows for the grid experiment, row-major in (td1, td2)."""
    formulas = cfg.formulas or ("s3", "q3")
    for fid in formulas:
        if fid not in TWO_TERM_FORMULAS:
            raise ValueError(f"formula {fid!r} not usable on a two-term grid")
    axis1 = np.linspace(cfg.d1_min, cfg.d1_max, cfg.grid)
    axis2 = np.linspace(cfg.d2_min, cfg.d2_max, cfg.grid)
    header = ["td1", "td2"] + [f"err_{fid}" for fid in formulas]
    tasks = [(td1, axis2, tuple(formulas), cfg.norm_kind.value) for td1 in axis1]
    rows = []
    if cfg.jobs == 1:
        for task in tasks:
            rows.extend(_contour_row_block(task))
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            for block in pool.map(_contour_row_block, tasks):
                rows.extend(block)
    return header, rows


def fidelity_rows(cfg: RunConfig):
    """Header and rows of state errors on (0, t-max] from |0>."""
    formulas = cfg.formulas or ("j1", "s2", "s3", "q3")
    for fid in formulas:
        if fid not in TWO_TERM_FORMULAS:
            raise ValueError(f"formula {fid!r} not usable on a two-term pair")
    a = cfg.alpha * PAULI_Z
    b = cfg.beta * PAULI_X
    psi0 = np.array([1.0, 0.0], dtype=complex)
    header = ["t"] + [f"eps_{fid}" for fid in formulas]
    rows = []
    for k in range(1, cfg.points + 1):
        t = cfg.t_max * k / cfg.points
        exact = exact_single_qubit(t, cfg.alpha, cfg.beta)
        eps = [
            state_error(two_term_step(fid, t, a, b), exact, psi0)
            for fid in formulas
        ]
        rows.append((float(t), *eps))
    return header, rows


def slope_points(cfg: RunConfig, formula_id: str):
    """(parameter, error) samples used for the order fit."""
    if formula_id == "j2-nstep":
        terms = TermList([PAULI_X, PAULI_Y])
        exact = eval_g(1.0, terms)
        ns = [2, 4, 8, 16, 32, 64, 128]
        pts = []
        for n in ns:
            approx = n_step_evolution(standard_formula("j2"), terms, 1.0, n)
            pts.append((float(n), empirical_unitary_error(approx, exact, cfg.norm_kind)))
        return pts
    if formula_id not in SLOPE_TARGETS:
        raise ValueError(f"unknown formula id: {formula_id!r}")
    ts = np.logspace(math.log10(cfg.t_min), math.log10(cfg.t_max), cfg.points)
    pts = []
    if formula_id == "qs2":
        terms = TermList([PAULI_X, PAULI_Y, PAULI_Z])
        for t in ts:
            exact = eval_g(-1j * t, terms)
            err = empirical_unitary_error(eval_qs2(-1j * t, terms), exact, cfg.norm_kind)
            pts.append((float(t), err))
        return pts
    terms = TermList([PAULI_X, PAULI_Y])
    for t in ts:
        exact = eval_g(-1j * t, terms)
        approx = two_term_step(formula_id, float(t), PAULI_X, PAULI_Y)
        pts.append((float(t), empirical_unitary_error(approx, exact, cfg.norm_kind)))
    return pts


def cmd_verify_taylor(cfg: RunConfig) -> int:
    claims = order_claims(cfg.degree, cfg.q3_weight)
    failed = 0
    for claim in claims:
        if claim.passed:
            suffix = f" ({claim.detail})" if claim.detail else ""
            print(f"ok   {claim.name}{suffix}")
        else:
            failed += 1
            suffix = f": {claim.detail}" if claim.detail else ""
            print(f"FAIL {claim.name}{suffix}")
    print(f"{len(claims) - failed}/{len(claims)} claims hold")
    return 1 if failed else 0


def cmd_bounds(cfg: RunConfig) -> int:
    reports = dominance_reports(cfg.seed, cfg.samples)
    out = cfg.out or Path("bounds.csv")
    write_csv(
        out,
        ["theorem", "sample", "parameter", "empirical", "bound", "ratio"],
        [(r.theorem, r.sample, r.parameter, r.empirical, r.bound, r.ratio)
         for r in reports],
    )
    violations = 0
    for theorem in THEOREM_IDS:
        rs = [r.ratio for r in reports if r.theorem == theorem]
        worst = max(rs)
        bad = sum(1 for r in rs if r > 1.0)
        violations += bad
        status = "PASS" if bad == 0 else "FAIL"
        print(f"{theorem}: max ratio {worst:.6f} over {len(rs)} checks: {status}")
    print(f"wrote {out}")
    return 1 if violations else 0


def cmd_contour(cfg: RunConfig) -> int:
    header, rows = contour_rows(cfg)
    out = cfg.out or Path("contour.csv")
    write_csv(out, header, rows)
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


def cmd_fidelity(cfg: RunConfig) -> int:
    header, rows = fidelity_rows(cfg)
    out = cfg.out or Path("fidelity.csv")
    write_csv(out, header, rows)
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


def cmd_slope(cfg: RunConfig, formula_id: str) -> int:
    pts = slope_points(cfg, formula_id)
    if cfg.out is not None:
        label = "n" if formula_id == "j2-nstep" else "t"
        write_csv(cfg.out, [label, "err"], pts)
    usable = [(t, e) for t, e in pts if e > ERROR_FLOOR]
    slope = fit_order(usable)
    target = SLOPE_TARGETS[formula_id]
    band = 0.3 if abs(target) >= 5.0 else 0.2
    ok = abs(slope - target) <= band
    print(
        f"slope {formula_id}: fitted {slope:.4f}, target {target:+.1f} "
        f"+/- {band}, {len(usable)}/{len(pts)} points: "
        f"{'PASS' if ok else 'FAIL'}"
    )
    return 0 if ok else 1


def _parse_formulas(text: str) -> tuple:
    ids = tuple(part.strip() for part in text.split(",") if part.strip())
    if not ids:
        raise ValueError("formula list is empty")
    for fid in ids:
        if fid not in SLOPE_TARGETS or fid == "j2-nstep":
            raise ValueError(f"unknown formula id: {fid!r}")
    return ids


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jtrotter",
        description="Jordan-algebraic product formulas: verification and experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid=False, trange=False):
        p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                       help=f"RNG seed (default {DEFAULT_SEED})")
        p.add_argument("--out", type=Path, default=None, help="CSV output path")
        p.add_argument("--norm", choices=["frobenius", "operator"],
                       default="frobenius", help="matrix norm for errors")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers")
        if grid:
            p.add_argument("--grid", type=int, default=201, help="grid points per axis")
            p.add_argument("--d1-min", type=float, default=-DEFAULT_RANGE)
            p.add_argument("--d1-max", type=float, default=DEFAULT_RANGE)
            p.add_argument("--d2-min", type=float, default=-DEFAULT_RANGE)
            p.add_argument("--d2-max", type=float, default=DEFAULT_RANGE)
        if trange:
            p.add_argument("--t-min", type=float, default=10.0**-2.5)
            p.add_argument("--t-max", type=float, default=None)
            p.add_argument("--points", type=int, default=None)

    p = sub.add_parser("verify-taylor", help="exact order checks in the free algebra")
    p.add_argument("--degree", type=int, default=4,
                   help="comparison depth for the third-order checks")
    p.add_argument("--q3-weight", type=Fraction, default=Fraction(2, 3),
                   help=argparse.SUPPRESS)
    p.set_defaults(func=_run_verify_taylor)

    p = sub.add_parser("bounds", help="Monte-Carlo bound dominance sweep")
    common(p)
    p.add_argument("--samples", type=int, default=200,
                   help="random samples per theorem (default 200)")
    p.set_defaults(func=_run_bounds)

    p = sub.add_parser("contour", help="grid of single-step errors for tH = td1 X + td2 Y")
    common(p, grid=True)
    p.add_argument("--formulas", type=str, default="s3,q3",
                   help="comma list of formula ids (default s3,q3)")
    p.set_defaults(func=_run_contour)

    p = sub.add_parser("fidelity", help="state errors from |0> under alpha Z + beta X")
    common(p, trange=True)
    p.add_argument("--formulas", type=str, default="j1,s2,s3,q3",
                   help="comma list of formula ids (default j1,s2,s3,q3)")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.set_defaults(func=_run_fidelity)

    p = sub.add_parser("slope", help="fitted convergence order of one formula")
    common(p, trange=True)
    p.add_argument("formula", choices=sorted(SLOPE_TARGETS),
                   help="formula id, or j2-nstep for the n-step sweep")
    p.set_defaults(func=_run_slope)

    return parser


def _base_config(args, command: str, **extra) -> RunConfig:
    fields = dict(
        command=command,
        seed=getattr(args, "seed", DEFAULT_SEED),
        out=getattr(args, "out", None),
        norm_kind=NormKind("operator" if getattr(args, "norm", "frobenius") == "operator"
                           else "frobenius"),
        jobs=getattr(args, "jobs", 1),
    )
    fields.update(extra)
    return RunConfig(**fields)


def _run_verify_taylor(args) -> int:
    cfg = RunConfig(command="verify-taylor", degree=args.degree,
                    q3_weight=Fraction(args.q3_weight))
    return cmd_verify_taylor(cfg)


def _run_bounds(args) -> int:
    cfg = _base_config(args, "bounds", samples=args.samples)
    return cmd_bounds(cfg)


def _run_contour(args) -> int:
    cfg = _base_config(
        args, "contour",
        grid=args.grid,
        d1_min=args.d1_min, d1_max=args.d1_max,
        d2_min=args.d2_min, d2_max=args.d2_max,
        formulas=_parse_formulas(args.formulas),
    )
    return cmd_contour(cfg)


def _run_fidelity(args) -> int:
    cfg = _base_config(
        args, "fidelity",
        t_max=args.t_max if args.t_max is not None else 10.0,
        points=args.points if args.points is not None else 500,
        formulas=_parse_formulas(args.formulas),
        alpha=args.alpha, beta=args.beta,
    )
    return cmd_fidelity(cfg)


def _run_slope(args) -> int:
    cfg = _base_config(
        args, "slope",
        t_min=args.t_min,
        t_max=args.t_max if args.t_max is not None else 0.1,
        points=args.points if args.points is not None else 14,
    )
    return cmd_slope(cfg, args.formula)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
