"""Closed-form error bounds and empirical error measurements.

The bound evaluators take only step counts, times, and term norms; the
empirical side takes concrete matrices.  Keeping the two halves separate
lets the Monte-Carlo dominance checks compare them without shared code
paths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .formulas import FormulaSpec, TermList, evaluate, n_step_evolution
from .linalg import NormKind, as_matrix, is_hermitian, norm


def _checked_norms(norms: Sequence[float]) -> list[float]:
    vals = [float(v) for v in norms]
    if not vals or any(v < 0 or not math.isfinite(v) for v in vals):
        raise ValueError(f"term norms must be finite and non-negative: {norms!r}")
    return vals


def bound_j2_nstep(n: int, norms: Sequence[float]) -> float:
    """n-step bound for the symmetrized-product formula at total time 1.

    (1 / (3 n**2)) * S**3 * exp(S) with S the sum of term norms.
    """
    if n < 1:
        raise ValueError(f"step count must be >= 1, got {n!r}")
    s = sum(_checked_norms(norms))
    return s**3 * math.exp(s) / (3.0 * n * n)


def bound_qs2(t: float, p: int, norms: Sequence[float]) -> float:
    """Single-step bound for the quasi-symmetric formula on 2p + 1 terms.

    ((3**p + 1) / 6) * |t|**3 * S**3 * exp(|t| S).
    """
    vals = _checked_norms(norms)
    if p < 1 or len(vals) != 2 * p + 1:
        raise ValueError(f"need 2p + 1 norms with p >= 1, got p={p!r}, m={len(vals)}")
    s = sum(vals)
    at = abs(t)
    return (3.0**p + 1.0) / 6.0 * at**3 * s**3 * math.exp(at * s)


def bound_s2(t: float, m: int, norms: Sequence[float]) -> float:
    """Single-step bound for the nested sandwich on m terms.

    ((3**(m-1) + 1) / 6) * |t|**3 * S**3 * exp(|t| S).
    """
    vals = _checked_norms(norms)
    if m < 1 or len(vals) != m:
        raise ValueError(f"need m norms with m >= 1, got m={m!r}, len={len(vals)}")
    s = sum(vals)
    at = abs(t)
    return (3.0 ** (m - 1) + 1.0) / 6.0 * at**3 * s**3 * math.exp(at * s)


def bound_j2_unitary(n: int, norms: Sequence[float]) -> float:
    """n-step bound against exp(i S) for self-adjoint terms.

    Same prefactor as :func:`bound_j2_nstep` but the exponential factor
    only sees one step worth of norm: exp(S / n).
    """
    if n < 1:
        raise ValueError(f"step count must be >= 1, got {n!r}")
    s = sum(_checked_norms(norms))
    return s**3 * math.exp(s / n) / (3.0 * n * n)


def bound_s2_unitary(n: int, m: int, norms: Sequence[float]) -> float:
    """n-step sandwich bound against exp(i S) for self-adjoint terms.

    ((3**(m-1) + 1) / (6 n**2)) * S**3 * exp(S / n).
    """
    vals = _checked_norms(norms)
    if n < 1:
        raise ValueError(f"step count must be >= 1, got {n!r}")
    if m < 1 or len(vals) != m:
        raise ValueError(f"need m norms with m >= 1, got m={m!r}, len={len(vals)}")
    s = sum(vals)
    return (3.0 ** (m - 1) + 1.0) / (6.0 * n * n) * s**3 * math.exp(s / n)


def bound_q3(t: float, norm_a: float, norm_b: float) -> float:
    """Single-step bound for the two-term third-order combination.

    (2/9) * |t|**4 * (a + b)**4 * exp(|t| (a + b)).
    """
    a, b = _checked_norms([norm_a, norm_b])
    s = a + b
    at = abs(t)
    return (2.0 / 9.0) * at**4 * s**4 * math.exp(at * s)


def empirical_unitary_error(approx, exact, kind: NormKind = NormKind.OPERATOR2) -> float:
    """Norm distance between an approximant step and the exact evolution."""
    ma, me = as_matrix(approx), as_matrix(exact)
    if ma.shape != me.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {me.shape}")
    return norm(ma - me, kind)


def state_error(approx, exact, psi0) -> float:
    """Euclidean distance of the two evolved states (approx - exact) psi0."""
    ma, me = as_matrix(approx), as_matrix(exact)
    if ma.shape != me.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {me.shape}")
    v = np.asarray(psi0, dtype=complex)
    if v.shape != (ma.shape[0],):
        raise ValueError(f"state must have shape ({ma.shape[0]},), got {v.shape}")
    return float(np.linalg.norm((ma - me) @ v))


def exact_single_qubit(t: float, alpha: float, beta: float) -> np.ndarray:
    """Closed-form exp(-i t (alpha Z + beta X)).

    cos(t w) I - (i / w) sin(t w) H with w = hypot(alpha, beta); the
    limit at w = 0 is the identity.
    """
    h = np.array([[alpha, beta], [beta, -alpha]], dtype=complex)
    w = math.hypot(alpha, beta)
    ident = np.eye(2, dtype=complex)
    if w == 0.0:
        return ident
    return math.cos(t * w) * ident - 1j * math.sin(t * w) / w * h


def exact_evolution(h, t: float) -> np.ndarray:
    """exp(-i t h) for Hermitian h through its eigendecomposition.

    Independent of the Pade exponential, so it doubles as the oracle in
    the tests for :func:`jordan_trotter.linalg.mat_exp`.
    """
    return evaluate_exact([h], -1j * t)


def fit_order(points: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of log(err) against log(t).

    Expects at least five (t, err) pairs with strictly increasing
    positive t and errors safely above the floating-point floor.
    """
    pts = [(float(t), float(e)) for t, e in points]
    if len(pts) < 5:
        raise ValueError(f"need at least 5 points, got {len(pts)}")
    ts = [t for t, _ in pts]
    errs = [e for _, e in pts]
    floor = 10.0 * np.finfo(float).eps
    if any(t <= 0 for t in ts) or any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t values must be positive and strictly increasing")
    if any(e <= floor for e in errs):
        raise ValueError("errors too close to the floating-point floor to fit")
    slope = np.polyfit(np.log(ts), np.log(errs), 1)[0]
    return float(slope)


def random_hermitian(dim: int, target_norm: float, rng: np.random.Generator) -> np.ndarray:
    """Hermitian sample with the requested operator norm.

    Entries are i.i.d. complex standard normal, symmetrized, then
    rescaled so the operator norm equals target_norm.
    """
    if dim < 1 or target_norm <= 0:
        raise ValueError("dimension and target norm must be positive")
    r = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    h = (r + r.conj().T) / 2.0
    return h * (target_norm / np.linalg.norm(h, 2))


@dataclass(frozen=True)
class ErrorReport:
    """One bound-versus-measurement record from the dominance sweep."""

    theorem: str
    sample: int
    parameter: float
    empirical: float
    bound: float

    @property
    def ratio(self) -> float:
        return self.empirical / self.bound


_N_GRID = (1, 2, 4, 8, 16, 32, 64)
_T_GRID = (0.1, 0.5, 1.0)
THEOREM_IDS = ("j2-nstep", "qs2", "s2", "j2-unitary", "s2-unitary", "q3")


def _sample_terms(theorem: str, seed: int, idx: int, dim: int) -> list[np.ndarray]:
    rng = np.random.default_rng([seed, THEOREM_IDS.index(theorem), idx])
    m = 3 if theorem == "qs2" else 2
    return [random_hermitian(dim, rng.uniform(0.1, 1.0), rng) for _ in range(m)]


def dominance_reports(seed: int, samples: int = 200, dim: int = 4,
                      theorems: Sequence[str] = THEOREM_IDS) -> list[ErrorReport]:
    """Empirical error against closed-form bound over a seeded ensemble.

    Every theorem draws its own substream per sample index, so results
    do not depend on how the loop is split across workers.
    """
    if samples < 1:
        raise ValueError(f"sample count must be >= 1, got {samples!r}")
    unknown = set(theorems) - set(THEOREM_IDS)
    if unknown:
        raise ValueError(f"unknown theorem ids: {sorted(unknown)}")
    reports: list[ErrorReport] = []
    for theorem in theorems:
        for idx in range(samples):
            reports.extend(_dominance_one(theorem, seed, idx, dim))
    return reports


def _dominance_one(theorem: str, seed: int, idx: int, dim: int) -> list[ErrorReport]:
    terms = _sample_terms(theorem, seed, idx, dim)
    tl = TermList(terms)
    out: list[ErrorReport] = []
    if theorem == "j2-nstep":
        exact = evaluate_exact(tl, 1.0)
        for n in _N_GRID:
            approx = n_step_evolution(FormulaSpec("j2", 2), tl, 1.0, n)
            err = empirical_unitary_error(approx, exact)
            out.append(ErrorReport(theorem, idx, float(n), err, bound_j2_nstep(n, tl.norms)))
    elif theorem == "qs2":
        for t in _T_GRID:
            exact = evaluate_exact(tl, t)
            approx = evaluate(FormulaSpec("qs2", 2), t, tl)
            err = empirical_unitary_error(approx, exact)
            out.append(ErrorReport(theorem, idx, t, err, bound_qs2(t, 1, tl.norms)))
    elif theorem == "s2":
        for t in _T_GRID:
            exact = evaluate_exact(tl, t)
            approx = evaluate(FormulaSpec("s2", 2), t, tl)
            err = empirical_unitary_error(approx, exact)
            out.append(ErrorReport(theorem, idx, t, err, bound_s2(t, len(tl), tl.norms)))
    elif theorem == "j2-unitary":
        exact = evaluate_exact(tl, 1j)
        for n in _N_GRID:
            approx = n_step_evolution(FormulaSpec("j2", 2), tl, 1j, n)
            err = empirical_unitary_error(approx, exact)
            out.append(ErrorReport(theorem, idx, float(n), err, bound_j2_unitary(n, tl.norms)))
    elif theorem == "s2-unitary":
        exact = evaluate_exact(tl, 1j)
        for n in _N_GRID:
            approx = n_step_evolution(FormulaSpec("s2", 2), tl, 1j, n)
            err = empirical_unitary_error(approx, exact)
            out.append(ErrorReport(theorem, idx, float(n), err,
                                   bound_s2_unitary(n, len(tl), tl.norms)))
    elif theorem == "q3":
        for t in _T_GRID:
            exact = evaluate_exact(tl, t)
            approx = evaluate(FormulaSpec("q3", 3), t, tl)
            err = empirical_unitary_error(approx, exact)
            out.append(ErrorReport(theorem, idx, t, err,
                                   bound_q3(t, tl.norms[0], tl.norms[1])))
    else:
        raise ValueError(f"unknown theorem id: {theorem!r}")
    return out


def evaluate_exact(terms, z: complex) -> np.ndarray:
    """exp(z * sum of terms) through the eigendecomposition of the sum.

    Restricted to Hermitian sums; used as the reference side of every
    empirical comparison so the approximants never compete against
    their own exponential kernel.
    """
    tl = TermList(terms)
    total = np.sum(tl.terms, axis=0)
    if not is_hermitian(total):
        raise ValueError("exact reference needs a Hermitian sum of terms")
    w, v = np.linalg.eigh(total)
    return (v * np.exp(z * w)) @ v.conj().T
