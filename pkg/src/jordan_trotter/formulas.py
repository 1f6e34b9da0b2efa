"""Product-formula approximants built from Jordan operations.

Every approximant here targets exp(z * (A_1 + ... + A_m)) for a list of
square matrices A_k and a complex step z.  Conventions:

* term lists are indexed so that A_1 is the innermost factor: the
  second-order sandwich over terms (B, A) is exp(zA/2) exp(zB) exp(zA/2)
  in the special realization;
* unitary evolution is obtained by passing z = -1j * t;
* recursive compositions are described by :class:`FormulaSpec` trees and
  evaluated by :func:`evaluate`.

The solved composition coefficients for target order n are the standard
two-value family d2 = 1/(2 - 2**(1/n)), d1 = 1 - 2*d2, which satisfies
d1 + 2*d2 = 1 and d1**n + 2*d2**n = 0 for odd n.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .jordan import jordan_product, triple_product
from .linalg import NormKind, as_matrix, is_hermitian, mat_exp, norm

_COEFF_TOL = 1e-12


class TermList:
    """Validated list of equal-sized square matrices with cached norms."""

    __slots__ = ("terms", "dim", "norms", "hermitian")

    def __init__(self, terms):
        if isinstance(terms, TermList):
            self.terms = terms.terms
            self.dim = terms.dim
            self.norms = terms.norms
            self.hermitian = terms.hermitian
            return
        mats = tuple(as_matrix(t) for t in terms)
        if not mats:
            raise ValueError("at least one term is required")
        dims = {m.shape[0] for m in mats}
        if len(dims) != 1:
            raise ValueError(f"terms must share one dimension, got {sorted(dims)}")
        self.terms = mats
        self.dim = mats[0].shape[0]
        self.norms = tuple(norm(m, NormKind.OPERATOR2) for m in mats)
        self.hermitian = tuple(is_hermitian(m) for m in mats)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, k):
        return self.terms[k]

    @property
    def total_norm(self) -> float:
        """Sum of the cached operator norms of the terms."""
        return float(sum(self.norms))


def solve_symmetric_coeffs(n: int) -> tuple[float, float]:
    """Coefficients (d1, d2) for the symmetric composition at odd order n.

    The returned pair satisfies d1 + 2*d2 = 1 and d1**n + 2*d2**n = 0.
    Even n is rejected: the power condition then forces every
    coefficient to zero, contradicting the sum condition, so no real
    solution exists with this two-value ansatz.
    """
    if not isinstance(n, (int, np.integer)) or n < 3 or n % 2 == 0:
        raise ValueError(f"order must be an odd integer >= 3, got {n!r}")
    d2 = 1.0 / (2.0 - 2.0 ** (1.0 / n))
    d1 = 1.0 - 2.0 * d2
    return d1, d2


def solve_nonsymmetric_coeffs(n: int) -> tuple[float, float, float]:
    """Coefficients (c1, c2, c3) for the plain composition at odd order n.

    Satisfies c1 + c2 + c3 = 1 and c1**n + c2**n + c3**n = 0; the
    minimal real family uses c1 = c3.  Even n is rejected for the same
    reason as in :func:`solve_symmetric_coeffs`.
    """
    if not isinstance(n, (int, np.integer)) or n < 3 or n % 2 == 0:
        raise ValueError(f"order must be an odd integer >= 3, got {n!r}")
    c1 = 1.0 / (2.0 - 2.0 ** (1.0 / n))
    return c1, 1.0 - 2.0 * c1, c1


_BASE_KINDS = frozenset({"j1", "j2", "s2", "qs2", "q3", "s3"})
_RECURSIVE_KINDS = frozenset({"nonsym", "sym"})


@dataclass(frozen=True)
class FormulaSpec:
    """Tree description of an approximant.

    kind
        One of j1, j2, s2, qs2, q3, s3 (leaves) or nonsym, sym
        (compositions of child formulas).
    order
        For leaves, the order of the construction; for compositions, the
        target order of the coefficient system.  A composition claiming
        a higher order than its children must carry coefficients whose
        order-th power sum vanishes.
    children
        For compositions, (coefficient, child) pairs.  The nonsym kind
        folds the children with the bilinear product at times c_j * z;
        the sym kind nests triple-product sandwiches around the first
        child, so children[0] is the innermost stage and every outer
        coefficient enters twice.
    """

    kind: str
    order: int
    children: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind in _BASE_KINDS:
            if self.children:
                raise ValueError(f"kind {self.kind!r} takes no children")
            if self.order < 1:
                raise ValueError("order must be a positive integer")
            return
        if self.kind not in _RECURSIVE_KINDS:
            raise ValueError(f"unknown formula kind: {self.kind!r}")
        kids = tuple((c, ch) for c, ch in self.children)
        object.__setattr__(self, "children", kids)
        if not kids:
            raise ValueError("a composition needs at least one child")
        coeffs = [float(c) for c, _ in kids]
        if self.kind == "nonsym":
            total = sum(coeffs)
            power = sum(c**self.order for c in coeffs)
        else:
            total = coeffs[0] + 2.0 * sum(coeffs[1:])
            power = coeffs[0] ** self.order + 2.0 * sum(
                c**self.order for c in coeffs[1:]
            )
        if abs(total - 1.0) > _COEFF_TOL:
            raise ValueError(f"composition coefficients must sum to 1, got {total!r}")
        child_order = min(ch.order for _, ch in kids)
        if self.order > child_order and abs(power) > _COEFF_TOL:
            raise ValueError(
                "a composition claiming order above its children needs a "
                f"vanishing power sum; got {power!r} at order {self.order}"
            )


def _prod_exp(z: complex, tl: TermList) -> np.ndarray:
    """Ordered associative product exp(z A_1) ... exp(z A_m)."""
    out = mat_exp(z * tl[0])
    for k in range(1, len(tl)):
        out = out @ mat_exp(z * tl[k])
    return out


def eval_g(z: complex, terms) -> np.ndarray:
    """Exact evolution exp(z * sum of terms)."""
    tl = TermList(terms)
    return mat_exp(z * np.sum(tl.terms, axis=0))


def eval_j2(z: complex, terms) -> np.ndarray:
    """Second-order symmetrized product of exponentials.

    Folds exp(z A_1) with each further exponential using the commutative
    bilinear product; for two terms this is
    (exp(zA_1) exp(zA_2) + exp(zA_2) exp(zA_1)) / 2.
    """
    tl = TermList(terms)
    out = mat_exp(z * tl[0])
    for k in range(1, len(tl)):
        out = jordan_product(out, mat_exp(z * tl[k]))
    return out


def eval_s2(z: complex, terms) -> np.ndarray:
    """Second-order nested exponential sandwich.

    exp(z A_1) is wrapped by half-step quadratic representations of the
    remaining terms, outermost last: for terms (B, A) the result is
    exp(zA/2) exp(zB) exp(zA/2) in the special realization.
    """
    tl = TermList(terms)
    out = mat_exp(z * tl[0])
    for k in range(1, len(tl)):
        e = mat_exp((z / 2.0) * tl[k])
        out = triple_product(e, out, e)
    return out


def eval_qs2(z: complex, terms) -> np.ndarray:
    """Second-order quasi-symmetric formula for an odd number of terms.

    Wraps exp(z A_1) with two-sided multiplications by pairs of full-step
    exponentials; needs m = 2p + 1 terms.
    """
    tl = TermList(terms)
    if len(tl) % 2 == 0:
        raise ValueError(f"term count must be odd, got {len(tl)}")
    out = mat_exp(z * tl[0])
    for j in range(1, len(tl), 2):
        left = mat_exp(z * tl[j])
        right = mat_exp(z * tl[j + 1])
        out = triple_product(left, out, right)
    return out


def eval_q3(z: complex, a, b) -> np.ndarray:
    """Third-order approximant for two terms.

    Weighted combination of the two sandwich orientations and the
    symmetrized product: (2/3) S + (2/3) S-swapped - (1/3) J.  Symmetric
    in (a, b).
    """
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    ea2 = mat_exp((z / 2.0) * ma)
    eb2 = mat_exp((z / 2.0) * mb)
    ea = ea2 @ ea2
    eb = eb2 @ eb2
    s_ab = triple_product(ea2, eb, ea2)
    s_ba = triple_product(eb2, ea, eb2)
    j = jordan_product(ea, eb)
    return (2.0 / 3.0) * (s_ab + s_ba) - (1.0 / 3.0) * j


def eval_j1(t: float, a, b) -> np.ndarray:
    """First-order step exp(-i t a) exp(-i t b)."""
    return _prod_exp(-1j * t, TermList([a, b]))


def eval_s3(t: float, a, b) -> np.ndarray:
    """Triple-jump composition of sandwiches, unitary convention.

    Three second-order stages exp(-i w t a / 2) exp(-i w t b)
    exp(-i w t a / 2) at stage fractions (d2, d1, d2) from the solved
    order-3 system; the palindromic layout makes the step accurate to
    order four.
    """
    return _s3_step(-1j * t, TermList([b, a]))


def _s3_step(z: complex, tl: TermList) -> np.ndarray:
    d1, d2 = solve_symmetric_coeffs(3)
    outer = eval_s2(d2 * z, tl)
    return outer @ eval_s2(d1 * z, tl) @ outer


def compose_nonsymmetric(children, z: complex, terms) -> np.ndarray:
    """Left-nested bilinear-product fold of child steps at times c_j z."""
    tl = TermList(terms)
    kids = tuple(children)
    if not kids:
        raise ValueError("a composition needs at least one child")
    total = sum(float(c) for c, _ in kids)
    if abs(total - 1.0) > _COEFF_TOL:
        raise ValueError(f"composition coefficients must sum to 1, got {total!r}")
    out = evaluate(kids[0][1], float(kids[0][0]) * z, tl)
    for c, ch in kids[1:]:
        out = jordan_product(out, evaluate(ch, float(c) * z, tl))
    return out


def compose_symmetric(children, z: complex, terms) -> np.ndarray:
    """Nested triple-product sandwich of child steps.

    children[0] gives the innermost stage at time d_1 z; each further
    (d_j, child) wraps the result as {Q(d_j z), ., Q(d_j z)}, so its
    coefficient enters the time budget twice.
    """
    tl = TermList(terms)
    kids = tuple(children)
    if not kids:
        raise ValueError("a composition needs at least one child")
    coeffs = [float(c) for c, _ in kids]
    total = coeffs[0] + 2.0 * sum(coeffs[1:])
    if abs(total - 1.0) > _COEFF_TOL:
        raise ValueError(f"composition coefficients must sum to 1, got {total!r}")
    out = evaluate(kids[0][1], coeffs[0] * z, tl)
    for c, ch in kids[1:]:
        wrap = evaluate(ch, float(c) * z, tl)
        out = triple_product(wrap, out, wrap)
    return out


def evaluate(spec: FormulaSpec, z: complex, terms) -> np.ndarray:
    """Evaluate a formula tree at complex step z over the given terms."""
    tl = TermList(terms)
    if spec.kind == "j1":
        return _prod_exp(z, tl)
    if spec.kind == "j2":
        return eval_j2(z, tl)
    if spec.kind == "s2":
        return eval_s2(z, tl)
    if spec.kind == "qs2":
        return eval_qs2(z, tl)
    if spec.kind == "q3":
        if len(tl) != 2:
            raise ValueError(f"q3 needs exactly two terms, got {len(tl)}")
        return eval_q3(z, tl[0], tl[1])
    if spec.kind == "s3":
        return _s3_step(z, tl)
    if spec.kind == "nonsym":
        return compose_nonsymmetric(spec.children, z, tl)
    if spec.kind == "sym":
        return compose_symmetric(spec.children, z, tl)
    raise ValueError(f"unknown formula kind: {spec.kind!r}")


def n_step_evolution(spec: FormulaSpec, terms, z_total: complex, n: int) -> np.ndarray:
    """n-fold power of the single step at z_total / n.

    Powers of a single element are unambiguous (power associativity), so
    the repeated product is computed as a matrix power.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"step count must be a positive integer, got {n!r}")
    step = evaluate(spec, z_total / n, TermList(terms))
    return np.linalg.matrix_power(step, int(n))


def qtilde_spec(n: int, base: str = "s2") -> FormulaSpec:
    """Symmetric composition tower reaching order n from a base formula.

    Each level applies the two-coefficient sandwich recursion at the
    next odd order.  A level built at odd order k is also accurate to
    order k + 1 because its palindromic layout kills the even residual,
    so even targets reuse the tower built for n - 1.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"target order must be an integer >= 2, got {n!r}")
    if base not in ("s2", "j2", "qs2"):
        raise ValueError(f"unsupported base formula: {base!r}")
    spec = FormulaSpec(base, order=2)
    for k in range(3, int(n) + 1, 2):
        d1, d2 = solve_symmetric_coeffs(k)
        spec = FormulaSpec("sym", order=k, children=((d1, spec), (d2, spec)))
    return spec


def standard_formula(name: str) -> FormulaSpec:
    """Formula registry used by the command line and the tests."""
    if name in _BASE_KINDS:
        order = {"j1": 1, "j2": 2, "s2": 2, "qs2": 2, "q3": 3, "s3": 4}[name]
        return FormulaSpec(name, order=order)
    if name == "qtilde4":
        return qtilde_spec(4)
    raise ValueError(f"unknown formula id: {name!r}")
