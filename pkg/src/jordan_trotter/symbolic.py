"""Exact order verification in the free non-commutative algebra.

Generators are symbols indexed 0..num_gens-1; a word is a tuple of
indices standing for their product.  The formal time variable is
absorbed into the degree: every generator carries one power of t, so
f(c t) is obtained by scaling each degree-d coefficient by c**d.
Coefficients are exact rationals, which makes agreement checks genuine
equalities rather than tolerance comparisons.

Series are truncated at a fixed maximal degree; products silently drop
words beyond the truncation of their operands, so a comparison through
degree k is only meaningful when both sides carry truncation >= k
(:func:`verify_order` enforces this).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from .formulas import FormulaSpec

Word = tuple[int, ...]

DEFAULT_MAX_DEGREE = 6


def _rational(c) -> Fraction:
    if isinstance(c, Rational):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient required, got {type(c).__name__}")


@dataclass(frozen=True)
class TruncatedSeries:
    """Polynomial with rational word coefficients, capped by degree.

    The coefficient map never stores zeros, so equality of two series at
    the same truncation is plain mapping equality.
    """

    num_gens: int
    max_degree: int
    coeffs: dict = field(default_factory=dict)

    def coefficient(self, word: Word) -> Fraction:
        return self.coeffs.get(tuple(word), Fraction(0))


def _make(num_gens: int, max_degree: int, coeffs: dict) -> TruncatedSeries:
    clean = {w: c for w, c in coeffs.items() if c != 0}
    return TruncatedSeries(num_gens, max_degree, clean)


def _check_gens(f: TruncatedSeries, g: TruncatedSeries) -> None:
    if f.num_gens != g.num_gens:
        raise ValueError(f"generator count mismatch: {f.num_gens} vs {g.num_gens}")


def series_zero(num_gens: int, max_degree: int = DEFAULT_MAX_DEGREE) -> TruncatedSeries:
    return _make(num_gens, max_degree, {})


def series_unit(num_gens: int, max_degree: int = DEFAULT_MAX_DEGREE) -> TruncatedSeries:
    return _make(num_gens, max_degree, {(): Fraction(1)})


def series_generator(gen: int, num_gens: int,
                     max_degree: int = DEFAULT_MAX_DEGREE) -> TruncatedSeries:
    if not 0 <= gen < num_gens:
        raise ValueError(f"generator index {gen} out of range for {num_gens} symbols")
    return _make(num_gens, max_degree, {(gen,): Fraction(1)})


def series_exp(coeff, gen: int, num_gens: int,
               max_degree: int = DEFAULT_MAX_DEGREE) -> TruncatedSeries:
    """Exponential of coeff * t * generator, truncated: sum c^k/k! g^k."""
    if not 0 <= gen < num_gens:
        raise ValueError(f"generator index {gen} out of range for {num_gens} symbols")
    c = _rational(coeff)
    out: dict = {(): Fraction(1)}
    term = Fraction(1)
    for k in range(1, max_degree + 1):
        term = term * c / k
        if term != 0:
            out[(gen,) * k] = term
    return _make(num_gens, max_degree, out)


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _check_gens(f, g)
    cap = min(f.max_degree, g.max_degree)
    out: dict = {w: c for w, c in f.coeffs.items() if len(w) <= cap}
    for w, c in g.coeffs.items():
        if len(w) <= cap:
            out[w] = out.get(w, Fraction(0)) + c
    return _make(f.num_gens, cap, out)


def series_scale(f: TruncatedSeries, coeff) -> TruncatedSeries:
    c = _rational(coeff)
    return _make(f.num_gens, f.max_degree, {w: c * v for w, v in f.coeffs.items()})


def series_time_scale(f: TruncatedSeries, coeff) -> TruncatedSeries:
    """Substitute t -> c t: scale each degree-d coefficient by c**d."""
    c = _rational(coeff)
    return _make(f.num_gens, f.max_degree,
                 {w: v * c ** len(w) for w, v in f.coeffs.items()})


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Concatenation product, dropping words beyond the truncation."""
    _check_gens(f, g)
    cap = min(f.max_degree, g.max_degree)
    out: dict = {}
    for wf, cf in f.coeffs.items():
        if len(wf) > cap:
            continue
        room = cap - len(wf)
        for wg, cg in g.coeffs.items():
            if len(wg) > room:
                continue
            w = wf + wg
            out[w] = out.get(w, Fraction(0)) + cf * cg
    return _make(f.num_gens, cap, out)


def series_jordan(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Symmetrized product (fg + gf) / 2."""
    fg = series_mul(f, g)
    gf = series_mul(g, f)
    return series_scale(series_add(fg, gf), Fraction(1, 2))


def series_triple(f: TruncatedSeries, g: TruncatedSeries,
                  h: TruncatedSeries) -> TruncatedSeries:
    """Triple product in the special realization, (fgh + hgf) / 2.

    Equivalent to the bilinear composition
    (f o g) o h + (g o h) o f - (h o f) o g; the equivalence is one of
    the tested properties rather than assumed by both routes.
    """
    fgh = series_mul(series_mul(f, g), h)
    hgf = series_mul(series_mul(h, g), f)
    return series_scale(series_add(fgh, hgf), Fraction(1, 2))


def extract_degree(f: TruncatedSeries, degree: int) -> dict:
    """Words of exactly the given degree, as a word -> coefficient map."""
    if degree < 0 or degree > f.max_degree:
        raise ValueError(f"degree {degree} outside truncation 0..{f.max_degree}")
    return {w: c for w, c in f.coeffs.items() if len(w) == degree}


@dataclass(frozen=True)
class Witness:
    """First coefficient difference found by :func:`verify_order`."""

    degree: int
    word: Word
    left: Fraction
    right: Fraction

    @property
    def delta(self) -> Fraction:
        return self.left - self.right

    def __str__(self) -> str:
        sym = "".join(chr(ord("A") + g) for g in self.word) or "1"
        return f"degree {self.degree}, word {sym}: {self.left} vs {self.right}"


def verify_order(f: TruncatedSeries, g: TruncatedSeries, k: int):
    """Compare all coefficients through degree k.

    Returns (True, None) on agreement, else (False, witness) with the
    first differing word in degree-then-lexicographic order.
    """
    _check_gens(f, g)
    if k > min(f.max_degree, g.max_degree):
        raise ValueError(
            f"cannot compare through degree {k} with truncations "
            f"{f.max_degree} and {g.max_degree}"
        )
    words = {w for w in f.coeffs if len(w) <= k}
    words.update(w for w in g.coeffs if len(w) <= k)
    for w in sorted(words, key=lambda w: (len(w), w)):
        cf, cg = f.coefficient(w), g.coefficient(w)
        if cf != cg:
            return False, Witness(len(w), w, cf, cg)
    return True, None


def symbolic_g(num_gens: int, max_degree: int = DEFAULT_MAX_DEGREE) -> TruncatedSeries:
    """exp(t (A_0 + ... )) expanded exactly: every word of length k gets 1/k!."""
    out: dict = {(): Fraction(1)}
    words = [()]
    for k in range(1, max_degree + 1):
        words = [w + (g,) for w in words for g in range(num_gens)]
        c = Fraction(1, _factorial(k))
        for w in words:
            out[w] = c
    return _make(num_gens, max_degree, out)


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def symbolic_q3(num_gens: int = 2, max_degree: int = DEFAULT_MAX_DEGREE,
                weight=Fraction(2, 3)) -> TruncatedSeries:
    """Two-term third-order combination with adjustable sandwich weight.

    The combination w S + w S-swapped + (1 - 2w) J is consistent at
    degree 0 for every w; only w = 2/3 removes the degree-3 residual.
    The weight knob exists so the verification suite can demonstrate
    that a wrong coefficient is caught.
    """
    if num_gens != 2:
        raise ValueError("the third-order combination is defined for two terms")
    w = _rational(weight)
    ea2 = series_exp(Fraction(1, 2), 0, 2, max_degree)
    eb2 = series_exp(Fraction(1, 2), 1, 2, max_degree)
    ea = series_exp(1, 0, 2, max_degree)
    eb = series_exp(1, 1, 2, max_degree)
    s_ab = series_triple(ea2, eb, ea2)
    s_ba = series_triple(eb2, ea, eb2)
    j = series_jordan(ea, eb)
    out = series_add(series_scale(series_add(s_ab, s_ba), w),
                     series_scale(j, 1 - 2 * w))
    return out


def symbolic_formula(spec: FormulaSpec, num_gens: int,
                     max_degree: int = DEFAULT_MAX_DEGREE) -> TruncatedSeries:
    """Expand a formula tree exactly over the free algebra.

    Recursive nodes must carry exact rational coefficients; solved
    floating-point coefficients are rejected, since the engine has no
    way to represent them without losing exactness.
    """
    if spec.kind == "j1":
        out = series_exp(1, 0, num_gens, max_degree)
        for g in range(1, num_gens):
            out = series_mul(out, series_exp(1, g, num_gens, max_degree))
        return out
    if spec.kind == "j2":
        out = series_exp(1, 0, num_gens, max_degree)
        for g in range(1, num_gens):
            out = series_jordan(out, series_exp(1, g, num_gens, max_degree))
        return out
    if spec.kind == "s2":
        out = series_exp(1, 0, num_gens, max_degree)
        for g in range(1, num_gens):
            half = series_exp(Fraction(1, 2), g, num_gens, max_degree)
            out = series_triple(half, out, half)
        return out
    if spec.kind == "qs2":
        if num_gens % 2 == 0:
            raise ValueError(f"term count must be odd, got {num_gens}")
        out = series_exp(1, 0, num_gens, max_degree)
        for g in range(1, num_gens, 2):
            left = series_exp(1, g, num_gens, max_degree)
            right = series_exp(1, g + 1, num_gens, max_degree)
            out = series_triple(left, out, right)
        return out
    if spec.kind == "q3":
        return symbolic_q3(num_gens, max_degree)
    if spec.kind == "s3":
        raise ValueError("the triple-jump stage times are irrational; "
                         "use the residual identity check instead")
    if spec.kind == "nonsym":
        coeffs = [_rational(c) for c, _ in spec.children]
        parts = [symbolic_formula(ch, num_gens, max_degree) for _, ch in spec.children]
        out = series_time_scale(parts[0], coeffs[0])
        for c, p in zip(coeffs[1:], parts[1:]):
            out = series_jordan(out, series_time_scale(p, c))
        return out
    if spec.kind == "sym":
        coeffs = [_rational(c) for c, _ in spec.children]
        parts = [symbolic_formula(ch, num_gens, max_degree) for _, ch in spec.children]
        out = series_time_scale(parts[0], coeffs[0])
        for c, p in zip(coeffs[1:], parts[1:]):
            wrap = series_time_scale(p, c)
            out = series_triple(wrap, out, wrap)
        return out
    raise ValueError(f"unknown formula kind: {spec.kind!r}")


def compose_nonsymmetric_series(child: TruncatedSeries, coeffs) -> TruncatedSeries:
    """Left-nested symmetrized fold of child(c_j t) for rational c_j."""
    cs = [_rational(c) for c in coeffs]
    if not cs:
        raise ValueError("a composition needs at least one coefficient")
    out = series_time_scale(child, cs[0])
    for c in cs[1:]:
        out = series_jordan(out, series_time_scale(child, c))
    return out


def compose_symmetric_series(child: TruncatedSeries, coeffs) -> TruncatedSeries:
    """Nested triple sandwich of child stages; coeffs[0] is innermost."""
    cs = [_rational(c) for c in coeffs]
    if not cs:
        raise ValueError("a composition needs at least one coefficient")
    out = series_time_scale(child, cs[0])
    for c in cs[1:]:
        wrap = series_time_scale(child, c)
        out = series_triple(wrap, out, wrap)
    return out


# ---------------------------------------------------------------------------
# Hand-expanded cubic Taylor polynomials for two terms.  These are built
# from the displayed closed forms, not by expanding the formulas, so the
# engine's own expansions have something independent to match.

def _two_gen_basics(max_degree: int = 3):
    a = series_generator(0, 2, max_degree)
    b = series_generator(1, 2, max_degree)
    return a, b


def taylor3_exact(max_degree: int = 3) -> TruncatedSeries:
    """1 + (A+B) + (A+B)^2/2 + (A+B)^3/6."""
    a, b = _two_gen_basics(max_degree)
    s = series_add(a, b)
    out = series_unit(2, max_degree)
    out = series_add(out, s)
    out = series_add(out, series_scale(series_mul(s, s), Fraction(1, 2)))
    out = series_add(out, series_scale(series_mul(series_mul(s, s), s), Fraction(1, 6)))
    return out


def _quadratic_common(max_degree: int = 3) -> TruncatedSeries:
    a, b = _two_gen_basics(max_degree)
    s = series_add(a, b)
    out = series_unit(2, max_degree)
    out = series_add(out, s)
    return series_add(out, series_scale(series_mul(s, s), Fraction(1, 2)))


def taylor3_sandwich(max_degree: int = 3) -> TruncatedSeries:
    """Common quadratic part plus (A^3+B^3)/6 + (A o B^2)/2 + ((A o B) o A)/2."""
    a, b = _two_gen_basics(max_degree)
    a3 = series_mul(series_mul(a, a), a)
    b3 = series_mul(series_mul(b, b), b)
    b2 = series_mul(b, b)
    cubic = series_scale(series_add(a3, b3), Fraction(1, 6))
    cubic = series_add(cubic, series_scale(series_jordan(a, b2), Fraction(1, 2)))
    cubic = series_add(
        cubic,
        series_scale(series_jordan(series_jordan(a, b), a), Fraction(1, 2)),
    )
    return series_add(_quadratic_common(max_degree), cubic)


def taylor3_sandwich_swapped(max_degree: int = 3) -> TruncatedSeries:
    """Role-swapped variant: (A^3+B^3)/6 + (B o A^2)/2 + ((B o A) o B)/2."""
    a, b = _two_gen_basics(max_degree)
    a3 = series_mul(series_mul(a, a), a)
    b3 = series_mul(series_mul(b, b), b)
    a2 = series_mul(a, a)
    cubic = series_scale(series_add(a3, b3), Fraction(1, 6))
    cubic = series_add(cubic, series_scale(series_jordan(b, a2), Fraction(1, 2)))
    cubic = series_add(
        cubic,
        series_scale(series_jordan(series_jordan(b, a), b), Fraction(1, 2)),
    )
    return series_add(_quadratic_common(max_degree), cubic)


def taylor3_symmetrized(max_degree: int = 3) -> TruncatedSeries:
    """Common quadratic part plus (A^3+B^3)/6 + (A o B^2)/2 + (A^2 o B)/2."""
    a, b = _two_gen_basics(max_degree)
    a3 = series_mul(series_mul(a, a), a)
    b3 = series_mul(series_mul(b, b), b)
    a2 = series_mul(a, a)
    b2 = series_mul(b, b)
    cubic = series_scale(series_add(a3, b3), Fraction(1, 6))
    cubic = series_add(cubic, series_scale(series_jordan(a, b2), Fraction(1, 2)))
    cubic = series_add(cubic, series_scale(series_jordan(a2, b), Fraction(1, 2)))
    return series_add(_quadratic_common(max_degree), cubic)


# ---------------------------------------------------------------------------
# Verification suite.

@dataclass(frozen=True)
class Claim:
    """Outcome of one exactness check."""

    name: str
    passed: bool
    detail: str = ""


def _residual_claim_nonsym(tuples) -> Claim:
    """Degree-3 residual of a composed second-order formula.

    For any rational (c_1, ..., c_r) with sum 1, the composition of an
    order-2 child agrees with the exact series through degree 2, and its
    degree-3 residual equals (sum of c_j^3) times the child's own
    degree-3 residual.  Checking several tuples pins the scalar factor.
    """
    child = symbolic_formula(FormulaSpec("j2", 2), 2, 3)
    exact = symbolic_g(2, 3)
    child_res = _degree_residual(child, exact, 3)
    if not child_res:
        return Claim("plain composition residual identity", False,
                     "child has no degree-3 residual to track")
    for cs in tuples:
        cs = [Fraction(c) for c in cs]
        if sum(cs) != 1:
            raise ValueError(f"test tuple must sum to 1: {cs}")
        comp = compose_nonsymmetric_series(child, cs)
        ok, wit = verify_order(comp, exact, 2)
        if not ok:
            return Claim("plain composition residual identity", False,
                         f"degree <= 2 mismatch at {wit}")
        power = sum(c**3 for c in cs)
        want = {w: power * v for w, v in child_res.items() if power * v != 0}
        got = _degree_residual(comp, exact, 3)
        if got != want:
            return Claim("plain composition residual identity", False,
                         f"coefficients {cs}: residual does not scale by {power}")
        if power != 0 and not got:
            return Claim("plain composition residual identity", False,
                         f"coefficients {cs}: residual unexpectedly vanished")
    return Claim("plain composition residual identity", True,
                 f"{len(list(tuples))} rational coefficient tuples")


def _residual_claim_sym(pairs) -> Claim:
    """Sandwich-composition analogue of the residual identity.

    For (d_1, d_2) with d_1 + 2 d_2 = 1 the degree-3 residual scales by
    d_1^3 + 2 d_2^3 against the sandwich child's residual.
    """
    child = symbolic_formula(FormulaSpec("s2", 2), 2, 3)
    exact = symbolic_g(2, 3)
    child_res = _degree_residual(child, exact, 3)
    for d1, d2 in pairs:
        d1, d2 = Fraction(d1), Fraction(d2)
        if d1 + 2 * d2 != 1:
            raise ValueError(f"test pair must satisfy d1 + 2 d2 = 1: {(d1, d2)}")
        comp = compose_symmetric_series(child, [d1, d2])
        ok, wit = verify_order(comp, exact, 2)
        if not ok:
            return Claim("sandwich composition residual identity", False,
                         f"degree <= 2 mismatch at {wit}")
        power = d1**3 + 2 * d2**3
        want = {w: power * v for w, v in child_res.items() if power * v != 0}
        got = _degree_residual(comp, exact, 3)
        if got != want:
            return Claim("sandwich composition residual identity", False,
                         f"pair {(d1, d2)}: residual does not scale by {power}")
    return Claim("sandwich composition residual identity", True,
                 f"{len(list(pairs))} rational coefficient pairs")


def _degree_residual(f: TruncatedSeries, g: TruncatedSeries, degree: int) -> dict:
    out: dict = {}
    words = set(extract_degree(f, degree)) | set(extract_degree(g, degree))
    for w in words:
        d = f.coefficient(w) - g.coefficient(w)
        if d != 0:
            out[w] = d
    return out


def _triple_bilinear_claim() -> Claim:
    """series_triple against the bilinear composition on fixed samples."""
    samples = [
        (series_exp(1, 0, 2, 4), series_exp(Fraction(1, 2), 1, 2, 4),
         series_exp(Fraction(-1, 3), 0, 2, 4)),
        (series_generator(0, 2, 4), symbolic_g(2, 4), series_generator(1, 2, 4)),
    ]
    for f, g, h in samples:
        lhs = series_triple(f, g, h)
        rhs = series_add(
            series_add(series_jordan(series_jordan(f, g), h),
                       series_jordan(series_jordan(g, h), f)),
            series_scale(series_jordan(series_jordan(h, f), g), -1),
        )
        if lhs != rhs:
            return Claim("triple product equals bilinear composition", False)
    return Claim("triple product equals bilinear composition", True,
                 f"{len(samples)} sample triples")


def order_claims(degree: int = 4, q3_weight=Fraction(2, 3)) -> list[Claim]:
    """Run the full exactness suite and return one record per claim.

    degree caps the comparison depth for the third-order checks; the
    departure witness is only sought when degree >= 4.  q3_weight feeds
    :func:`symbolic_q3` so a deliberately wrong weight demonstrably
    fails.
    """
    claims: list[Claim] = []

    for name, kind, ms in (
        ("symmetrized product", "j2", (2, 3, 5)),
        ("nested sandwich", "s2", (2, 3, 5)),
        ("quasi-symmetric", "qs2", (3, 5)),
    ):
        for m in ms:
            f = symbolic_formula(FormulaSpec(kind, 2), m, 3)
            ok, wit = verify_order(f, symbolic_g(m, 3), 2)
            claims.append(Claim(f"{name} matches exact through degree 2 (m={m})",
                                ok, str(wit) if wit else ""))
            if m == 2:
                ok3, wit3 = verify_order(f, symbolic_g(m, 3), 3)
                claims.append(Claim(
                    f"{name} departs at degree 3 (m={m})",
                    not ok3 and wit3.degree == 3,
                    str(wit3) if wit3 else "no departure found",
                ))

    cap = min(degree, 3)
    q3 = symbolic_q3(2, max(degree, cap), weight=q3_weight)
    exact = symbolic_g(2, max(degree, cap))
    ok, wit = verify_order(q3, exact, cap)
    claims.append(Claim(f"third-order combination matches exact through degree {cap}",
                        ok, str(wit) if wit else ""))
    if degree >= 4:
        ok4, wit4 = verify_order(q3, exact, 4)
        claims.append(Claim(
            "third-order combination departs at degree 4",
            not ok4 and wit4.degree == 4,
            str(wit4) if wit4 else "no departure found",
        ))

    lhs = taylor3_exact()
    rhs = series_add(
        series_scale(series_add(taylor3_sandwich(), taylor3_sandwich_swapped()),
                     Fraction(2, 3)),
        series_scale(taylor3_symmetrized(), Fraction(-1, 3)),
    )
    ok, wit = verify_order(lhs, rhs, 3)
    claims.append(Claim(
        "cubic identity: exact = 2/3 sandwich + 2/3 swapped - 1/3 symmetrized",
        ok, str(wit) if wit else ""))

    half_a = series_exp(Fraction(1, 2), 0, 2, 3)
    half_b = series_exp(Fraction(1, 2), 1, 2, 3)
    for name, engine, hand in (
        ("sandwich (first term outer)",
         series_triple(half_a, series_exp(1, 1, 2, 3), half_a),
         taylor3_sandwich()),
        ("sandwich (second term outer)",
         series_triple(half_b, series_exp(1, 0, 2, 3), half_b),
         taylor3_sandwich_swapped()),
        ("symmetrized product",
         symbolic_formula(FormulaSpec("j2", 2), 2, 3),
         taylor3_symmetrized()),
    ):
        ok = extract_degree(engine, 3) == extract_degree(hand, 3)
        claims.append(Claim(f"engine {name} cubic equals hand expansion", ok))

    claims.append(_residual_claim_nonsym(
        [(1, 1, -1), (2, -1, 0), (Fraction(1, 2), Fraction(1, 2), 0)]))
    claims.append(_residual_claim_sym(
        [(-1, 1), (Fraction(-1, 3), Fraction(2, 3)), (1, 0)]))
    claims.append(_triple_bilinear_claim())
    return claims
