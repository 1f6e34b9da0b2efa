"""Exact free-algebra expansions, frozen witnesses and the claim suite."""
import random
from fractions import Fraction

import pytest

from jordan_trotter.formulas import FormulaSpec, standard_formula
from jordan_trotter.symbolic import (
    TruncatedSeries,
    Witness,
    compose_nonsymmetric_series,
    compose_symmetric_series,
    extract_degree,
    order_claims,
    series_add,
    series_exp,
    series_generator,
    series_jordan,
    series_mul,
    series_scale,
    series_time_scale,
    series_triple,
    series_unit,
    series_zero,
    symbolic_formula,
    symbolic_g,
    symbolic_q3,
    taylor3_exact,
    taylor3_sandwich,
    taylor3_sandwich_swapped,
    taylor3_symmetrized,
    verify_order,
)

F = Fraction


def rand_series(rng, num_gens=2, max_degree=5, n_words=4):
    coeffs = {}
    for _ in range(n_words):
        length = rng.randint(0, 2)
        word = tuple(rng.randrange(num_gens) for _ in range(length))
        coeffs[word] = F(rng.randint(-3, 3), rng.randint(1, 4))
    coeffs = {w: c for w, c in coeffs.items() if c != 0}
    return TruncatedSeries(num_gens, max_degree, coeffs)


# ------------------------------------------------------------- constructors


def test_series_exp_coefficients():
    e = series_exp(1, 0, 2, 4)
    for k in range(5):
        assert e.coefficient((0,) * k) == F(1, [1, 1, 2, 6, 24][k])
    assert e.coefficient((1,)) == 0
    half = series_exp(F(1, 2), 0, 2, 4)
    assert half.coefficient((0, 0, 0)) == F(1, 48)
    assert series_exp(0, 0, 2, 4) == series_unit(2, 4)


def test_series_exp_rejects_bad_input():
    with pytest.raises(ValueError):
        series_exp(1, 2, 2)
    with pytest.raises(TypeError):
        series_exp(0.5, 0, 2)


def test_series_mul_concatenates_and_truncates():
    a = series_generator(0, 2, 6)
    b = series_generator(1, 2, 6)
    assert series_mul(a, b).coeffs == {(0, 1): F(1)}
    # exp(tA) exp(tA) = exp(2tA), exactly at every kept degree
    e = series_exp(1, 0, 1, 5)
    assert series_mul(e, e) == series_exp(2, 0, 1, 5)


def test_series_mul_respects_degree_cap():
    e = series_exp(1, 0, 1, 3)
    prod = series_mul(e, e)
    assert prod.max_degree == 3
    assert all(len(w) <= 3 for w in prod.coeffs)


def test_series_jordan_symmetrizes():
    a = series_generator(0, 2, 6)
    b = series_generator(1, 2, 6)
    got = series_jordan(a, b)
    assert got.coeffs == {(0, 1): F(1, 2), (1, 0): F(1, 2)}
    rng = random.Random(63)
    for _ in range(10):
        f, g = rand_series(rng), rand_series(rng)
        assert series_jordan(f, g) == series_jordan(g, f)


def test_series_triple_on_generators():
    a = series_generator(0, 2, 6)
    b = series_generator(1, 2, 6)
    assert series_triple(a, b, a).coeffs == {(0, 1, 0): F(1)}


def test_series_triple_matches_bilinear_composition():
    rng = random.Random(64)
    for _ in range(10):
        f, g, h = rand_series(rng), rand_series(rng), rand_series(rng)
        lhs = series_triple(f, g, h)
        rhs = series_add(
            series_add(series_jordan(series_jordan(f, g), h),
                       series_jordan(series_jordan(g, h), f)),
            series_scale(series_jordan(series_jordan(h, f), g), -1),
        )
        assert lhs == rhs


def test_series_add_drops_cancelled_words():
    rng = random.Random(65)
    f = rand_series(rng)
    gone = series_add(f, series_scale(f, -1))
    assert gone == series_zero(2, 5)
    assert gone.coeffs == {}


def test_series_scale_rejects_floats():
    with pytest.raises(TypeError):
        series_scale(series_unit(2), 0.5)


def test_series_time_scale_matches_exp_reparameterization():
    # substituting t -> ct inside exp(t A) gives exp(c t A)
    for c in (F(1, 3), F(-2), F(0)):
        got = series_time_scale(series_exp(1, 0, 2, 5), c)
        assert got == series_exp(c, 0, 2, 5)


def test_jordan_identity_in_free_algebra():
    # (f^2 o g) o f == f^2 o (g o f), exactly
    rng = random.Random(66)
    for _ in range(10):
        f, g = rand_series(rng), rand_series(rng)
        sq = series_mul(f, f)
        lhs = series_jordan(series_jordan(sq, g), f)
        rhs = series_jordan(sq, series_jordan(g, f))
        assert lhs == rhs


# ------------------------------------------------------ reference expansions


def test_symbolic_g_counts_and_coefficients():
    g = symbolic_g(2, 4)
    assert g.coefficient(()) == 1
    assert g.coefficient((0, 1)) == F(1, 2)
    for k in range(5):
        layer = extract_degree(g, k)
        assert len(layer) == 2**k
        assert all(c == F(1, [1, 1, 2, 6, 24][k]) for c in layer.values())


def test_extract_degree_bounds():
    e = series_exp(1, 0, 2, 4)
    assert extract_degree(e, 3) == {(0, 0, 0): F(1, 6)}
    with pytest.raises(ValueError):
        extract_degree(e, 5)
    with pytest.raises(ValueError):
        extract_degree(e, -1)


def test_verify_order_agreement_and_truncation_guard():
    g = symbolic_g(2, 4)
    ok, wit = verify_order(g, g, 4)
    assert ok and wit is None
    with pytest.raises(ValueError):
        verify_order(g, g, 5)


def test_symmetrized_product_witness_frozen():
    f = symbolic_formula(FormulaSpec("j2", 2), 2, 3)
    ok, wit = verify_order(f, symbolic_g(2, 3), 2)
    assert ok
    ok3, wit3 = verify_order(f, symbolic_g(2, 3), 3)
    assert not ok3
    assert wit3.word == (0, 0, 1)
    assert wit3.left == F(1, 4)
    assert wit3.right == F(1, 6)
    assert str(wit3) == "degree 3, word AAB: 1/4 vs 1/6"
    assert wit3.delta == F(1, 12)


def test_sandwich_witness_frozen():
    f = symbolic_formula(FormulaSpec("s2", 2), 2, 3)
    ok3, wit3 = verify_order(f, symbolic_g(2, 3), 3)
    assert not ok3
    assert (wit3.word, wit3.left, wit3.right) == ((0, 0, 1), F(1, 4), F(1, 6))


def test_ordered_product_witness_frozen():
    f = symbolic_formula(FormulaSpec("j1", 1), 2, 3)
    assert f.coefficient((0, 1)) == 1
    assert f.coefficient((1, 0)) == 0
    ok, wit = verify_order(f, symbolic_g(2, 3), 2)
    assert not ok
    assert (wit.word, wit.left, wit.right) == ((0, 1), F(1), F(1, 2))


def test_witness_renders_empty_word():
    w = Witness(0, (), F(1), F(0))
    assert "word 1" in str(w)


def test_third_order_combination_exact_through_three():
    q3 = symbolic_q3(2, 4)
    ok, wit = verify_order(q3, symbolic_g(2, 4), 3)
    assert ok, str(wit)


def test_third_order_departure_witness_frozen():
    q3 = symbolic_q3(2, 4)
    ok, wit = verify_order(q3, symbolic_g(2, 4), 4)
    assert not ok
    assert wit.degree == 4
    assert wit.word == (0, 1, 0, 1)
    assert wit.left == 0
    assert wit.right == F(1, 24)


def test_third_order_wrong_weight_caught():
    q3 = symbolic_q3(2, 3, weight=F(1, 2))
    ok, wit = verify_order(q3, symbolic_g(2, 3), 3)
    assert not ok
    assert wit.degree == 3
    assert (wit.word, wit.left, wit.right) == ((0, 0, 1), F(3, 16), F(1, 6))


def test_symbolic_q3_two_terms_only():
    with pytest.raises(ValueError):
        symbolic_q3(3, 4)


def test_symbolic_formula_quasi_symmetric_and_guards():
    f = symbolic_formula(FormulaSpec("qs2", 2), 3, 3)
    ok, _ = verify_order(f, symbolic_g(3, 3), 2)
    assert ok
    with pytest.raises(ValueError):
        symbolic_formula(FormulaSpec("qs2", 2), 2, 3)
    with pytest.raises(ValueError):
        symbolic_formula(standard_formula("s3"), 2, 3)


def test_symbolic_formula_rejects_float_coefficients():
    child = standard_formula("j2")
    spec = FormulaSpec("nonsym", order=2, children=((0.5, child), (0.5, child)))
    with pytest.raises(TypeError):
        symbolic_formula(spec, 2, 3)


def test_compose_series_trivial_cases():
    child = symbolic_formula(FormulaSpec("s2", 2), 2, 3)
    assert compose_nonsymmetric_series(child, [1]) == child
    assert compose_symmetric_series(child, [1]) == child
    # a zero outer stage wraps with the unit and changes nothing
    assert compose_symmetric_series(child, [1, 0]) == child
    with pytest.raises(ValueError):
        compose_nonsymmetric_series(child, [])


def test_cubic_taylor_identity():
    lhs = taylor3_exact()
    rhs = series_add(
        series_scale(series_add(taylor3_sandwich(), taylor3_sandwich_swapped()),
                     F(2, 3)),
        series_scale(taylor3_symmetrized(), F(-1, 3)),
    )
    assert lhs == rhs


def test_hand_expansions_differ_from_each_other():
    assert extract_degree(taylor3_sandwich(), 3) != extract_degree(
        taylor3_symmetrized(), 3)
    assert extract_degree(taylor3_sandwich(), 3) != extract_degree(
        taylor3_sandwich_swapped(), 3)


# --------------------------------------------------------------- claim suite


def test_order_claims_all_pass_by_default():
    claims = order_claims()
    assert len(claims) == 19
    bad = [c for c in claims if not c.passed]
    assert not bad, [f"{c.name}: {c.detail}" for c in bad]


def test_order_claims_catch_wrong_weight():
    claims = order_claims(q3_weight=F(1, 2))
    bad = [c for c in claims if not c.passed]
    assert len(bad) == 2
    assert any("degree 3" in c.name for c in bad)
    assert any("degree 3, word AAB: 3/16 vs 1/6" in c.detail for c in bad)


def test_order_claims_low_degree_hides_the_weight_error():
    # capping the comparison at degree 2 keeps even a wrong weight green
    claims = order_claims(degree=2, q3_weight=F(1, 2))
    assert len(claims) == 18
    assert all(c.passed for c in claims)
