"""Jordan-algebraic product formulas for exponentials of matrix sums.

The package provides second- and higher-order approximants built from
the symmetrized matrix product, closed-form error bounds for them,
an exact rational engine that verifies approximation orders in the free
algebra, and a command line front end that reproduces the two
single-qubit experiments as CSV artifacts.
"""
from .bounds import (
    ErrorReport,
    bound_j2_nstep,
    bound_j2_unitary,
    bound_q3,
    bound_qs2,
    bound_s2,
    bound_s2_unitary,
    empirical_unitary_error,
    exact_evolution,
    exact_single_qubit,
    fit_order,
    random_hermitian,
    state_error,
)
from .formulas import (
    FormulaSpec,
    TermList,
    compose_nonsymmetric,
    compose_symmetric,
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
    solve_nonsymmetric_coeffs,
    solve_symmetric_coeffs,
    standard_formula,
)
from .jordan import jordan_power, jordan_product, m_op, triple_product, u_op
from .linalg import NormKind, is_hermitian, mat_add, mat_exp, mat_mul, norm
from .symbolic import (
    TruncatedSeries,
    Witness,
    extract_degree,
    series_add,
    series_exp,
    series_jordan,
    series_mul,
    series_scale,
    series_triple,
    symbolic_formula,
    verify_order,
)

__version__ = "0.1.0"
