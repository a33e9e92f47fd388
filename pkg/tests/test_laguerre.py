"""Degenerate Laguerre family: explicit sums, operator paths, identities."""

from fractions import Fraction

import pytest

from umbralops.laguerre import (
    LaguerreParams,
    cross_sequence_check,
    degenerate_laguerre_explicit,
    degenerate_laguerre_operator,
    frac_laguerre,
    laguerre_delta_series,
    laguerre_generator,
    laguerre_genfun_check,
    laguerre_ode_residual,
    laguerre_operator_paths,
    laguerre_p0_float_demo,
)
from umbralops.operators import apply_op, first_discrepancy
from umbralops.polynomials import Polynomial
from umbralops.series import PreconditionError, TruncatedSeries
from umbralops.umbral import UmbralSpec, flow, frac_power

F = Fraction


def test_params_validation():
    with pytest.raises(PreconditionError):
        LaguerreParams(0)
    with pytest.raises(PreconditionError):
        LaguerreParams(1, n=-1)


def test_generator_p1_is_geometric():
    g = laguerre_generator(1, 1, 6)
    assert g.coeffs == tuple(F(0) if n == 0 else F((-1) ** (n + 1)) for n in range(7))


def test_generator_p2_binomial_series():
    g = laguerre_generator(2, 1, 6)
    assert g.coeffs == (F(0), F(1), F(0), F(-1), F(0), F(3, 2), F(0))


def test_generator_s0_is_identity():
    assert laguerre_generator(2, 0, 5) == TruncatedSeries.t(5)


def test_generator_matches_flow():
    for p in (1, 2, 3):
        v = TruncatedSeries([0] * (p + 1) + [-1], 12)
        for s in (1, F(1, 2), F(-2, 3)):
            assert flow(v, s) == laguerre_generator(p, s, 12)


def test_delta_series_is_inverse_generator():
    for p in (1, 2, 3):
        f = laguerre_generator(p, 1, 10)
        assert laguerre_delta_series(p, 10) == f.comp_inverse()


def test_explicit_base_cases():
    assert degenerate_laguerre_explicit(1, 0, 0) == Polynomial([1])
    assert degenerate_laguerre_explicit(1, 2, 0) == Polynomial([0, -2, 1])
    assert degenerate_laguerre_explicit(2, 3, 0) == Polynomial([0, -6, 0, 1])


def test_operator_base_cases():
    assert degenerate_laguerre_operator(1, 1, 1) == Polynomial([-1, 1])
    assert degenerate_laguerre_operator(1, 3, 0) == Polynomial([0, 6, -6, 1])


def test_operator_paths_agree():
    for p in (1, 2):
        for alpha in (-1, 0, 2):
            a, b = laguerre_operator_paths(p, alpha, 8)
            assert first_discrepancy(a, b) is None


def test_explicit_equals_operator_grid():
    for p in (1, 2, 3):
        for alpha in (-1, 0, 1, 2):
            for n in range(8):
                assert degenerate_laguerre_explicit(
                    p, n, alpha
                ) == degenerate_laguerre_operator(p, n, alpha)


def test_ode_residual_zero():
    for p in (1, 2):
        for alpha in (-1, 0, 1, 2):
            for n in range(9):
                assert laguerre_ode_residual(p, n, alpha).is_zero()
    assert laguerre_ode_residual(2, 4, 1).is_zero()


def test_rational_alpha():
    # the coefficient sum is stated for arbitrary alpha
    poly = degenerate_laguerre_explicit(2, 4, F(1, 2))
    assert poly == degenerate_laguerre_operator(2, 4, F(1, 2))
    assert laguerre_ode_residual(2, 4, F(1, 2)).is_zero()


def test_cross_sequence():
    assert cross_sequence_check(1, 0, 2, 3)["status"] == "exact-pass"
    assert cross_sequence_check(1, 3, 1, -1)["status"] == "exact-pass"
    assert cross_sequence_check(2, 4, 0, 2)["status"] == "exact-pass"


def test_genfun():
    assert laguerre_genfun_check(1, 0, 6)["status"] == "exact-pass"
    assert laguerre_genfun_check(3, 1, 7)["status"] == "exact-pass"


def test_frac_laguerre_base_cases():
    assert frac_laguerre(2, 5, 0) == Polynomial.monomial(5, 1)
    assert frac_laguerre(2, 6, 1) == degenerate_laguerre_explicit(2, 6, 0)
    assert frac_laguerre(1, 3, F(1, 2)) == Polynomial([0, F(3, 2), -3, 1])


def test_frac_laguerre_matches_frac_power():
    for p in (1, 2):
        spec = UmbralSpec(laguerre_generator(p, 1, 12))
        for s in (F(1, 2), F(-1, 3), 2):
            P = frac_power(spec, s)
            for n in range(9):
                assert apply_op(
                    P.matrix, Polynomial.monomial(n, 1)
                ) == frac_laguerre(p, n, s)


def test_p0_float_demo():
    demo = laguerre_p0_float_demo()
    assert demo["status"] == "pass"
    assert demo["max_abs_error"] <= 1e-12
