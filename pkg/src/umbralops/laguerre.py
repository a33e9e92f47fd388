"""Degenerate Laguerre polynomials of order p, their associated and
fractional variants, and the identity checks tying the explicit sums to the
operator-exponential constructions.

The family is driven by the vector field -x^{p+1}, whose flow has the closed
form t / (1 + s p t^p)^{1/p}.  Everything here is exact for p >= 1; the p = 0
member (multiplier 1/e) only exists as a float-mode demo.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bivariate import biv_sub, expand_in_x_plus_y, product_x_y
from .operators import (
    OperatorMatrix,
    apply_op,
    compose_ops,
    exp_loc_nilpotent,
    first_discrepancy,
    op_from_D_series,
)
from .polynomials import Polynomial
from .scalars import EXACT, FLOAT, coerce, gbinom
from .series import DEFAULT_ORDER, PreconditionError, TruncatedSeries


@dataclass(frozen=True)
class LaguerreParams:
    """Parameter bundle: degeneracy order p, association parameter alpha,
    fractional exponent s, polynomial index n."""

    p: int
    alpha: object = 0
    s: object = 1
    n: int = 0

    def __post_init__(self):
        if self.p < 1:
            raise PreconditionError("degeneracy order p must be >= 1")
        if self.n < 0:
            raise PreconditionError("polynomial index n must be >= 0")


def _falling(n: int, k: int) -> int:
    acc = 1
    for i in range(k):
        acc *= n - i
    return acc


def _unit_plus_tp(order: int, p: int, c, mode: str) -> TruncatedSeries:
    """The unit series 1 + c t^p at the given order (c dropped if p > order)."""
    coeffs = [coerce(0, mode)] * (order + 1)
    coeffs[0] = coerce(1, mode)
    if p <= order:
        coeffs[p] = coerce(c, mode)
    return TruncatedSeries(coeffs, order, mode)


def laguerre_generator(p: int, s, order: int = DEFAULT_ORDER, mode: str = EXACT) -> TruncatedSeries:
    """The generator series t / (1 + s p t^p)^{1/p} of the s-th family member."""
    if p < 1:
        raise PreconditionError("laguerre_generator requires p >= 1")
    s = coerce(s, mode)
    u = _unit_plus_tp(order, p, s * p, mode)
    expo = Fraction(-1, p) if mode == EXACT else -1.0 / p
    return u.pow_scalar(expo).shift(1)


def laguerre_delta_series(p: int, order: int = DEFAULT_ORDER, mode: str = EXACT) -> TruncatedSeries:
    """The delta-operator symbol t / (1 - p t^p)^{1/p} (the inverse generator)."""
    return laguerre_generator(p, -1, order, mode)


def _lag_field_op(p: int, alpha, n_in: int, mode: str = EXACT) -> OperatorMatrix:
    """The operator -x D^{p+1} - alpha D^p as an exact matrix."""
    alpha = coerce(alpha, mode)
    cols = []
    for n in range(n_in + 1):
        if n < p:
            cols.append(Polynomial.zero(mode))
            continue
        c = -coerce(_falling(n, p + 1), mode) - alpha * _falling(n, p)
        cols.append(Polynomial.monomial(n - p, c, mode))
    return OperatorMatrix(cols, n_in, n_in, n_in, True, mode)


def laguerre_operator_paths(p: int, alpha, n_in: int, mode: str = EXACT):
    """Both operator constructions of the associated family as matrices:
    (i) the D-series prefactor (1 - p D^p)^{alpha/p} after exp(-x D^{p+1}),
    (ii) the single exponential exp(-x D^{p+1} - alpha D^p)."""
    alpha = coerce(alpha, mode)
    base = exp_loc_nilpotent(_lag_field_op(p, 0, n_in, mode))
    u = _unit_plus_tp(n_in, p, -p, mode)
    expo = alpha / p if mode == FLOAT else Fraction(alpha) / p
    pre = op_from_D_series(u.pow_scalar(expo), n_in)
    path1 = compose_ops(pre, base)
    path2 = exp_loc_nilpotent(_lag_field_op(p, alpha, n_in, mode))
    return path1, path2


def degenerate_laguerre_explicit(p: int, n: int, alpha=0, mode: str = EXACT) -> Polynomial:
    """The closed-form coefficient sum for the associated polynomial of
    index n: a degree-n polynomial, exact for rational alpha."""
    LaguerreParams(p, alpha, 1, n)
    alpha = coerce(alpha, mode)
    top = (n + alpha) / p if mode == FLOAT else Fraction(n + alpha, 1) / p
    coeffs = [coerce(0, mode)] * (n + 1)
    for k in range(n // p + 1):
        c = gbinom(top - 1, k) * math.factorial(n) * (-p) ** k
        coeffs[n - p * k] = coerce(c, mode) / math.factorial(n - p * k)
    return Polynomial(coeffs, mode)


def degenerate_laguerre_operator(p: int, n: int, alpha=0, mode: str = EXACT) -> Polynomial:
    """The same polynomial via the operator exponentials; both operator paths
    are computed and must agree bit-exactly."""
    LaguerreParams(p, alpha, 1, n)
    path1, path2 = laguerre_operator_paths(p, alpha, n, mode)
    if mode == EXACT and first_discrepancy(path1, path2) is not None:
        raise AssertionError("the two operator constructions disagree")
    return apply_op(path2, Polynomial.monomial(n, 1, mode))


def frac_laguerre(p: int, n: int, s, mode: str = EXACT) -> Polynomial:
    """The fractional family member: the alpha = 0 coefficient sum with the
    power (-p)^k replaced by (-s p)^k."""
    LaguerreParams(p, 0, s, n)
    s = coerce(s, mode)
    top = n / p if mode == FLOAT else Fraction(n, p)
    coeffs = [coerce(0, mode)] * (n + 1)
    for k in range(n // p + 1):
        c = gbinom(top - 1, k) * math.factorial(n) * (-s * p) ** k
        coeffs[n - p * k] = c / math.factorial(n - p * k)
    return Polynomial(coeffs, mode)


def laguerre_ode_residual(p: int, n: int, alpha=0, mode: str = EXACT) -> Polynomial:
    """Left-hand side of x p F^(p+1) + alpha p F^(p) - x F' + n F for the
    explicit polynomial F; must vanish identically."""
    LaguerreParams(p, alpha, 1, n)
    alpha = coerce(alpha, mode)
    F = degenerate_laguerre_explicit(p, n, alpha, mode)
    out = F.derivative(p + 1).shift(1).scale(p)
    out = out + F.derivative(p).scale(alpha * p)
    out = out - F.derivative(1).shift(1)
    out = out + F.scale(n)
    return out


def _biv_report(identity: str, resid: dict) -> dict:
    keys = sorted(resid)
    return {
        "identity": identity,
        "status": "exact-pass" if not resid else "fail",
        "first_discrepancy": list(keys[0]) if keys else None,
    }


def cross_sequence_check(p: int, n: int, alpha, beta, mode: str = EXACT) -> dict:
    """Two-variable convolution identity of the associated family: the
    (alpha+beta)-member at x+y equals the binomial convolution of the
    alpha-member in x with the beta-member in y."""
    lhs = expand_in_x_plus_y(degenerate_laguerre_explicit(p, n, coerce(alpha, mode) + coerce(beta, mode), mode))
    rhs: dict = {}
    for k in range(n + 1):
        px = degenerate_laguerre_explicit(p, k, alpha, mode).scale(math.comb(n, k))
        py = degenerate_laguerre_explicit(p, n - k, beta, mode)
        for key, v in product_x_y(px, py).items():
            rhs[key] = rhs.get(key, 0) + v
    rhs = {k: v for k, v in rhs.items() if v != 0}
    return _biv_report("laguerre-cross-sequence", biv_sub(lhs, rhs))


def laguerre_genfun_check(p: int, alpha, t_order: int, mode: str = EXACT) -> dict:
    """Exponential generating function check: sum_n L_n(x) t^n/n! against
    (1 + p t^p)^{-alpha/p} exp(x t / (1 + p t^p)^{1/p}), both expanded as
    exact bivariate polynomials through degree t_order in t."""
    alpha = coerce(alpha, mode)
    lhs: dict = {}
    for n in range(t_order + 1):
        L = degenerate_laguerre_explicit(p, n, alpha, mode)
        inv = coerce(1, mode) / math.factorial(n)
        for i, c in enumerate(L.coeffs):
            if c != 0:
                lhs[(i, n)] = lhs.get((i, n), 0) + c * inv
    u = _unit_plus_tp(t_order, p, p, mode)
    expo_a = -alpha / p if mode == FLOAT else Fraction(-alpha) / p
    expo_1 = Fraction(-1, p) if mode == EXACT else -1.0 / p
    pre = u.pow_scalar(expo_a)
    inner = u.pow_scalar(expo_1).shift(1)
    rhs: dict = {}
    term = pre
    for m in range(t_order + 1):
        if m > 0:
            term = (term * inner).scale(coerce(1, mode) / m)
        for j, c in enumerate(term.coeffs):
            if c != 0:
                rhs[(m, j)] = rhs.get((m, j), 0) + c
    lhs = {k: v for k, v in lhs.items() if v != 0}
    rhs = {k: v for k, v in rhs.items() if v != 0}
    return _biv_report("laguerre-genfun", biv_sub(lhs, rhs))


def laguerre_p0_float_demo(n_max: int = 8, tol: float = 1e-12) -> dict:
    """Float-mode p = 0 member: the generator t/e produces the pure scaling
    operator with columns e^{-n} x^n.  Returns the worst absolute error."""
    from .umbral import UmbralSpec, umbral_bucc

    order = n_max + 2
    f = TruncatedSeries.t(order, FLOAT).scale(1.0 / math.e)
    U = umbral_bucc(UmbralSpec(f), n_max)
    worst = 0.0
    for n in range(n_max + 1):
        col = U.matrix.cols[n]
        for k in range(n + 1):
            want = math.exp(-n) if k == n else 0.0
            worst = max(worst, abs(float(col.coeff(k)) - want))
    return {
        "identity": "p0-scaling-demo",
        "status": "pass" if worst <= tol else "fail",
        "max_abs_error": worst,
    }
