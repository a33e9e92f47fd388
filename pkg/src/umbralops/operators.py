"""Linear operators on polynomials as finite column matrices.

An :class:`OperatorMatrix` stores the images of the monomials ``x^0..x^n_in``
as polynomials of degree at most ``max_out``.  Two exactness contracts are
tracked:

* ``window`` -- columns ``0..window`` are trustworthy; columns above it may
  have been corrupted by composing with an operator of limited input range.
* ``complete`` -- when True, the stored columns are the full images (no
  degree truncation happened).  When False, the stored columns are exact
  only up to ``max_out``; such operators arise from genuinely infinite
  images (composition operators, multiplication by a series) and are only
  composed under a valuation-monotonicity side condition that keeps the
  truncated coefficients exact.

Composition bookkeeping: the composed window is the largest ``w`` such that
every column of the right factor up to ``w`` has degree within the left
factor's window, and completeness survives only when no output degree
overflows ``max_out``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .polynomials import Polynomial, poly_from_series
from .scalars import EXACT, check_mode, coerce, common_mode, scalar_from_json, scalar_to_json
from .series import PreconditionError, TruncatedSeries


class WindowUnderflowError(ValueError):
    """An operation left no columns that can be certified exact."""


def _binom(n: int, k: int) -> int:
    return math.comb(n, k)


def _inv_int(k: int, mode: str):
    return Fraction(1, k) if mode == EXACT else 1.0 / k


class OperatorMatrix:
    __slots__ = ("cols", "n_in", "max_out", "window", "complete", "mode")

    def __init__(
        self,
        cols: Sequence[Polynomial],
        n_in: int,
        max_out: int,
        window: int,
        complete: bool = True,
        mode: str = EXACT,
    ):
        check_mode(mode)
        if len(cols) != n_in + 1:
            raise ValueError("need exactly n_in + 1 columns")
        if window > n_in:
            raise ValueError("window cannot exceed n_in")
        if window < 0:
            raise WindowUnderflowError("operator has an empty exact window")
        for c in cols:
            if c.mode != mode:
                raise ValueError("column mode mismatch")
            if c.degree > max_out:
                raise ValueError("column degree exceeds max_out")
        object.__setattr__(self, "cols", tuple(cols))
        object.__setattr__(self, "n_in", n_in)
        object.__setattr__(self, "max_out", max_out)
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "complete", complete)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("OperatorMatrix is immutable")

    def col(self, n: int) -> Polynomial:
        return self.cols[n]

    def __repr__(self):
        return (
            f"OperatorMatrix(n_in={self.n_in}, max_out={self.max_out}, "
            f"window={self.window}, complete={self.complete})"
        )

    # -- structural predicates (within the window) ----------------------

    def degree_raise(self) -> int:
        """Max of deg(col n) - n over nonzero window columns (0 if none)."""
        raises = [
            self.cols[n].degree - n
            for n in range(self.window + 1)
            if not self.cols[n].is_zero()
        ]
        return max(raises, default=0)

    def is_val_nondecreasing(self) -> bool:
        for n in range(self.window + 1):
            v = self.cols[n].valuation()
            if v is not None and v < n:
                return False
        return True

    def lowers_degree_strictly(self) -> bool:
        return all(self.cols[n].degree < n for n in range(self.window + 1))

    def raises_valuation_strictly(self) -> bool:
        for n in range(self.window + 1):
            v = self.cols[n].valuation()
            if v is not None and v <= n:
                return False
        return True

    def is_window_zero(self) -> bool:
        return all(self.cols[n].is_zero() for n in range(self.window + 1))

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n_in": self.n_in,
            "max_out": self.max_out,
            "window": self.window,
            "complete": self.complete,
            "cols": [c.to_json() for c in self.cols],
        }

    @classmethod
    def from_json(cls, obj: dict, mode: str = EXACT) -> "OperatorMatrix":
        cols = [Polynomial.from_json(c, mode) for c in obj["cols"]]
        return cls(
            cols,
            obj["n_in"],
            obj["max_out"],
            obj["window"],
            obj.get("complete", True),
            mode,
        )


# -- constructors -------------------------------------------------------


def zero_op(n_in: int, max_out: int | None = None, mode: str = EXACT) -> OperatorMatrix:
    if max_out is None:
        max_out = n_in
    cols = [Polynomial.zero(mode) for _ in range(n_in + 1)]
    return OperatorMatrix(cols, n_in, max_out, n_in, True, mode)


def identity_op(n_in: int, max_out: int | None = None, mode: str = EXACT) -> OperatorMatrix:
    if max_out is None:
        max_out = n_in
    cols = [Polynomial.monomial(n, 1, mode) for n in range(n_in + 1)]
    return OperatorMatrix(cols, n_in, max_out, n_in, True, mode)


def diag_op(values: Sequence, n_in: int, max_out: int | None = None, mode: str = EXACT) -> OperatorMatrix:
    if max_out is None:
        max_out = n_in
    cols = [Polynomial.monomial(n, 1, mode).scale(values[n]) for n in range(n_in + 1)]
    return OperatorMatrix(cols, n_in, max_out, n_in, True, mode)


def xD_op(n_in: int, shift: int = 0, mode: str = EXACT) -> OperatorMatrix:
    """The degree operator x*d/dx (plus an integer shift), diagonal n + shift."""
    return diag_op([n + shift for n in range(n_in + 1)], n_in, mode=mode)


def op_from_x_poly(p: Polynomial, n_in: int, max_out: int | None = None) -> OperatorMatrix:
    """Multiplication by the polynomial p(x)."""
    d = max(p.degree, 0)
    if max_out is None:
        max_out = n_in + d
    if max_out < n_in + p.degree:
        raise PreconditionError("output degree overflow: max_out < n_in + deg p")
    cols = [p.shift(n) for n in range(n_in + 1)]
    return OperatorMatrix(cols, n_in, max_out, n_in, True, p.mode)


def x_op(n_in: int, mode: str = EXACT) -> OperatorMatrix:
    return op_from_x_poly(Polynomial.x(mode), n_in)


def op_from_x_series(g: TruncatedSeries, n_in: int, max_out: int | None = None) -> OperatorMatrix:
    """Multiplication by a truncated series in x (max_out-truncated, incomplete)."""
    if max_out is None:
        max_out = max(n_in, g.order)
    p = poly_from_series(g)
    cols = [p.shift(n).truncate(max_out) for n in range(n_in + 1)]
    return OperatorMatrix(cols, n_in, max_out, n_in, False, g.mode)


def op_from_D_series(g: TruncatedSeries, n_in: int, max_out: int | None = None) -> OperatorMatrix:
    """The shift-invariant operator g(D); column n is sum_k g_k (n)_k x^(n-k)."""
    if max_out is None:
        max_out = n_in
    cols = []
    for n in range(n_in + 1):
        coeffs = [coerce(0, g.mode)] * (n + 1)
        falling = 1
        for k in range(0, n + 1):
            if k > 0:
                falling *= n - k + 1
            if k <= g.order and g[k] != 0:
                coeffs[n - k] += g[k] * falling
        cols.append(Polynomial(coeffs, g.mode))
    window = min(n_in, g.order)
    return OperatorMatrix(cols, n_in, max_out, window, True, g.mode)


def d_op(n_in: int, mode: str = EXACT) -> OperatorMatrix:
    return op_from_D_series(TruncatedSeries.t(n_in, mode), n_in)


def d_power_op(p: int, n_in: int, mode: str = EXACT) -> OperatorMatrix:
    coeffs = [0] * (n_in + 1)
    if p <= n_in:
        coeffs[p] = 1
    return op_from_D_series(TruncatedSeries(coeffs, n_in, mode), n_in)


def composition_operator(g: TruncatedSeries, n_in: int, max_out: int | None = None) -> OperatorMatrix:
    """C_g: p(x) -> p(g(x)), columns are powers of g truncated at max_out."""
    if g.valuation() is None or g.valuation() < 1:
        raise PreconditionError("composition_operator requires ord(g) >= 1")
    if max_out is None:
        max_out = min(n_in, g.order)
    p = poly_from_series(g)
    linear = p.degree <= 1
    if not linear and max_out > g.order:
        raise PreconditionError(
            "composition operator columns are exact only up to the order of g"
        )
    cols = [Polynomial.one(g.mode)]
    for n in range(1, n_in + 1):
        cols.append((cols[-1] * p).truncate(max_out))
    return OperatorMatrix(cols, n_in, max_out, min(n_in, max_out), linear, g.mode)


# -- application and algebra --------------------------------------------


def _apply_raw(U: OperatorMatrix, p: Polynomial) -> Polynomial:
    acc = Polynomial.zero(U.mode)
    for d, c in enumerate(p.coeffs):
        if c != 0 and d <= U.n_in:
            acc = acc + U.cols[d].scale(c)
    return acc


def apply_op(U: OperatorMatrix, p: Polynomial) -> Polynomial:
    """Apply U to p; requires deg p within the exact window."""
    common_mode(U.mode, p.mode)
    if p.degree > U.window:
        raise WindowUnderflowError(
            f"polynomial degree {p.degree} exceeds the exact window {U.window}"
        )
    return _apply_raw(U, p)


def _aligned(U: OperatorMatrix, V: OperatorMatrix):
    mode = common_mode(U.mode, V.mode)
    n_in = min(U.n_in, V.n_in)
    window = min(U.window, V.window, n_in)
    complete = U.complete and V.complete
    if complete:
        max_out = max(U.max_out, V.max_out)
        ucols = U.cols[: n_in + 1]
        vcols = V.cols[: n_in + 1]
    else:
        max_out = min(U.max_out, V.max_out)
        ucols = [c.truncate(max_out) for c in U.cols[: n_in + 1]]
        vcols = [c.truncate(max_out) for c in V.cols[: n_in + 1]]
    return mode, n_in, max_out, window, complete, ucols, vcols


def op_add(U: OperatorMatrix, V: OperatorMatrix) -> OperatorMatrix:
    mode, n_in, max_out, window, complete, uc, vc = _aligned(U, V)
    cols = [a + b for a, b in zip(uc, vc)]
    return OperatorMatrix(cols, n_in, max_out, window, complete, mode)


def op_sub(U: OperatorMatrix, V: OperatorMatrix) -> OperatorMatrix:
    mode, n_in, max_out, window, complete, uc, vc = _aligned(U, V)
    cols = [a - b for a, b in zip(uc, vc)]
    return OperatorMatrix(cols, n_in, max_out, window, complete, mode)


def op_scale(U: OperatorMatrix, c) -> OperatorMatrix:
    cols = [p.scale(c) for p in U.cols]
    return OperatorMatrix(cols, U.n_in, U.max_out, U.window, U.complete, U.mode)


def compose_ops(U: OperatorMatrix, V: OperatorMatrix) -> OperatorMatrix:
    """Operator product U V (V acts first)."""
    mode = common_mode(U.mode, V.mode)
    n_in = V.n_in

    if not V.complete:
        # V's stored columns miss terms above V.max_out; those must map above
        # the result's truncation, which needs U valuation-nondecreasing and
        # U's window to cover every stored degree.
        if not U.is_val_nondecreasing():
            raise PreconditionError(
                "composing onto a truncated operator requires a "
                "valuation-nondecreasing left factor"
            )
        if U.window < V.max_out:
            raise WindowUnderflowError(
                "left factor window does not cover the truncated columns"
            )
        max_out = min(U.max_out, V.max_out)
        window = V.window
        cols = [_apply_raw(U, c).truncate(max_out) for c in V.cols]
        return OperatorMatrix(cols, n_in, max_out, window, False, mode)

    # V complete: certify column n when its image degrees stay inside U's window.
    window = -1
    for n in range(V.window + 1):
        if V.cols[n].degree <= U.window:
            window = n
        else:
            break
    if window < 0:
        raise WindowUnderflowError("composition left no certified columns")

    max_out = U.max_out
    raw = []
    overflow = False
    for n in range(n_in + 1):
        img = _apply_raw(U, V.cols[n])
        if n <= window and img.degree > max_out:
            overflow = True
        raw.append(img)

    if overflow and not U.is_val_nondecreasing():
        # high-degree output of a degree-lowering operator cannot be dropped
        # safely; shrink the window instead
        w = window
        while w >= 0 and raw[w].degree > max_out:
            w -= 1
        if w < 0:
            raise WindowUnderflowError("all composed columns overflow max_out")
        window = w
        overflow = False

    complete = U.complete and not overflow
    cols = [img.truncate(max_out) for img in raw]
    return OperatorMatrix(cols, n_in, max_out, window, complete, mode)


def op_pow(U: OperatorMatrix, k: int) -> OperatorMatrix:
    if k < 0:
        return op_pow(op_inverse(U), -k)
    acc = identity_op(U.n_in, U.max_out, U.mode)
    for _ in range(k):
        acc = compose_ops(U, acc)
    return acc


def op_inverse(U: OperatorMatrix) -> OperatorMatrix:
    """Inverse of a degree-preserving triangular operator, by back-substitution."""
    cols = []
    for n in range(U.n_in + 1):
        target = Polynomial.monomial(n, 1, U.mode)
        w = Polynomial.zero(U.mode)
        r = target
        while not r.is_zero():
            d = r.degree
            if d > U.window:
                raise WindowUnderflowError("inverse needs columns beyond the window")
            lead = U.cols[d].coeff(d)
            if lead == 0:
                raise PreconditionError("operator is not invertibly triangular")
            c = r.coeffs[d] / lead
            w = w + Polynomial.monomial(d, 1, U.mode).scale(c)
            r = r - U.cols[d].scale(c)
        cols.append(w)
    return OperatorMatrix(cols, U.n_in, U.max_out, U.window, U.complete, U.mode)


def first_discrepancy(U: OperatorMatrix, V: OperatorMatrix):
    """First (column, coefficient) where U and V differ on the common window."""
    common_mode(U.mode, V.mode)
    window = min(U.window, V.window)
    cap = None if (U.complete and V.complete) else min(U.max_out, V.max_out)
    for n in range(window + 1):
        a, b = U.cols[n], V.cols[n]
        if cap is not None:
            a, b = a.truncate(cap), b.truncate(cap)
        if a != b:
            top = max(a.degree, b.degree)
            for k in range(top + 1):
                if a.coeff(k) != b.coeff(k):
                    return (n, k)
    return None


def ops_equal(U: OperatorMatrix, V: OperatorMatrix) -> bool:
    return first_discrepancy(U, V) is None


# -- Pincherle calculus ---------------------------------------------------


def pincherle_derivative(U: OperatorMatrix) -> OperatorMatrix:
    """U' = U x - x U; shrinks the input range and window by one."""
    if U.n_in < 1:
        raise WindowUnderflowError("no room for an extra input degree")
    xs = op_from_x_poly(Polynomial.x(U.mode), U.n_in - 1, U.n_in)
    ux = compose_ops(U, xs)
    xbig = op_from_x_poly(Polynomial.x(U.mode), U.max_out, U.max_out + 1)
    xu = compose_ops(xbig, U)
    return op_sub(ux, xu)


def nth_pincherle(U: OperatorMatrix, n: int, check: bool = True) -> OperatorMatrix:
    """n-th Pincherle derivative, via iteration; optionally cross-checked
    against the explicit alternating sum over conjugations by powers of x."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if U.window < n:
        raise WindowUnderflowError("window too small for the requested derivative")
    iterated = U
    for _ in range(n):
        iterated = pincherle_derivative(iterated)
    if check and n > 0:
        explicit = _nth_pincherle_explicit(U, n)
        if not ops_equal(iterated, explicit):
            raise AssertionError("the two n-th Pincherle derivative paths disagree")
    return iterated


def _nth_pincherle_explicit(U: OperatorMatrix, n: int) -> OperatorMatrix:
    acc = None
    for k in range(n + 1):
        xk = op_from_x_poly(Polynomial.monomial(k, 1, U.mode), U.n_in - n, U.n_in)
        mxk = op_from_x_poly(
            Polynomial.monomial(n - k, (-1) ** (n - k), U.mode), U.max_out, U.max_out + n - k
        )
        term = op_scale(compose_ops(mxk, compose_ops(U, xk)), _binom(n, k))
        acc = term if acc is None else op_add(acc, term)
    return acc


# -- exponentials, logarithms, generalized powers -------------------------


def _series_termination_bound(U: OperatorMatrix) -> int:
    return U.n_in + U.max_out + 2


def exp_loc_nilpotent(A: OperatorMatrix) -> OperatorMatrix:
    """exp(A) for A that strictly lowers degree or strictly raises valuation."""
    if not (A.lowers_degree_strictly() or A.raises_valuation_strictly()):
        raise PreconditionError(
            "exp requires a strictly degree-lowering or valuation-raising operator"
        )
    acc = identity_op(A.n_in, A.max_out, A.mode)
    power = acc
    fact = 1
    for k in range(1, _series_termination_bound(A) + 1):
        power = compose_ops(power, A)
        if power.is_window_zero():
            break
        fact *= k
        acc = op_add(acc, op_scale(power, _inv_int(fact, A.mode)))
    else:
        raise PreconditionError("exponential series did not terminate")
    return acc


def log_unipotent(U: OperatorMatrix) -> OperatorMatrix:
    """log(U) for unipotent U (U - 1 strictly lowers degree or raises valuation)."""
    n1 = op_sub(U, identity_op(U.n_in, U.max_out, U.mode))
    if not (n1.lowers_degree_strictly() or n1.raises_valuation_strictly()):
        raise PreconditionError("log requires a unipotent operator")
    acc = zero_op(n1.n_in, n1.max_out, n1.mode)
    power = identity_op(n1.n_in, n1.max_out, n1.mode)
    for k in range(1, _series_termination_bound(U) + 1):
        power = compose_ops(power, n1)
        if power.is_window_zero():
            break
        sign = 1 if k % 2 == 1 else -1
        acc = op_add(acc, op_scale(power, _inv_int(k, n1.mode) * sign))
    else:
        raise PreconditionError("logarithm series did not terminate")
    return acc


def gen_pow(U: OperatorMatrix, V: OperatorMatrix, term_bound: int | None = None) -> OperatorMatrix:
    """Generalized exponentiation U^V = sum_n (U-1)^n binom(V, n).

    The (U-1)^n factor sits to the left of the binomial factor.  The series
    must terminate per column: either U - 1 strictly lowers degree or raises
    valuation, or a term bound is supplied by the caller (e.g. when V is an
    integer diagonal whose falling factorials vanish).
    """
    um1 = op_sub(U, identity_op(U.n_in, U.max_out, U.mode))
    auto = um1.lowers_degree_strictly() or um1.raises_valuation_strictly()
    if not auto and term_bound is None:
        raise PreconditionError(
            "gen_pow series does not terminate; supply a term bound"
        )
    limit = term_bound if term_bound is not None else _series_termination_bound(U)
    acc = identity_op(U.n_in, U.max_out, U.mode)
    power = acc
    bino = identity_op(V.n_in, V.max_out, V.mode)
    for m in range(1, limit + 1):
        power = compose_ops(power, um1)
        if auto and power.is_window_zero():
            break
        shifted = op_sub(V, op_scale(identity_op(V.n_in, V.max_out, V.mode), m - 1))
        bino = op_scale(compose_ops(bino, shifted), _inv_int(m, U.mode))
        acc = op_add(acc, compose_ops(power, bino))
    else:
        if auto and term_bound is None:
            raise PreconditionError("gen_pow series did not terminate")
    return acc


# -- normal forms ----------------------------------------------------------


class NormalForm:
    """Normal-ordered coefficient table: entry (j, k) multiplies x^j D^k."""

    __slots__ = ("table", "mode")

    def __init__(self, table: dict, mode: str = EXACT):
        check_mode(mode)
        clean = {}
        for (j, k), c in table.items():
            c = coerce(c, mode)
            if c != 0:
                clean[(int(j), int(k))] = c
        object.__setattr__(self, "table", clean)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("NormalForm is immutable")

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.mode == other.mode and self.table == other.table

    def __hash__(self):
        return hash((frozenset(self.table.items()), self.mode))

    def __repr__(self):
        return f"NormalForm({self.table!r})"

    def entry(self, j: int, k: int):
        return self.table.get((j, k), coerce(0, self.mode))

    def l_transform(self) -> "NormalForm":
        """The x/D swap: x^j D^k -> x^k D^j (an anti-multiplicative involution)."""
        return NormalForm({(k, j): c for (j, k), c in self.table.items()}, self.mode)

    def to_json(self):
        return [
            [j, k, scalar_to_json(c)]
            for (j, k), c in sorted(self.table.items())
        ]

    @classmethod
    def from_json(cls, obj, mode: str = EXACT) -> "NormalForm":
        return cls({(j, k): scalar_from_json(c, mode) for j, k, c in obj}, mode)


def normal_form(U: OperatorMatrix, k_max: int | None = None, j_max: int | None = None) -> NormalForm:
    """Extract the x-before-D normal-ordered table from an operator matrix."""
    if k_max is None:
        k_max = U.window
    if j_max is None:
        j_max = U.max_out
    if k_max > U.window:
        raise WindowUnderflowError("window too small for the requested D-power range")
    table = {}
    fact = 1
    for k in range(k_max + 1):
        if k > 0:
            fact *= k
        inner = Polynomial.zero(U.mode)
        for j in range(k + 1):
            sign = (-1) ** (k - j)
            inner = inner + U.cols[j].shift(k - j).scale(sign * _binom(k, j))
        for j, c in enumerate(inner.coeffs):
            if c != 0 and j <= j_max:
                table[(j, k)] = c / fact
    return NormalForm(table, U.mode)


def op_from_normal_form(nf: NormalForm, n_in: int, max_out: int | None = None) -> OperatorMatrix:
    """Rebuild the matrix of sum a[j][k] x^j D^k."""
    if max_out is None:
        shift = max((j - k for (j, k) in nf.table), default=0)
        max_out = n_in + max(shift, 0)
    cols = []
    for n in range(n_in + 1):
        acc = Polynomial.zero(nf.mode)
        for (j, k), c in nf.table.items():
            if k > n:
                continue
            falling = 1
            for i in range(k):
                falling *= n - i
            deg = n - k + j
            if deg > max_out:
                raise PreconditionError("output degree overflow in normal-form rebuild")
            acc = acc + Polynomial.monomial(deg, 1, nf.mode).scale(c * falling)
        cols.append(acc)
    return OperatorMatrix(cols, n_in, max_out, n_in, True, nf.mode)


def km_operator(
    gs: Sequence[TruncatedSeries],
    hs: Sequence[TruncatedSeries],
    Q: OperatorMatrix,
) -> OperatorMatrix:
    """Finite sum of products g_k(x) * h_k(Q) for series g_k in x, h_k in t."""
    if len(gs) != len(hs):
        raise ValueError("gs and hs must have equal length")
    acc = None
    for g, h in zip(gs, hs):
        gop = op_from_x_series(g, Q.n_in, Q.max_out)
        hq = series_in_operator(h, Q)
        term = compose_ops(gop, hq)
        acc = term if acc is None else op_add(acc, term)
    if acc is None:
        raise ValueError("empty expansion")
    return acc


def series_in_operator(h: TruncatedSeries, Q: OperatorMatrix) -> OperatorMatrix:
    """sum_j h_j Q^j, truncated at the order of h."""
    acc = op_scale(identity_op(Q.n_in, Q.max_out, Q.mode), h[0])
    power = identity_op(Q.n_in, Q.max_out, Q.mode)
    for j in range(1, h.order + 1):
        power = compose_ops(power, Q)
        if h[j] != 0:
            acc = op_add(acc, op_scale(power, h[j]))
    return acc
