"""Truncated formal power series in one indeterminate.

A :class:`TruncatedSeries` stores plain coefficients ``c_0 .. c_N`` of
``t^0 .. t^N`` together with the truncation order ``N``.  Values are
immutable; every operation returns a new series at the same order and never
silently extends it.  Binary operations require equal orders (use
:meth:`TruncatedSeries.truncate` to align) and equal scalar modes.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import (
    EXACT,
    FLOAT,
    check_mode,
    coerce,
    common_mode,
    gbinom,
    scalar_from_json,
    scalar_to_json,
)


DEFAULT_ORDER = 12


class PreconditionError(ValueError):
    """A documented operation precondition was violated."""


class TruncatedSeries:
    __slots__ = ("coeffs", "order", "mode")

    def __init__(self, coeffs: Sequence, order: int | None = None, mode: str = EXACT):
        check_mode(mode)
        coeffs = [coerce(c, mode) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        if len(coeffs) < order + 1:
            coeffs += [coerce(0, mode)] * (order + 1 - len(coeffs))
        elif len(coeffs) > order + 1:
            raise ValueError("more coefficients than order+1")
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, order: int, mode: str = EXACT) -> "TruncatedSeries":
        return cls([], order, mode)

    @classmethod
    def one(cls, order: int, mode: str = EXACT) -> "TruncatedSeries":
        return cls([1], order, mode)

    @classmethod
    def t(cls, order: int, mode: str = EXACT) -> "TruncatedSeries":
        return cls([0, 1], order, mode)

    @classmethod
    def from_json(cls, obj: dict) -> "TruncatedSeries":
        mode = EXACT if any(isinstance(c, str) for c in obj["coeffs"]) or not obj["coeffs"] else FLOAT
        mode = obj.get("mode", mode)
        coeffs = [scalar_from_json(c, mode) for c in obj["coeffs"]]
        return cls(coeffs, obj["order"], mode)

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [scalar_to_json(c) for c in self.coeffs]}

    # -- basics -------------------------------------------------------

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.mode == other.mode and self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.order, self.mode))

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)!r}, order={self.order})"

    def is_zero(self) -> bool:
        z = coerce(0, self.mode)
        return all(c == z for c in self.coeffs)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None for the zero series."""
        z = coerce(0, self.mode)
        for n, c in enumerate(self.coeffs):
            if c != z:
                return n
        return None

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("truncate cannot extend the order")
        return TruncatedSeries(self.coeffs[: order + 1], order, self.mode)

    def _peer(self, other: "TruncatedSeries") -> None:
        common_mode(self.mode, other.mode)
        if self.order != other.order:
            raise ValueError(
                f"order mismatch: {self.order} vs {other.order}; truncate explicitly"
            )

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._peer(other)
        return TruncatedSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.mode
        )

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._peer(other)
        return TruncatedSeries(
            [a - b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.mode
        )

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order, self.mode)

    def scale(self, c) -> "TruncatedSeries":
        c = coerce(c, self.mode)
        return TruncatedSeries([c * a for a in self.coeffs], self.order, self.mode)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._peer(other)
            n = self.order
            out = [coerce(0, self.mode)] * (n + 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j in range(0, n + 1 - i):
                    b = other.coeffs[j]
                    if b != 0:
                        out[i + j] += a * b
            return TruncatedSeries(out, n, self.mode)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k (k >= 0), truncating at the same order."""
        if k < 0:
            raise ValueError("shift requires k >= 0")
        zeros = [coerce(0, self.mode)] * k
        return TruncatedSeries((zeros + list(self.coeffs))[: self.order + 1], self.order, self.mode)

    def derivative(self) -> "TruncatedSeries":
        """Termwise derivative; the order drops by one (the top coefficient
        of the derivative would need an unknown coefficient of self)."""
        if self.order == 0:
            return TruncatedSeries.zero(0, self.mode)
        out = [i * c for i, c in enumerate(self.coeffs)][1:]
        return TruncatedSeries(out, self.order - 1, self.mode)

    def pad(self, order: int) -> "TruncatedSeries":
        """Extend with zero coefficients.  The caller asserts that the true
        coefficients in the padded range are zero (or irrelevant)."""
        if order < self.order:
            raise ValueError("pad cannot shrink the order")
        return TruncatedSeries(list(self.coeffs), order, self.mode)

    def shift_down(self, k: int) -> "TruncatedSeries":
        """Divide by t^k; requires valuation >= k.  The order drops by k."""
        v = self.valuation()
        if v is not None and v < k:
            raise PreconditionError(f"series is not divisible by t^{k}")
        if self.order < k:
            raise ValueError("order too small")
        return TruncatedSeries(self.coeffs[k:], self.order - k, self.mode)

    # -- composition and inversion --------------------------------------

    def compose(self, g: "TruncatedSeries") -> "TruncatedSeries":
        """f(g(t)) truncated at the common order; requires g(0) = 0."""
        self._peer(g)
        if g.coeffs[0] != 0:
            raise PreconditionError("compose requires ord(g) >= 1 (g(0) = 0)")
        # Horner evaluation keeps every coefficient up to the order exact.
        acc = TruncatedSeries.zero(self.order, self.mode)
        for c in reversed(self.coeffs):
            acc = acc * g
            if c != 0:
                acc = acc + TruncatedSeries([c], self.order, self.mode)
        return acc

    def comp_inverse(self) -> "TruncatedSeries":
        """Compositional inverse g with f(g) = g(f) = t, by triangular solve."""
        if self.coeffs[0] != 0 or self.order < 1 or self.coeffs[1] == 0:
            raise PreconditionError("comp_inverse requires f(0) = 0 and f'(0) != 0")
        n = self.order
        g = [coerce(0, self.mode)] * (n + 1)
        g[1] = coerce(1, self.mode) / self.coeffs[1]
        for m in range(2, n + 1):
            partial = TruncatedSeries(g[: m + 1], m, self.mode)
            resid = self.truncate(m).compose(partial)
            g[m] = -resid.coeffs[m] / self.coeffs[1]
        return TruncatedSeries(g, n, self.mode)

    def unit_inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse of a series with nonzero constant term."""
        if self.coeffs[0] == 0:
            raise PreconditionError("unit_inverse requires f(0) != 0")
        n = self.order
        out = [coerce(0, self.mode)] * (n + 1)
        out[0] = coerce(1, self.mode) / self.coeffs[0]
        for m in range(1, n + 1):
            s = coerce(0, self.mode)
            for k in range(1, m + 1):
                s += self.coeffs[k] * out[m - k]
            out[m] = -s / self.coeffs[0]
        return TruncatedSeries(out, n, self.mode)

    # -- transcendental expansions ---------------------------------------

    def exp(self) -> "TruncatedSeries":
        if self.coeffs[0] != 0:
            raise PreconditionError("exp requires f(0) = 0")
        acc = TruncatedSeries.one(self.order, self.mode)
        power = TruncatedSeries.one(self.order, self.mode)
        for k in range(1, self.order + 1):
            power = power * self
            if power.is_zero():
                break
            acc = acc + power.scale(Fraction(1, math.factorial(k)) if self.mode == EXACT else 1.0 / math.factorial(k))
        return acc

    def log1(self) -> "TruncatedSeries":
        if self.coeffs[0] != coerce(1, self.mode):
            raise PreconditionError("log1 requires f(0) = 1")
        u = self - TruncatedSeries.one(self.order, self.mode)
        acc = TruncatedSeries.zero(self.order, self.mode)
        power = TruncatedSeries.one(self.order, self.mode)
        for k in range(1, self.order + 1):
            power = power * u
            if power.is_zero():
                break
            sign = 1 if k % 2 == 1 else -1
            acc = acc + power.scale(Fraction(sign, k) if self.mode == EXACT else sign / k)
        return acc

    def pow_scalar(self, alpha) -> "TruncatedSeries":
        """Generalized binomial series: f^alpha for a series with f(0) = 1."""
        if self.coeffs[0] != coerce(1, self.mode):
            raise PreconditionError("pow_scalar requires f(0) = 1")
        alpha = coerce(alpha, self.mode)
        u = self - TruncatedSeries.one(self.order, self.mode)
        acc = TruncatedSeries.one(self.order, self.mode)
        power = TruncatedSeries.one(self.order, self.mode)
        for k in range(1, self.order + 1):
            power = power * u
            if power.is_zero():
                break
            acc = acc + power.scale(gbinom(alpha, k))
        return acc


def series_from_tail(coeffs: Iterable, order: int, mode: str = EXACT) -> TruncatedSeries:
    """Build a generator series from coefficients of t^1, t^2, ... (c_0 = 0)."""
    tail = list(coeffs)
    if len(tail) > order:
        raise ValueError("more tail coefficients than the truncation order")
    return TruncatedSeries([0] + tail, order, mode)
