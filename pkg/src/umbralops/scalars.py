"""Scalar arithmetic helpers for the exact (rational) and float coefficient modes.

Exact-mode values are ``fractions.Fraction`` (always in lowest terms with a
positive denominator); float-mode values are plain ``float``.  The two modes
are never mixed silently: containers carry a mode tag and binary operations
reject operands of different modes.
"""

from __future__ import annotations

import math
from fractions import Fraction

EXACT = "exact"
FLOAT = "float"

MODES = (EXACT, FLOAT)


class ModeMismatchError(TypeError):
    """Raised when exact and float values meet in one operation."""


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown scalar mode {mode!r}")
    return mode


def infer_mode(value) -> str:
    if isinstance(value, float):
        return FLOAT
    if isinstance(value, (int, Fraction)):
        return EXACT
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def coerce(value, mode: str):
    """Convert ``value`` into the canonical representation for ``mode``.

    Integers are accepted in both modes; a float is rejected in exact mode
    and a Fraction is rejected in float mode.
    """
    check_mode(mode)
    if mode == EXACT:
        if isinstance(value, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise ModeMismatchError(f"{value!r} is not an exact scalar")
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    raise ModeMismatchError(f"{value!r} is not a float scalar")


def common_mode(a: str, b: str) -> str:
    if a != b:
        raise ModeMismatchError(f"mixed scalar modes: {a} vs {b}")
    return a


def parse_scalar(text: str, mode: str = EXACT):
    """Parse ``"p/q"`` / integer strings (exact) or decimal strings (float)."""
    check_mode(mode)
    text = text.strip()
    if mode == EXACT:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"invalid rational {text!r}") from exc
    return float(text)


def format_scalar(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return repr(value)


def scalar_to_json(value):
    if isinstance(value, float):
        return value
    return format_scalar(Fraction(value))


def scalar_from_json(obj, mode: str):
    if isinstance(obj, str):
        return parse_scalar(obj, mode)
    return coerce(obj, mode)


def gbinom(s, n: int):
    """Generalized binomial coefficient: falling factorial of ``s`` over ``n!``."""
    if n < 0:
        raise ValueError("gbinom requires n >= 0")
    num = coerce(1, infer_mode(s))
    for i in range(n):
        num *= s - i
    return num / math.factorial(n)


def qbinom(s, p: int, q):
    """Gaussian binomial coefficient; at q = 1 it degenerates to ``gbinom``.

    For q != 1 the product formula needs q-powers of s, so s must be an
    integer (any sign) in exact mode; float mode additionally allows real s
    with positive q.
    """
    if p < 0:
        raise ValueError("qbinom requires p >= 0")
    mode = infer_mode(q)
    if q == coerce(1, mode):
        return gbinom(coerce(s, mode), p)
    if mode == EXACT:
        if infer_mode(s) != EXACT or Fraction(s).denominator != 1:
            raise ValueError("qbinom with q != 1 requires integer s in exact mode")
        s = int(Fraction(s))
        q = Fraction(q)
    elif q <= 0:
        raise ValueError("qbinom in float mode requires q > 0")
    num = coerce(1, mode)
    den = coerce(1, mode)
    for i in range(1, p + 1):
        num *= q ** (s - i + 1) - 1
        den *= q**i - 1
    return num / den
