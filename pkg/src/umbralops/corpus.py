"""The fixed generator corpus used by the verify suites and tests.

The manifest is a JSON list of {"name", "coeffs"} entries where coeffs are
the tail coefficients of t^1, t^2, ... as "num/den" strings (the constant
term is always zero for a generator).  A seeded randomized extension corpus
can be appended for broader property coverage.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from importlib import resources

from .scalars import EXACT, parse_scalar
from .series import DEFAULT_ORDER, TruncatedSeries, series_from_tail


def load_corpus(path: str | None = None, order: int = DEFAULT_ORDER, mode: str = EXACT):
    """Load the corpus manifest as a list of (name, TruncatedSeries) pairs."""
    if path is None:
        text = resources.files("umbralops").joinpath("data/corpus.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    entries = json.loads(text)
    out = []
    for entry in entries:
        tail = [parse_scalar(c, mode) for c in entry["coeffs"]]
        out.append((entry["name"], series_from_tail(tail, order, mode)))
    return out


def split_by_multiplier(corpus):
    """Partition (name, series) pairs into multiplier-1 and general lists."""
    tangent, general = [], []
    for name, f in corpus:
        (tangent if f[1] == 1 else general).append((name, f))
    return tangent, general


def random_generators(seed: int, count: int = 5, order: int = DEFAULT_ORDER):
    """Deterministic extension corpus: sparse exact generators with small
    rational coefficients and multiplier 1."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        tail = [Fraction(1)]
        for n in range(2, order + 1):
            if rng.random() < 0.4:
                tail.append(Fraction(rng.randint(-3, 3), rng.randint(1, 4)))
            else:
                tail.append(Fraction(0))
        out.append((f"random-{seed}-{i}", series_from_tail(tail, order)))
    return out
