"""Multi-index combinatorics: norms, factorials, componentwise binomials,
linear combinations and the bounded iterations behind every summation range.

Indices are plain tuples of nonnegative ints; length 3 for central indices,
length 4 for Q/P indices, length 7 for full ordered-monomial exponents.
"""

from __future__ import annotations

import math
from itertools import product
from typing import Iterator

MultiIndex = tuple[int, ...]


class IndexRangeError(ValueError):
    """A combination produced a negative component where a natural is required."""


def mi_norm(i: MultiIndex) -> int:
    return sum(i)


def mi_factorial(i: MultiIndex) -> int:
    out = 1
    for c in i:
        out *= math.factorial(c)
    return out


def mi_norm_factorial(i: MultiIndex) -> tuple[int, int]:
    return sum(i), mi_factorial(i)


def mi_binom(i: MultiIndex, j: MultiIndex) -> int:
    """Product of componentwise binomial coefficients; 0 if any j_k > i_k."""
    if len(i) != len(j):
        raise ValueError(f"length mismatch: {len(i)} vs {len(j)}")
    out = 1
    for a, b in zip(i, j):
        out *= math.comb(a, b)
        if not out:
            return 0
    return out


def mi_combine(a: int, i: MultiIndex, b: int, j: MultiIndex) -> MultiIndex:
    """Componentwise a*i + b*j, failing when a component goes negative."""
    if len(i) != len(j):
        raise ValueError(f"length mismatch: {len(i)} vs {len(j)}")
    out = tuple(a * x + b * y for x, y in zip(i, j))
    if any(c < 0 for c in out):
        raise IndexRangeError(f"out of range: {out}")
    return out


def mi_to_text(i: MultiIndex) -> str:
    return "(" + ",".join(str(c) for c in i) + ")"


def mi_from_text(text: str) -> MultiIndex:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"not a multi-index: {text!r}")
    entries = tuple(int(part) for part in body[1:-1].split(","))
    if any(c < 0 for c in entries):
        raise ValueError(f"negative entry in multi-index: {text!r}")
    return entries


def submultiindices(i: MultiIndex) -> Iterator[MultiIndex]:
    """All 0 <= m <= i componentwise, in lexicographic order."""
    return product(*(range(c + 1) for c in i))


def multiindices(length: int, max_norm: int) -> Iterator[MultiIndex]:
    """All indices of the given length with norm <= max_norm, lexicographic."""
    if length == 0:
        yield ()
        return
    for head in range(max_norm + 1):
        for tail in multiindices(length - 1, max_norm - head):
            yield (head,) + tail


def multiindices_of_norm(length: int, norm: int) -> Iterator[MultiIndex]:
    """All indices of the given length with norm exactly norm, lexicographic."""
    if length == 0:
        if norm == 0:
            yield ()
        return
    for head in range(norm + 1):
        for tail in multiindices_of_norm(length - 1, norm - head):
            yield (head,) + tail


def multiindices_graded(length: int, max_norm: int) -> Iterator[MultiIndex]:
    """All indices with norm <= max_norm, by increasing norm then lex."""
    for d in range(max_norm + 1):
        yield from multiindices_of_norm(length, d)
