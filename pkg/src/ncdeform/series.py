"""Truncated formal power series in the deformation parameters h1, h2, h3.

This is the scalar ring of the whole engine.  A series is a sparse map from
exponent triples (m1, m2, m3) -- standing for h1^m1 * h2^m2 * h3^m3 -- to
exact rational coefficients, together with a truncation order: every monomial
of total degree > trunc is discarded by every operation.  Zero coefficients
are never stored, so two series are equal iff their term maps are equal.

>>> a = SeriesScalar.one(2) + SeriesScalar.hbar(1, 2)
>>> print((a * a).to_text())
1 + 2*h1 + h1^2
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

HExponent = tuple[int, int, int]

_ZERO_H: HExponent = (0, 0, 0)
_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class TruncationMismatchError(ValueError):
    """Two series with different truncation orders were combined."""


class NonInvertibleSeriesError(ValueError):
    """The series has zero constant term and cannot be inverted."""


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" into an exact rational."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


class SeriesScalar:
    __slots__ = ("terms", "trunc")

    def __init__(self, terms: Mapping[HExponent, Fraction], trunc: int):
        if trunc < 0:
            raise ValueError("truncation order must be >= 0")
        clean: dict[HExponent, Fraction] = {}
        for h, c in terms.items():
            if sum(h) > trunc:
                continue
            c = Fraction(c)
            if c:
                clean[h] = c
        self.terms = clean
        self.trunc = trunc

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, trunc: int) -> "SeriesScalar":
        return cls({}, trunc)

    @classmethod
    def one(cls, trunc: int) -> "SeriesScalar":
        return cls({_ZERO_H: Fraction(1)}, trunc)

    @classmethod
    def from_rational(cls, value, trunc: int) -> "SeriesScalar":
        return cls({_ZERO_H: Fraction(value)}, trunc)

    @classmethod
    def hbar(cls, i: int, trunc: int) -> "SeriesScalar":
        """The variable h_i, i in {1, 2, 3}."""
        if i not in (1, 2, 3):
            raise ValueError("variable index must be 1, 2 or 3")
        h = tuple(1 if k == i - 1 else 0 for k in range(3))
        return cls({h: Fraction(1)}, trunc)

    @classmethod
    def monomial(cls, h: HExponent, coeff, trunc: int) -> "SeriesScalar":
        return cls({tuple(h): Fraction(coeff)}, trunc)

    # -- structure ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_one(self) -> bool:
        return self.terms == {_ZERO_H: Fraction(1)}

    def constant(self) -> Fraction:
        return self.terms.get(_ZERO_H, Fraction(0))

    def coeff(self, h: HExponent) -> Fraction:
        h = tuple(h)
        if sum(h) > self.trunc:
            raise ValueError(f"degree overflow: |{h}| > truncation {self.trunc}")
        return self.terms.get(h, Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, SeriesScalar):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return not self.terms
            return self.terms == {_ZERO_H: other}
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        return f"SeriesScalar({self.to_text()!r}, trunc={self.trunc})"

    def _check(self, other: "SeriesScalar") -> None:
        if self.trunc != other.trunc:
            raise TruncationMismatchError(
                f"truncation mismatch: {self.trunc} vs {other.trunc}")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "SeriesScalar") -> "SeriesScalar":
        if isinstance(other, (int, Fraction)):
            other = SeriesScalar.from_rational(other, self.trunc)
        self._check(other)
        out = dict(self.terms)
        for h, c in other.terms.items():
            s = out.get(h, Fraction(0)) + c
            if s:
                out[h] = s
            else:
                out.pop(h, None)
        return _raw(out, self.trunc)

    __radd__ = __add__

    def __neg__(self) -> "SeriesScalar":
        return _raw({h: -c for h, c in self.terms.items()}, self.trunc)

    def __sub__(self, other: "SeriesScalar") -> "SeriesScalar":
        return self + (-other)

    def __mul__(self, other) -> "SeriesScalar":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return SeriesScalar.zero(self.trunc)
            return _raw({h: c * other for h, c in self.terms.items()}, self.trunc)
        self._check(other)
        trunc = self.trunc
        out: dict[HExponent, Fraction] = {}
        for h1, c1 in self.terms.items():
            for h2, c2 in other.terms.items():
                h = (h1[0] + h2[0], h1[1] + h2[1], h1[2] + h2[2])
                if h[0] + h[1] + h[2] > trunc:
                    continue
                s = out.get(h, Fraction(0)) + c1 * c2
                if s:
                    out[h] = s
                else:
                    del out[h]
        return _raw(out, trunc)

    __rmul__ = __mul__

    def shifted(self, h: HExponent, scale=1) -> "SeriesScalar":
        """Multiply by scale * h1^a h2^b h3^c, dropping overflowing terms."""
        scale = Fraction(scale)
        if not scale:
            return SeriesScalar.zero(self.trunc)
        trunc = self.trunc
        out: dict[HExponent, Fraction] = {}
        for k, c in self.terms.items():
            nk = (k[0] + h[0], k[1] + h[1], k[2] + h[2])
            if nk[0] + nk[1] + nk[2] <= trunc:
                out[nk] = c * scale
        return _raw(out, trunc)

    def inv(self) -> "SeriesScalar":
        """Inverse by geometric series; requires a nonzero constant term."""
        u = self.constant()
        if not u:
            raise NonInvertibleSeriesError("non-invertible series: zero constant term")
        one = SeriesScalar.one(self.trunc)
        g = one - self * (1 / u)
        acc = one
        for _ in range(self.trunc):
            acc = one + g * acc
        return acc * (1 / u)

    def limit(self, zeroed: Iterable[int]) -> "SeriesScalar":
        """Set the listed variables (1-based) to zero."""
        zeroed = set(zeroed)
        out = {h: c for h, c in self.terms.items()
               if all(h[i - 1] == 0 for i in zeroed)}
        return _raw(out, self.trunc)

    def truncate(self, trunc: int) -> "SeriesScalar":
        return SeriesScalar(self.terms, trunc)

    # -- presentation ------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for h in sorted(self.terms):
            parts.append((self.terms[h], _h_factors(h)))
        return render_terms(parts)

    def to_json(self) -> list:
        return [{"h": list(h), "c": format_rational(self.terms[h])}
                for h in sorted(self.terms)]

    @classmethod
    def from_json(cls, data: list, trunc: int) -> "SeriesScalar":
        return cls({tuple(item["h"]): parse_rational(item["c"]) for item in data},
                   trunc)


def _raw(terms: dict, trunc: int) -> SeriesScalar:
    s = SeriesScalar.__new__(SeriesScalar)
    s.terms = terms
    s.trunc = trunc
    return s


def _h_factors(h: HExponent) -> list[str]:
    out = []
    for i, e in enumerate(h):
        if e == 1:
            out.append(f"h{i + 1}")
        elif e > 1:
            out.append(f"h{i + 1}^{e}")
    return out


def render_terms(parts: list[tuple[Fraction, list[str]]]) -> str:
    """Join (coefficient, factor list) terms into canonical "a + b - c" text."""
    chunks: list[str] = []
    for coeff, factors in parts:
        sign = "-" if coeff < 0 else "+"
        mag = -coeff if coeff < 0 else coeff
        if not factors:
            body = format_rational(mag) if mag.denominator == 1 else f"({format_rational(mag)})"
        elif mag == 1:
            body = "*".join(factors)
        elif mag.denominator == 1:
            body = "*".join([format_rational(mag)] + factors)
        else:
            body = "*".join([f"({format_rational(mag)})"] + factors)
        if not chunks:
            chunks.append(body if sign == "+" else "-" + body)
        else:
            chunks.append(f" {sign} {body}")
    return "".join(chunks)


# Named operation aliases.

def series_add(a: SeriesScalar, b: SeriesScalar) -> SeriesScalar:
    return a + b


def series_mul(a: SeriesScalar, b: SeriesScalar) -> SeriesScalar:
    return a * b


def series_inv(a: SeriesScalar) -> SeriesScalar:
    return a.inv()


def series_limit(a: SeriesScalar, zeroed: Iterable[int]) -> SeriesScalar:
    return a.limit(zeroed)


def series_coeff_at(a: SeriesScalar, h: HExponent) -> Fraction:
    return a.coeff(h)
