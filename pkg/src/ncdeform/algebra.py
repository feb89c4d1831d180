"""The deformed enveloping algebra on the seven generators
Th, Ph, Ps, Q1, Q2, P1, P2.

Elements are finite sums of ordered monomials
Th^e1 Ph^e2 Ps^e3 Q1^e4 Q2^e5 P1^e6 P2^e7 with truncated-series coefficients
(see series.SeriesScalar).  The first three generators are central, and every
commutator among the last four is a central element:

    [Q1, P1] = [Q2, P2] = (lam/alpha) Th
    [Q1, Q2] = (beta lam/alpha^2) Ph
    [P1, P2] = (gamma lam/alpha^2) Ps

where lam = sinh(2*rho)/(2*rho) with rho = h1*Th + h2*Ph + h3*Ps.  Because all
commutators are central, products normal-order through the closed exchange
rule for adjacent out-of-order powers (c = [A, B] central):

    B^n A^m = sum_k (-1)^k k! C(m,k) C(n,k) c^k A^(m-k) B^(n-k)

The central factors c^k are series-valued central elements and multiply
through commutatively.  Generator exponents are never truncated; only the
h-degree of coefficients is.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping

from .multiindex import mi_factorial
from .series import SeriesScalar

GENERATOR_NAMES = ("Th", "Ph", "Ps", "Q1", "Q2", "P1", "P2")
TH, PH, PS, Q1, Q2, P1, P2 = range(7)
CENTRAL_GENERATORS = (TH, PH, PS)
EMPTY_MONO: tuple[int, ...] = (0,) * 7

PBWMonomial = tuple[int, int, int, int, int, int, int]
#: Z-basis key: (central index I, q/p index J) for Z^I X^J.
ZMonomial = tuple[tuple[int, int, int], tuple[int, int, int, int]]


class InvalidParamsError(ValueError):
    """Rejected deformation parameters (alpha = 0, negative truncation...)."""


class ParamsMismatchError(ValueError):
    """Two elements with different deformation parameters were combined."""


@dataclass(frozen=True)
class DeformParams:
    """Deformation parameters alpha != 0, beta, gamma and truncation order."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    trunc: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        if not self.alpha:
            raise InvalidParamsError("alpha must be nonzero")
        if self.trunc < 0:
            raise InvalidParamsError("truncation order must be >= 0")


class AlgebraElement:
    """Finite sum of ordered monomials with series coefficients."""

    __slots__ = ("params", "terms")

    def __init__(self, params: DeformParams,
                 terms: Mapping[PBWMonomial, SeriesScalar]):
        clean: dict[PBWMonomial, SeriesScalar] = {}
        for m, s in terms.items():
            if s.terms:
                clean[tuple(m)] = s
        self.params = params
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, params: DeformParams) -> "AlgebraElement":
        return cls(params, {})

    @classmethod
    def unit(cls, params: DeformParams) -> "AlgebraElement":
        return cls(params, {EMPTY_MONO: SeriesScalar.one(params.trunc)})

    @classmethod
    def monomial(cls, params: DeformParams, mono: PBWMonomial,
                 coeff=1) -> "AlgebraElement":
        if isinstance(coeff, SeriesScalar):
            s = coeff
        else:
            s = SeriesScalar.from_rational(coeff, params.trunc)
        return cls(params, {tuple(mono): s})

    # -- structure ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, mono: PBWMonomial) -> SeriesScalar:
        return self.terms.get(tuple(mono), SeriesScalar.zero(self.params.trunc))

    def is_central(self) -> bool:
        return all(m[Q1] == m[Q2] == m[P1] == m[P2] == 0 for m in self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return self.params == other.params and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {
                EMPTY_MONO: SeriesScalar.from_rational(other, self.params.trunc)}
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        return f"AlgebraElement({self.to_text()!r})"

    def _check(self, other: "AlgebraElement") -> None:
        if self.params != other.params:
            raise ParamsMismatchError("elements live over different parameters")

    # -- linear operations -------------------------------------------------

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if isinstance(other, (int, Fraction)):
            other = AlgebraElement.unit(self.params) * other
        self._check(other)
        out = dict(self.terms)
        for m, s in other.terms.items():
            cur = out.get(m)
            v = s if cur is None else cur + s
            if v.terms:
                out[m] = v
            else:
                out.pop(m, None)
        return AlgebraElement(self.params, out)

    __radd__ = __add__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.params,
                              {m: -s for m, s in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        if isinstance(other, (int, Fraction)):
            other = AlgebraElement.unit(self.params) * other
        return self + (-other)

    def scale(self, factor) -> "AlgebraElement":
        """Multiply every coefficient by a rational or series factor."""
        out = {}
        for m, s in self.terms.items():
            v = s * factor
            if v.terms:
                out[m] = v
        return AlgebraElement(self.params, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, SeriesScalar)):
            return self.scale(other)
        return normal_order_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, SeriesScalar)):
            return self.scale(other)
        return normal_order_mul(other, self)

    def __pow__(self, n: int) -> "AlgebraElement":
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = AlgebraElement.unit(self.params)
        for _ in range(n):
            out = normal_order_mul(out, self)
        return out

    def limit(self, zeroed: Iterable[int]) -> "AlgebraElement":
        """Set the listed deformation parameters (1-based) to zero."""
        zeroed = set(zeroed)
        out = {}
        for m, s in self.terms.items():
            v = s.limit(zeroed)
            if v.terms:
                out[m] = v
        return AlgebraElement(self.params, out)

    # -- presentation ------------------------------------------------------

    def to_text(self) -> str:
        from .render import element_to_text
        return element_to_text(self)

    def to_json(self) -> dict:
        from .render import element_to_json
        return element_to_json(self)

    __str__ = to_text


def mono_factors(mono: PBWMonomial) -> list[str]:
    out = []
    for idx, e in enumerate(mono):
        if e == 1:
            out.append(GENERATOR_NAMES[idx])
        elif e > 1:
            out.append(f"{GENERATOR_NAMES[idx]}^{e}")
    return out


# ---------------------------------------------------------------------------
# The per-parameter engine: commutator table, central series and the
# normal-ordering caches.  Engines are built once per DeformParams and only
# ever read afterwards, so sharing them across threads is safe.
# ---------------------------------------------------------------------------

_WordBlock = tuple[int, int]            # (generator index, exponent)


class _Engine:
    def __init__(self, params: DeformParams):
        self.params = params
        D = params.trunc
        self.one_series = SeriesScalar.one(D)
        self._word_cache: dict[tuple[_WordBlock, ...], dict] = {}
        self._mono_cache: dict[tuple[PBWMonomial, PBWMonomial], dict] = {}
        self._mono_flat_cache: dict[tuple[PBWMonomial, PBWMonomial], tuple] = {}
        self._mono_z_cache: dict[PBWMonomial, dict] = {}

        self.rho = self._build_rho()
        self.lam = self._build_lambda()
        self.lam_inv = central_inverse(self.lam)
        self._lam_pows: dict[int, AlgebraElement] = {
            0: AlgebraElement.unit(params), 1: self.lam, -1: self.lam_inv}
        self._exp_rho: dict[Fraction, AlgebraElement] = {}

        # [A, B] for the straightening rule, keyed by generator pair A < B.
        alpha, beta, gamma = params.alpha, params.beta, params.gamma
        th = AlgebraElement.monomial(params, _unit_mono(TH))
        ph = AlgebraElement.monomial(params, _unit_mono(PH))
        ps = AlgebraElement.monomial(params, _unit_mono(PS))
        table: dict[tuple[int, int], AlgebraElement | None] = {
            (Q1, P1): _central_mul(self.lam, th).scale(1 / alpha),
            (Q2, P2): _central_mul(self.lam, th).scale(1 / alpha),
            (Q1, Q2): _central_mul(self.lam, ph).scale(beta / alpha ** 2),
            (P1, P2): _central_mul(self.lam, ps).scale(gamma / alpha ** 2),
            (Q1, P2): None,
            (Q2, P1): None,
        }
        self._comms = {k: (v if v else None) for k, v in table.items()}
        self._comm_pows: dict[tuple[int, int, int], AlgebraElement] = {}

    def _build_rho(self) -> AlgebraElement:
        D = self.params.trunc
        return AlgebraElement(self.params, {
            _unit_mono(TH): SeriesScalar.hbar(1, D),
            _unit_mono(PH): SeriesScalar.hbar(2, D),
            _unit_mono(PS): SeriesScalar.hbar(3, D),
        })

    def _build_lambda(self) -> AlgebraElement:
        # lam = sum_n (2 rho)^(2n) / (2n+1)!; rho carries h-degree 1, so the
        # sum stops once 2n exceeds the truncation order.
        D = self.params.trunc
        out = AlgebraElement.unit(self.params)
        rho2 = _central_mul(self.rho, self.rho)
        power = AlgebraElement.unit(self.params)
        n = 1
        while 2 * n <= D:
            power = _central_mul(power, rho2)
            out = out + power.scale(Fraction(4 ** n, factorial(2 * n + 1)))
            n += 1
        return out

    def lam_pow(self, k: int) -> AlgebraElement:
        cached = self._lam_pows.get(k)
        if cached is None:
            base = self.lam if k > 0 else self.lam_inv
            cached = _central_mul(self.lam_pow(k - (1 if k > 0 else -1)), base)
            self._lam_pows[k] = cached
        return cached

    def exp_rho(self, c: Fraction) -> AlgebraElement:
        c = Fraction(c)
        cached = self._exp_rho.get(c)
        if cached is None:
            out = AlgebraElement.unit(self.params)
            power = AlgebraElement.unit(self.params)
            for n in range(1, self.params.trunc + 1):
                power = _central_mul(power, self.rho)
                out = out + power.scale(c ** n / factorial(n))
            cached = self._exp_rho[c] = out
        return cached

    def comm_pow(self, a: int, b: int, k: int) -> AlgebraElement:
        key = (a, b, k)
        cached = self._comm_pows.get(key)
        if cached is None:
            if k == 0:
                cached = AlgebraElement.unit(self.params)
            else:
                cached = _central_mul(self.comm_pow(a, b, k - 1),
                                      self._comms[(a, b)])
            self._comm_pows[key] = cached
        return cached

    # -- normal ordering ---------------------------------------------------

    def mono_mul(self, ma: PBWMonomial, mb: PBWMonomial) -> dict:
        """Product of two ordered monomials as a term map."""
        key = (ma, mb)
        cached = self._mono_cache.get(key)
        if cached is not None:
            return cached
        central = (ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2])
        word = _canon_word(
            [(g, ma[g]) for g in (Q1, Q2, P1, P2) if ma[g]]
            + [(g, mb[g]) for g in (Q1, Q2, P1, P2) if mb[g]])
        straight = self._straighten(word)
        if central == (0, 0, 0):
            out = straight
        else:
            out = {}
            for m, s in straight.items():
                shifted = (m[0] + central[0], m[1] + central[1],
                           m[2] + central[2]) + m[3:]
                out[shifted] = s
        self._mono_cache[key] = out
        return out

    def _straighten(self, word: tuple[_WordBlock, ...]) -> dict:
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        pos = next((t for t in range(len(word) - 1)
                    if word[t][0] > word[t + 1][0]), None)
        if pos is None:
            mono = list(EMPTY_MONO)
            for g, e in word:
                mono[g] = e
            out = {tuple(mono): self.one_series}
        else:
            (b, n), (a, m) = word[pos], word[pos + 1]
            c = self._comms[(a, b)]
            swapped = _canon_word(
                list(word[:pos]) + [(a, m), (b, n)] + list(word[pos + 2:]))
            if c is None:
                out = self._straighten(swapped)
            else:
                out = {}
                for k in range(min(m, n) + 1):
                    coeff = Fraction((-1) ** k * factorial(k)
                                     * comb(m, k) * comb(n, k))
                    rest = _canon_word(
                        list(word[:pos]) + [(a, m - k), (b, n - k)]
                        + list(word[pos + 2:]))
                    sub = self._straighten(rest)
                    ck = self.comm_pow(a, b, k)
                    for mc, sc in ck.terms.items():
                        for ms, ss in sub.items():
                            mono = (mc[0] + ms[0], mc[1] + ms[1],
                                    mc[2] + ms[2]) + ms[3:]
                            v = sc * ss * coeff
                            cur = out.get(mono)
                            v = v if cur is None else cur + v
                            if v.terms:
                                out[mono] = v
                            else:
                                out.pop(mono, None)
        self._word_cache[word] = out
        return out

    def mono_mul_flat(self, ma: PBWMonomial, mb: PBWMonomial) -> tuple:
        """mono_mul flattened into (monomial, h exponent, rational) triples."""
        key = (ma, mb)
        cached = self._mono_flat_cache.get(key)
        if cached is None:
            flat = []
            for m, s in self.mono_mul(ma, mb).items():
                for h, c in s.terms.items():
                    flat.append((m, h, c))
            cached = self._mono_flat_cache[key] = tuple(flat)
        return cached

    def mono_to_z(self, mono: PBWMonomial) -> dict:
        """Z-basis expansion of a single ordered monomial."""
        cached = self._mono_z_cache.get(mono)
        if cached is None:
            elt = AlgebraElement.monomial(self.params, mono)
            cached = self._mono_z_cache[mono] = to_z_basis(elt)
        return cached


def _unit_mono(idx: int) -> PBWMonomial:
    return tuple(1 if k == idx else 0 for k in range(7))


def _canon_word(blocks: list[_WordBlock]) -> tuple[_WordBlock, ...]:
    out: list[_WordBlock] = []
    for g, e in blocks:
        if not e:
            continue
        if out and out[-1][0] == g:
            out[-1] = (g, out[-1][1] + e)
        else:
            out.append((g, e))
    return tuple(out)


def _central_mul(c: AlgebraElement, x: AlgebraElement) -> AlgebraElement:
    """Product where the left factor is central (no straightening needed)."""
    out: dict[PBWMonomial, SeriesScalar] = {}
    for mc, sc in c.terms.items():
        for mx, sx in x.terms.items():
            mono = (mc[0] + mx[0], mc[1] + mx[1], mc[2] + mx[2],
                    mc[3] + mx[3], mc[4] + mx[4], mc[5] + mx[5], mc[6] + mx[6])
            v = sc * sx
            cur = out.get(mono)
            v = v if cur is None else cur + v
            if v.terms:
                out[mono] = v
            else:
                out.pop(mono, None)
    return AlgebraElement(c.params, out)


def central_inverse(x: AlgebraElement) -> AlgebraElement:
    """Inverse of a central element whose h-degree-0 part is a nonzero scalar.

    Works by geometric series: 1 - x/u has positive h-degree in every term,
    hence is nilpotent at any truncation.
    """
    if not x.is_central():
        raise ValueError("only central elements can be inverted")
    u = x.coefficient(EMPTY_MONO).constant()
    if not u:
        raise ValueError("non-invertible element: zero scalar part")
    for m, s in x.terms.items():
        if m != EMPTY_MONO and s.constant():
            raise ValueError("non-invertible element: h-free non-scalar part")
    one = AlgebraElement.unit(x.params)
    g = one - x.scale(1 / u)
    acc = one
    for _ in range(x.params.trunc):
        acc = one + _central_mul(g, acc)
    return acc.scale(1 / u)


_engines: dict[DeformParams, _Engine] = {}


def _engine(params: DeformParams) -> _Engine:
    eng = _engines.get(params)
    if eng is None:
        eng = _engines[params] = _Engine(params)
    return eng


# ---------------------------------------------------------------------------
# Public operations.
# ---------------------------------------------------------------------------

_NAME_TO_INDEX = {name: i for i, name in enumerate(GENERATOR_NAMES)}


def make_generator(name, params: DeformParams) -> AlgebraElement:
    """One of Th, Ph, Ps, Q1, Q2, P1, P2 as an element (by name or index)."""
    if isinstance(name, str):
        if name not in _NAME_TO_INDEX:
            raise ValueError(f"unknown generator {name!r}")
        idx = _NAME_TO_INDEX[name]
    else:
        idx = int(name)
        if not 0 <= idx < 7:
            raise ValueError(f"generator index out of range: {idx}")
    return AlgebraElement.monomial(params, _unit_mono(idx))


def make_rho(params: DeformParams) -> AlgebraElement:
    """rho = h1*Th + h2*Ph + h3*Ps."""
    return _engine(params).rho


def make_lambda(params: DeformParams) -> AlgebraElement:
    """lam = sinh(2*rho)/(2*rho), an invertible central series."""
    return _engine(params).lam


def make_exp_rho(c, params: DeformParams) -> AlgebraElement:
    """exp(c*rho) truncated at the configured order."""
    return _engine(params).exp_rho(Fraction(c))


def normal_order_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Product of two elements, re-expressed in the ordered-monomial basis."""
    x._check(y)
    eng = _engine(x.params)
    out: dict[PBWMonomial, SeriesScalar] = {}
    for ma, sa in x.terms.items():
        for mb, sb in y.terms.items():
            scale = sa * sb
            if not scale.terms:
                continue
            for m, s in eng.mono_mul(ma, mb).items():
                v = s * scale
                cur = out.get(m)
                v = v if cur is None else cur + v
                if v.terms:
                    out[m] = v
                else:
                    out.pop(m, None)
    return AlgebraElement(x.params, out)


def commutator(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return normal_order_mul(x, y) - normal_order_mul(y, x)


def classical_limit(x: AlgebraElement) -> AlgebraElement:
    """Set all three deformation parameters to zero."""
    return x.limit((1, 2, 3))


def phi_automorphism(x: AlgebraElement) -> AlgebraElement:
    """The flatness automorphism: each generator is divided by lam.

    A monomial of total generator degree g picks up the central factor
    lam^(-g); the map is extended linearly.
    """
    eng = _engine(x.params)
    out = AlgebraElement.zero(x.params)
    for m, s in x.terms.items():
        g = sum(m)
        out = out + _central_mul(
            eng.lam_pow(-g), AlgebraElement.monomial(x.params, m, s))
    return out


def from_z_basis(zmap: Mapping[ZMonomial, SeriesScalar],
                 params: DeformParams) -> AlgebraElement:
    """Assemble an element from divided-power coordinates.

    Z^I X^J = lam^|I| Th^i1 Ph^i2 Ps^i3 Q1^j1 Q2^j2 P1^j3 P2^j4 / (I! J!).
    """
    eng = _engine(params)
    out = AlgebraElement.zero(params)
    for (ci, qp), s in zmap.items():
        if isinstance(s, SeriesScalar) and not s.terms:
            continue
        mono = tuple(ci) + tuple(qp)
        scale = Fraction(1, mi_factorial(ci) * mi_factorial(qp))
        piece = AlgebraElement.monomial(params, mono, s * scale)
        out = out + _central_mul(eng.lam_pow(sum(ci)), piece)
    return out


def to_z_basis(x: AlgebraElement) -> dict[ZMonomial, SeriesScalar]:
    """Divided-power coordinates of an element.

    Successive approximation: reading off Z-coefficients as if lam were 1 is
    exact up to terms of two more h-degrees, so repeating on the remainder
    terminates within trunc/2 + 1 rounds.
    """
    params = x.params
    out: dict[ZMonomial, SeriesScalar] = {}
    rem = x
    for _ in range(params.trunc // 2 + 2):
        if not rem.terms:
            break
        inc: dict[ZMonomial, SeriesScalar] = {}
        for m, s in rem.terms.items():
            ci, qp = m[:3], m[3:]
            inc[(ci, qp)] = s * (mi_factorial(ci) * mi_factorial(qp))
        for k, s in inc.items():
            cur = out.get(k)
            v = s if cur is None else cur + s
            if v.terms:
                out[k] = v
            else:
                out.pop(k, None)
        rem = rem - from_z_basis(inc, params)
    if rem.terms:
        raise RuntimeError("z-basis conversion failed to terminate")
    return out
