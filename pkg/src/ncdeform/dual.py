"""The dual side: functionals W^K Y^L dual to the divided-power basis
Z^I X^J, the closed-form star product, an engine-backed pairing oracle,
per-direction Poisson brackets and the induced seven-dimensional Lie algebra.

The closed formula for the product of two dual monomials is

    W^I Y^J * W^K Y^L =
        sum_{0<=M<=I, 0<=N<=K}  H^(M+N) W^(I+K-M-N) Y^(J+L)
        * C(I,M) C(K,N) (-2|K-N| - |L|)^|M| (2|I-M| + |J|)^|N|

with the convention 0^0 = 1, which makes the M = N = 0 term reproduce the
commutative divided-power product W^(I+K) Y^(J+L).

The oracle reconstructs the same product from first principles through
<u * v, Z^S X^T> = <u (x) v, cop(Z^S X^T)> with the coproduct evaluated by
the normal-ordering engine and both tensor legs converted back to the
divided-power basis.  It never touches the closed formula.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .algebra import DeformParams, ZMonomial, _engine, from_z_basis
from .bialgebra import LieData
from .hopf import coproduct
from .multiindex import mi_binom, mi_norm, multiindices, submultiindices
from .series import SeriesScalar

DualMonomial = tuple[tuple[int, int, int], tuple[int, int, int, int]]

CHI_NAMES = ("chi1", "chi2", "chi3", "chi4", "chi5", "chi6", "chi7")

_W_UNITS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
_Y_UNITS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
_ZERO_W = (0, 0, 0)
_ZERO_Y = (0, 0, 0, 0)


class NonLinearBracketError(ValueError):
    """A basis bracket failed to be linear in the basis functionals."""


class DualElement:
    """Finite sum of dual monomials W^K Y^L with series coefficients."""

    __slots__ = ("trunc", "terms")

    def __init__(self, trunc: int, terms: Mapping[DualMonomial, SeriesScalar]):
        clean = {}
        for k, s in terms.items():
            if s.terms:
                clean[k] = s
        self.trunc = trunc
        self.terms = clean

    @classmethod
    def zero(cls, trunc: int) -> "DualElement":
        return cls(trunc, {})

    @classmethod
    def unit(cls, trunc: int) -> "DualElement":
        return cls(trunc, {(_ZERO_W, _ZERO_Y): SeriesScalar.one(trunc)})

    @classmethod
    def monomial(cls, w, y, trunc: int, coeff=1) -> "DualElement":
        if not isinstance(coeff, SeriesScalar):
            coeff = SeriesScalar.from_rational(coeff, trunc)
        return cls(trunc, {(tuple(w), tuple(y)): coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, key: DualMonomial) -> SeriesScalar:
        return self.terms.get(key, SeriesScalar.zero(self.trunc))

    def __eq__(self, other) -> bool:
        return (isinstance(other, DualElement) and self.terms == other.terms)

    __hash__ = None

    def __repr__(self) -> str:
        return f"DualElement({self.to_text()!r})"

    def __add__(self, other: "DualElement") -> "DualElement":
        out = dict(self.terms)
        for k, s in other.terms.items():
            cur = out.get(k)
            v = s if cur is None else cur + s
            if v.terms:
                out[k] = v
            else:
                out.pop(k, None)
        return DualElement(self.trunc, out)

    def __neg__(self) -> "DualElement":
        return DualElement(self.trunc, {k: -s for k, s in self.terms.items()})

    def __sub__(self, other: "DualElement") -> "DualElement":
        return self + (-other)

    def scale(self, factor) -> "DualElement":
        out = {}
        for k, s in self.terms.items():
            v = s * factor
            if v.terms:
                out[k] = v
        return DualElement(self.trunc, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, SeriesScalar)):
            return self.scale(other)
        return classical_product(self, other)

    __rmul__ = __mul__

    def hdegree_truncated(self, below: int) -> "DualElement":
        """Keep only coefficient terms of h-degree < below."""
        out = {}
        for k, s in self.terms.items():
            kept = {h: c for h, c in s.terms.items() if sum(h) < below}
            if kept:
                out[k] = SeriesScalar(kept, s.trunc)
        return DualElement(self.trunc, out)

    def to_text(self) -> str:
        from .render import dual_to_text
        return dual_to_text(self)

    def to_json(self) -> dict:
        from .render import dual_to_json
        return dual_to_json(self)

    __str__ = to_text


def chi(i: int, trunc: int) -> DualElement:
    """chi_1..chi_3 = unit W functionals, chi_4..chi_7 = unit Y functionals."""
    if not 1 <= i <= 7:
        raise ValueError("chi index must be in 1..7")
    if i <= 3:
        return DualElement.monomial(_W_UNITS[i - 1], _ZERO_Y, trunc)
    return DualElement.monomial(_ZERO_W, _Y_UNITS[i - 4], trunc)


def classical_product(u: DualElement, v: DualElement) -> DualElement:
    """The commutative constant-term product: indices simply add."""
    out: dict[DualMonomial, SeriesScalar] = {}
    for (wa, ya), sa in u.terms.items():
        for (wb, yb), sb in v.terms.items():
            key = (tuple(a + b for a, b in zip(wa, wb)),
                   tuple(a + b for a, b in zip(ya, yb)))
            s = sa * sb
            cur = out.get(key)
            s = s if cur is None else cur + s
            if s.terms:
                out[key] = s
            else:
                out.pop(key, None)
    return DualElement(u.trunc, out)


# ---------------------------------------------------------------------------
# The closed star product.
# ---------------------------------------------------------------------------

def _star_monos(I, J, K, L, trunc: int) -> dict[DualMonomial, SeriesScalar]:
    out: dict[DualMonomial, SeriesScalar] = {}
    normL = mi_norm(L)
    normJ = mi_norm(J)
    y_key = tuple(a + b for a, b in zip(J, L))
    for M in submultiindices(I):
        bIM = mi_binom(I, M)
        normM = mi_norm(M)
        for N in submultiindices(K):
            h = (M[0] + N[0], M[1] + N[1], M[2] + N[2])
            if h[0] + h[1] + h[2] > trunc:
                continue
            # 0^0 == 1 keeps the undeformed M = N = 0 term intact.
            base1 = -2 * (mi_norm(K) - mi_norm(N)) - normL
            base2 = 2 * (mi_norm(I) - normM) + normJ
            c = bIM * mi_binom(K, N) * base1 ** normM * base2 ** mi_norm(N)
            if not c:
                continue
            w_key = tuple(a + b - m - n for a, b, m, n in zip(I, K, M, N))
            key = (w_key, y_key)
            inc = SeriesScalar.monomial(h, c, trunc)
            cur = out.get(key)
            inc = inc if cur is None else cur + inc
            if inc.terms:
                out[key] = inc
            else:
                out.pop(key, None)
    return out


_star_mono_cache: dict[tuple[DualMonomial, DualMonomial, int], dict] = {}


def star_closed(u: DualElement, v: DualElement) -> DualElement:
    """Bilinear extension of the closed-formula product of dual monomials."""
    trunc = u.trunc
    out: dict[DualMonomial, SeriesScalar] = {}
    for (wa, ya), sa in u.terms.items():
        for (wb, yb), sb in v.terms.items():
            scale = sa * sb
            if not scale.terms:
                continue
            key = ((wa, ya), (wb, yb), trunc)
            table = _star_mono_cache.get(key)
            if table is None:
                table = _star_mono_cache[key] = _star_monos(
                    wa, ya, wb, yb, trunc)
            for k, s in table.items():
                val = s * scale
                cur = out.get(k)
                val = val if cur is None else cur + val
                if val.terms:
                    out[k] = val
                else:
                    out.pop(k, None)
    return DualElement(trunc, out)


def star_commutator(u: DualElement, v: DualElement) -> DualElement:
    return star_closed(u, v) - star_closed(v, u)


# ---------------------------------------------------------------------------
# The engine-backed oracle.
# ---------------------------------------------------------------------------

def pairing(u: DualElement, zmap: Mapping[ZMonomial, SeriesScalar]) -> SeriesScalar:
    """<W^K Y^L, Z^I X^J> = delta_KI delta_LJ, extended bilinearly."""
    out = SeriesScalar.zero(u.trunc)
    for key, s in u.terms.items():
        c = zmap.get(key)
        if c is not None:
            out = out + s * c
    return out


def delta_on_zbasis(S, T, params: DeformParams) -> dict[tuple[ZMonomial, ZMonomial], SeriesScalar]:
    """cop(Z^S X^T) with both tensor legs re-expressed in the Z X basis.

    Computed entirely by the engine: build the element, apply the coproduct,
    convert each leg monomial through the cached Z-basis expansion.
    """
    S, T = tuple(S), tuple(T)
    eng = _engine(params)
    cache = getattr(eng, "_delta_z_cache", None)
    if cache is None:
        cache = eng._delta_z_cache = {}
    cached = cache.get((S, T))
    if cached is not None:
        return cached
    one = SeriesScalar.one(params.trunc)
    elt = from_z_basis({(S, T): one}, params)
    ten = coproduct(elt)
    out: dict[tuple[ZMonomial, ZMonomial], SeriesScalar] = {}
    for (m1, m2, h), c in ten.terms.items():
        z1 = eng.mono_to_z(m1)
        z2 = eng.mono_to_z(m2)
        for k1, c1 in z1.items():
            sc1 = c1.shifted(h, c)
            if not sc1.terms:
                continue
            for k2, c2 in z2.items():
                v = sc1 * c2
                if not v.terms:
                    continue
                key = (k1, k2)
                cur = out.get(key)
                v = v if cur is None else cur + v
                if v.terms:
                    out[key] = v
                else:
                    out.pop(key, None)
    cache[(S, T)] = out
    return out


def star_oracle(a: DualMonomial, b: DualMonomial, params: DeformParams,
                degree_cap: int | None = None) -> DualElement:
    """Star product of two dual monomials reconstructed through the pairing.

    Enumerates targets Z^S X^T with |S| + |T| <= degree_cap; the default cap
    |a| + |b| + trunc is sufficient because every extra unit of Z-degree in
    the coproduct costs at least one h-degree in the pairing.
    """
    a = (tuple(a[0]), tuple(a[1]))
    b = (tuple(b[0]), tuple(b[1]))
    if degree_cap is None:
        degree_cap = (mi_norm(a[0]) + mi_norm(a[1])
                      + mi_norm(b[0]) + mi_norm(b[1]) + params.trunc)
    out: dict[DualMonomial, SeriesScalar] = {}
    for S in multiindices(3, degree_cap):
        for T in multiindices(4, degree_cap - sum(S)):
            table = delta_on_zbasis(S, T, params)
            c = table.get((a, b))
            if c is not None and c.terms:
                out[(S, T)] = c
    return DualElement(params.trunc, out)


def star_oracle_element(u: DualElement, v: DualElement, params: DeformParams,
                        degree_cap: int | None = None) -> DualElement:
    """Bilinear extension of star_oracle to arbitrary dual elements."""
    out = DualElement.zero(u.trunc)
    for ka, sa in u.terms.items():
        for kb, sb in v.terms.items():
            out = out + star_oracle(ka, kb, params, degree_cap).scale(sa * sb)
    return out


def star_oracle_grid(norm_bound: int, params: DeformParams) -> dict:
    """Oracle products for every pair of dual monomials of norm <= norm_bound,
    via one pass over the shared coproduct tables."""
    cap = 2 * norm_bound + params.trunc
    buckets: dict[tuple[DualMonomial, DualMonomial], dict] = {}
    for S in multiindices(3, cap):
        for T in multiindices(4, cap - sum(S)):
            for (k1, k2), c in delta_on_zbasis(S, T, params).items():
                if (mi_norm(k1[0]) + mi_norm(k1[1]) > norm_bound
                        or mi_norm(k2[0]) + mi_norm(k2[1]) > norm_bound):
                    continue
                buckets.setdefault((k1, k2), {})[(S, T)] = c
    trunc = params.trunc
    return {pair: DualElement(trunc, table)
            for pair, table in buckets.items()}


def star_oracle_restricted(a: DualMonomial, b: DualMonomial,
                           params: DeformParams) -> DualElement:
    """Oracle with the provable support restriction T = y_a + y_b and
    |S| <= |w_a| + |w_b|.

    The X legs of cop(Z^S X^T) split T exactly (the binomial expansion of the
    Q/P coproduct powers has no central corrections), and the Z legs carry
    total Z-degree at least |S|; both facts come from the engine-side
    expansion, not from the closed formula, so this stays an independent
    check.  Used by the deep diagnostic where the full enumeration would be
    too slow.
    """
    a = (tuple(a[0]), tuple(a[1]))
    b = (tuple(b[0]), tuple(b[1]))
    T = tuple(x + y for x, y in zip(a[1], b[1]))
    out: dict[DualMonomial, SeriesScalar] = {}
    for S in multiindices(3, mi_norm(a[0]) + mi_norm(b[0])):
        table = delta_on_zbasis(S, T, params)
        c = table.get((a, b))
        if c is not None and c.terms:
            out[(S, T)] = c
    return DualElement(params.trunc, out)


# ---------------------------------------------------------------------------
# Poisson layer.
# ---------------------------------------------------------------------------

def poisson_bracket_dir(u: DualElement, v: DualElement, i: int) -> DualElement:
    """Coefficient of h_i in the star commutator, as an h-free dual element.

    Under this normalization the proportionality constants of the linear
    Poisson structure equal 2 per unit direction.
    """
    if i not in (1, 2, 3):
        raise ValueError("direction must be 1, 2 or 3")
    h = tuple(1 if k == i - 1 else 0 for k in range(3))
    comm = star_commutator(u, v)
    out = {}
    for key, s in comm.terms.items():
        c = s.terms.get(h)
        if c:
            out[key] = SeriesScalar.from_rational(c, u.trunc)
    return DualElement(u.trunc, out)


_CHI_KEYS = tuple((w, _ZERO_Y) for w in _W_UNITS) + tuple(
    (_ZERO_W, y) for y in _Y_UNITS)


def dual_structure_constants(i: int, trunc: int = 1) -> LieData:
    """Structure constants of the direction-i Poisson bracket on chi_1..chi_7.

    Raises NonLinearBracketError if any basis bracket fails to be a linear
    combination of the chi functionals.
    """
    chis = [chi(k, trunc) for k in range(1, 8)]
    constants: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(7):
        for b in range(7):
            br = poisson_bracket_dir(chis[a], chis[b], i)
            vec: dict[int, Fraction] = {}
            for key, s in br.terms.items():
                if key not in _CHI_KEYS:
                    raise NonLinearBracketError(
                        f"non-linear bracket: {CHI_NAMES[a]},{CHI_NAMES[b]} "
                        f"-> {key}")
                vec[_CHI_KEYS.index(key)] = s.constant()
            if vec:
                constants[(a, b)] = vec
    return LieData(names=CHI_NAMES, constants=constants)
