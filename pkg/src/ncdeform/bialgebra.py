"""The classical layer: the seven-dimensional Lie algebra by structure
constants, the group law of its Lie group, cocommutators extracted from the
deformed coproduct, Lie bialgebra axiom checks, a per-candidate coboundary
verifier and the duality bridge to the dual Poisson structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .algebra import (GENERATOR_NAMES, DeformParams, make_generator)
from .report import VerificationReport

DIM = 7
Vector = dict[int, Fraction]        # sparse coordinates over the basis


class NonPrimitiveResidueError(ValueError):
    """The extracted linear part was not a sum of generator (x) generator."""


# ---------------------------------------------------------------------------
# Lie algebra data.
# ---------------------------------------------------------------------------

@dataclass
class LieData:
    """Antisymmetric structure constants c[i][j] -> k over a named basis."""

    names: tuple[str, ...]
    constants: dict[tuple[int, int], Vector]

    @property
    def dim(self) -> int:
        return len(self.names)

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.constants.get((i, j), {})

    def bracket(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for i, xi in x.items():
            for j, yj in y.items():
                for k, c in self.bracket_basis(i, j).items():
                    v = out.get(k, Fraction(0)) + xi * yj * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def is_antisymmetric(self) -> bool:
        for i in range(self.dim):
            for j in range(self.dim):
                a = self.bracket_basis(i, j)
                b = self.bracket_basis(j, i)
                if {k: -v for k, v in b.items()} != a:
                    return False
        return True

    def first_jacobi_failure(self):
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    acc: Vector = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = self.bracket_basis(a, b)
                        for m, w in inner.items():
                            for n, v in self.bracket_basis(m, c).items():
                                s = acc.get(n, Fraction(0)) + w * v
                                if s:
                                    acc[n] = s
                                else:
                                    acc.pop(n, None)
                    if acc:
                        return (i, j, k, acc)
        return None

    def jacobi_ok(self) -> bool:
        return self.first_jacobi_failure() is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieData):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return all(self.bracket_basis(i, j) == other.bracket_basis(i, j)
                   for i in range(self.dim) for j in range(self.dim))


def nc_lie_data(alpha, beta, gamma) -> LieData:
    """Structure constants of the centrally extended phase-space algebra:
    [Q_i, P_i] = Th/alpha, [Q1, Q2] = beta Ph/alpha^2, [P1, P2] = gamma Ps/alpha^2,
    everything else zero."""
    alpha, beta, gamma = Fraction(alpha), Fraction(beta), Fraction(gamma)
    if not alpha:
        raise ValueError("alpha must be nonzero")
    TH, PH, PS, Q1, Q2, P1, P2 = range(7)
    constants: dict[tuple[int, int], Vector] = {}

    def put(i, j, k, c):
        if c:
            constants[(i, j)] = {k: Fraction(c)}
            constants[(j, i)] = {k: -Fraction(c)}

    put(Q1, P1, TH, 1 / alpha)
    put(Q2, P2, TH, 1 / alpha)
    put(Q1, Q2, PH, beta / alpha ** 2)
    put(P1, P2, PS, gamma / alpha ** 2)
    return LieData(names=GENERATOR_NAMES, constants=constants)


def lie_bracket(x, y, L: LieData) -> Vector:
    """Bracket of two coordinate vectors (sequences or sparse dicts)."""
    def as_vec(v) -> Vector:
        if isinstance(v, Mapping):
            return {int(k): Fraction(c) for k, c in v.items() if c}
        if len(v) != L.dim:
            raise ValueError(f"dimension mismatch: expected {L.dim}")
        return {i: Fraction(c) for i, c in enumerate(v) if c}
    return L.bracket(as_vec(x), as_vec(y))


# ---------------------------------------------------------------------------
# Wedge elements.
# ---------------------------------------------------------------------------

class WedgeElement:
    """Element of Lambda^2 of the Lie algebra; stored with i < j and the
    convention x wedge y = x (x) y - y (x) x."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Fraction] | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        if terms:
            for (i, j), c in terms.items():
                c = Fraction(c)
                if not c or i == j:
                    continue
                if i > j:
                    i, j, c = j, i, -c
                v = clean.get((i, j), Fraction(0)) + c
                if v:
                    clean[(i, j)] = v
                else:
                    clean.pop((i, j), None)
        self.terms = clean

    @classmethod
    def wedge(cls, i: int, j: int, c=1) -> "WedgeElement":
        return cls({(i, j): Fraction(c)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, WedgeElement) and self.terms == other.terms

    __hash__ = None

    def __add__(self, other: "WedgeElement") -> "WedgeElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, Fraction(0)) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return WedgeElement(out)

    def __neg__(self) -> "WedgeElement":
        return WedgeElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "WedgeElement") -> "WedgeElement":
        return self + (-other)

    def scale(self, c) -> "WedgeElement":
        return WedgeElement({k: v * Fraction(c) for k, v in self.terms.items()})

    def pairs(self):
        """Expand into (i, j, coefficient) with both tensor orders."""
        for (i, j), c in self.terms.items():
            yield (i, j, c)
            yield (j, i, -c)

    def to_text(self) -> str:
        from .render import wedge_to_text
        return wedge_to_text(self)

    def to_json(self) -> list:
        from .render import wedge_to_json
        return wedge_to_json(self)

    __str__ = to_text
    __repr__ = to_text


def ad_wedge(x: int, w: WedgeElement, L: LieData) -> WedgeElement:
    """(ad_x (x) 1 + 1 (x) ad_x) acting on a wedge element."""
    out = WedgeElement()
    for (a, b), c in w.terms.items():
        for k, v in L.bracket_basis(x, a).items():
            out = out + WedgeElement.wedge(k, b, c * v)
        for k, v in L.bracket_basis(x, b).items():
            out = out + WedgeElement.wedge(a, k, c * v)
    return out


# ---------------------------------------------------------------------------
# Group law.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    theta: Fraction
    phi: Fraction
    psi: Fraction
    q: tuple[Fraction, Fraction]
    p: tuple[Fraction, Fraction]

    @classmethod
    def make(cls, theta=0, phi=0, psi=0, q=(0, 0), p=(0, 0)) -> "GroupElement":
        return cls(Fraction(theta), Fraction(phi), Fraction(psi),
                   (Fraction(q[0]), Fraction(q[1])),
                   (Fraction(p[0]), Fraction(p[1])))

    @classmethod
    def from_text(cls, text: str) -> "GroupElement":
        parts = [Fraction(part.strip()) for part in text.split(",")]
        if len(parts) != 7:
            raise ValueError("group element needs 7 comma-separated rationals")
        t, f, s, q1, q2, p1, p2 = parts
        return cls.make(t, f, s, (q1, q2), (p1, p2))

    def to_text(self) -> str:
        from .render import group_to_text
        return group_to_text(self)

    def to_json(self) -> dict:
        from .render import group_to_json
        return group_to_json(self)


def _dot(a, b) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def _wedge2(a, b) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def group_identity() -> GroupElement:
    return GroupElement.make()


def group_compose(g: GroupElement, h: GroupElement,
                  params: DeformParams) -> GroupElement:
    """(theta, phi, psi, q, p)(theta', ...) with the central corrections
    alpha/2 (<q,p'> - <p,q'>), beta/2 p^p', gamma/2 q^q'."""
    return GroupElement.make(
        g.theta + h.theta + params.alpha / 2 * (_dot(g.q, h.p) - _dot(g.p, h.q)),
        g.phi + h.phi + params.beta / 2 * _wedge2(g.p, h.p),
        g.psi + h.psi + params.gamma / 2 * _wedge2(g.q, h.q),
        (g.q[0] + h.q[0], g.q[1] + h.q[1]),
        (g.p[0] + h.p[0], g.p[1] + h.p[1]))


def group_inverse(g: GroupElement, params: DeformParams) -> GroupElement:
    """Componentwise negation; the central corrections cancel by antisymmetry."""
    return GroupElement.make(-g.theta, -g.phi, -g.psi,
                             (-g.q[0], -g.q[1]), (-g.p[0], -g.p[1]))


# ---------------------------------------------------------------------------
# Cocommutators from the deformed coproduct.
# ---------------------------------------------------------------------------

def cocommutator_dir(generator, direction: int,
                     params: DeformParams) -> WedgeElement:
    """First-order antisymmetric part of the coproduct in one direction.

    Computes cop(g) - flip(cop(g)) with the other two deformation parameters
    set to zero, extracts the linear coefficient of h_direction and folds the
    surviving generator (x) generator terms into Lambda^2.
    """
    from .hopf import coproduct

    if direction not in (1, 2, 3):
        raise ValueError("direction must be 1, 2 or 3")
    if params.trunc < 1:
        raise ValueError("cocommutator extraction needs truncation >= 1")
    g = (generator if not isinstance(generator, (str, int))
         else make_generator(generator, params))
    t = coproduct(g)
    d = (t - t.flip()).limit(set((1, 2, 3)) - {direction})
    h_linear = tuple(1 if k == direction - 1 else 0 for k in range(3))

    acc: dict[tuple[int, int], Fraction] = {}
    for (m1, m2, h), c in d.terms.items():
        if h == (0, 0, 0):
            raise NonPrimitiveResidueError(
                "non-primitive residue: constant part of the flip difference")
        if h != h_linear:
            continue
        if sum(m1) != 1 or sum(m2) != 1:
            raise NonPrimitiveResidueError(
                f"non-primitive residue: {m1} (x) {m2}")
        i = m1.index(1)
        j = m2.index(1)
        acc[(i, j)] = acc.get((i, j), Fraction(0)) + c
    for (i, j), c in acc.items():
        if acc.get((j, i), Fraction(0)) != -c:
            raise NonPrimitiveResidueError("non-primitive residue: "
                                           "linear part is not antisymmetric")
    return WedgeElement({(i, j): c for (i, j), c in acc.items() if i < j})


def cocommutator_map(direction: int,
                     params: DeformParams) -> dict[str, WedgeElement]:
    return {name: cocommutator_dir(name, direction, params)
            for name in GENERATOR_NAMES}


def combine_cocommutators(weights, params: DeformParams) -> dict[str, WedgeElement]:
    """Rational-weighted combination sum_i w_i * delta_i."""
    out: dict[str, WedgeElement] = {}
    for name in GENERATOR_NAMES:
        acc = WedgeElement()
        for i, w in zip((1, 2, 3), weights):
            if w:
                acc = acc + cocommutator_dir(name, i, params).scale(w)
        out[name] = acc
    return out


def _delta_vec(delta: Mapping[str, WedgeElement], x: Vector) -> WedgeElement:
    out = WedgeElement()
    for i, c in x.items():
        out = out + delta[GENERATOR_NAMES[i]].scale(c)
    return out


def bialgebra_axiom_check(delta: Mapping[str, WedgeElement],
                          L: LieData) -> VerificationReport:
    """1-cocycle condition on all generator pairs plus co-Jacobi of the dual
    bracket induced by delta."""
    report = VerificationReport()
    for i in range(DIM):
        for j in range(i + 1, DIM):
            name = f"[{GENERATOR_NAMES[i]},{GENERATOR_NAMES[j]}]"
            lhs = _delta_vec(delta, L.bracket_basis(i, j))
            rhs = (ad_wedge(i, delta[GENERATOR_NAMES[j]], L)
                   - ad_wedge(j, delta[GENERATOR_NAMES[i]], L))
            ok = lhs == rhs
            report.add("cocycle", name, ok,
                       None if ok else f"delta[x,y] = {lhs.to_text()} but "
                                       f"ad-side = {rhs.to_text()}")
    dual = dual_lie_data_from_delta(delta)
    failure = dual.first_jacobi_failure()
    report.add("co-jacobi", "dual bracket", failure is None,
               None if failure is None else
               f"jacobi fails on triple {failure[:3]}")
    return report


def coboundary_from_r(r: WedgeElement, L: LieData,
                      target: Mapping[str, WedgeElement] | None = None):
    """delta_r(x) = (ad_x (x) 1 + 1 (x) ad_x) r, with a report stating
    whether delta_r is co-Jacobi and whether it equals the supplied target."""
    delta = {name: ad_wedge(i, r, L)
             for i, name in enumerate(GENERATOR_NAMES)}
    report = VerificationReport()
    dual = dual_lie_data_from_delta(delta)
    failure = dual.first_jacobi_failure()
    report.add("co-jacobi", "coboundary candidate", failure is None,
               None if failure is None else
               f"jacobi fails on triple {failure[:3]}")
    if target is not None:
        mismatches = [name for name in GENERATOR_NAMES
                      if delta[name] != target[name]]
        report.add("equals-target", "coboundary candidate", not mismatches,
                   None if not mismatches else
                   f"differs on {', '.join(mismatches)}")
    return delta, report


# ---------------------------------------------------------------------------
# Duality bridge.
# ---------------------------------------------------------------------------

def dual_bracket_from_delta(delta: Mapping[str, WedgeElement],
                            xi: int, eta: int) -> Vector:
    """[chi_xi, chi_eta]* with <chi_a (x) chi_b, delta(e_k)> coefficients.

    xi, eta are 1-based functional indices aligned with the generator order.
    """
    out: Vector = {}
    a, b = xi - 1, eta - 1
    for k, name in enumerate(GENERATOR_NAMES):
        coeff = Fraction(0)
        for (i, j, c) in delta[name].pairs():
            if i == a and j == b:
                coeff += c
        if coeff:
            out[k] = coeff
    return out


def dual_lie_data_from_delta(delta: Mapping[str, WedgeElement]) -> LieData:
    from .dual import CHI_NAMES
    constants: dict[tuple[int, int], Vector] = {}
    for a in range(DIM):
        for b in range(DIM):
            vec = dual_bracket_from_delta(delta, a + 1, b + 1)
            if vec:
                constants[(a, b)] = vec
    return LieData(names=CHI_NAMES, constants=constants)
