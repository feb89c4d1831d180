"""Deterministic text and JSON rendering for every carrier type.

Terms are ordered lexicographically by exponent tuples, then by h-monomials,
so identical values always serialize to identical bytes.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import GENERATOR_NAMES, AlgebraElement, mono_factors
from .series import _h_factors, format_rational, render_terms


def _render_flat(pairs) -> str:
    """pairs: iterable of (sort key, factor list, series)."""
    items = []
    for key, factors, series in pairs:
        for h in sorted(series.terms):
            items.append(((key, h), series.terms[h], _h_factors(h) + factors))
    items.sort(key=lambda t: t[0])
    if not items:
        return "0"
    return render_terms([(coeff, factors) for _, coeff, factors in items])


def element_to_text(x: AlgebraElement) -> str:
    return _render_flat(
        (m, mono_factors(m), s) for m, s in x.terms.items())


def element_to_json(x: AlgebraElement) -> dict:
    return {"terms": [{"exp": list(m), "coeff": x.terms[m].to_json()}
                      for m in sorted(x.terms)]}


def element_from_json(data: dict, params) -> AlgebraElement:
    from .series import SeriesScalar
    terms = {}
    for item in data["terms"]:
        mono = tuple(item["exp"])
        coeff = SeriesScalar.from_json(item["coeff"], params.trunc)
        terms[mono] = terms.get(mono, SeriesScalar.zero(params.trunc)) + coeff
    return AlgebraElement(params, terms)


def _bracket(name: str, idx) -> str:
    return f"{name}[{','.join(str(i) for i in idx)}]"


def dual_to_text(u) -> str:
    def factors(key):
        w, y = key
        out = []
        if any(w):
            out.append(_bracket("W", w))
        if any(y):
            out.append(_bracket("Y", y))
        return out
    return _render_flat((k, factors(k), s) for k, s in u.terms.items())


def dual_to_json(u) -> dict:
    return {"terms": [{"w": list(k[0]), "y": list(k[1]),
                       "coeff": u.terms[k].to_json()}
                      for k in sorted(u.terms)]}


def dual_from_json(data: dict, trunc: int):
    from .dual import DualElement
    from .series import SeriesScalar
    out = DualElement.zero(trunc)
    for item in data["terms"]:
        coeff = SeriesScalar.from_json(item["coeff"], trunc)
        out = out + DualElement.monomial(tuple(item["w"]), tuple(item["y"]),
                                         trunc, coeff)
    return out


def zmap_to_text(zmap) -> str:
    def factors(key):
        ci, qp = key
        out = []
        if any(ci):
            out.append(_bracket("Z", ci))
        if any(qp):
            out.append(_bracket("X", qp))
        return out
    return _render_flat((k, factors(k), s) for k, s in zmap.items())


def zmap_to_json(zmap) -> dict:
    return {"terms": [{"z": list(k[0]), "x": list(k[1]),
                       "coeff": zmap[k].to_json()}
                      for k in sorted(zmap)]}


def tensor_to_text(t) -> str:
    def factors(legs):
        return [" (x) ".join("*".join(mono_factors(m)) or "1" for m in legs)]
    return _render_flat((legs, factors(legs), s)
                        for legs, s in t.by_legs().items())


def tensor_to_json(t) -> dict:
    names = ("left", "right") if t.arity == 2 else ("left", "middle", "right")
    by_legs = t.by_legs()
    out = []
    for legs in sorted(by_legs):
        item = {name: list(m) for name, m in zip(names, legs)}
        item["coeff"] = by_legs[legs].to_json()
        out.append(item)
    return {"terms": out}


def wedge_to_json(w) -> list:
    return [{"i": i, "j": j, "c": format_rational(c)}
            for (i, j), c in sorted(w.terms.items())]


def wedge_to_text(w) -> str:
    if not w.terms:
        return "0"
    parts = []
    for (i, j) in sorted(w.terms):
        parts.append((Fraction(w.terms[(i, j)]),
                      [f"{GENERATOR_NAMES[i]}/\\{GENERATOR_NAMES[j]}"]))
    return render_terms(parts)


def group_to_text(g) -> str:
    vals = [g.theta, g.phi, g.psi, g.q[0], g.q[1], g.p[0], g.p[1]]
    return ",".join(format_rational(v) for v in vals)


def group_to_json(g) -> dict:
    return {"theta": format_rational(g.theta),
            "phi": format_rational(g.phi),
            "psi": format_rational(g.psi),
            "q": [format_rational(v) for v in g.q],
            "p": [format_rational(v) for v in g.p]}
