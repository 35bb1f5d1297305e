"""Ideal operations built on the Groebner engine.

Elimination, intersection, colon ideals, saturation, and syzygies of
vectors over a quotient ring.  Rings are rebuilt with the order each
operation needs and results are moved back into the caller's ring.
"""

from __future__ import annotations

from typing import Sequence

from .errors import ZeroPolynomialError
from .groebner import GroebnerBasis, GroebnerEngine, buchberger, normal_form
from .rings import MonomialOrder, Poly, PolyRing

__all__ = [
    "groebner",
    "ideal_equal",
    "ideal_contains",
    "eliminate",
    "intersect",
    "ideal_quotient",
    "quotient_by_ideal",
    "saturate",
    "saturate_element",
    "syzygies",
    "mingens",
    "is_unit_ideal",
]


def _nonzero(gens: Sequence[Poly]) -> list:
    return [g for g in gens if g]


def groebner(gens: Sequence[Poly], ring: PolyRing) -> GroebnerBasis:
    gens = _nonzero(gens)
    if not gens:
        return GroebnerBasis(ring, ())
    return buchberger(gens, ring)


def ideal_contains(gens: Sequence[Poly], f: Poly, ring: PolyRing | None = None) -> bool:
    ring = ring or f.ring
    return not normal_form(f, groebner(gens, ring))


def ideal_equal(I: Sequence[Poly], J: Sequence[Poly], ring: PolyRing) -> bool:
    return groebner(I, ring).polys == groebner(J, ring).polys


def is_unit_ideal(gens: Sequence[Poly], ring: PolyRing) -> bool:
    return groebner(gens, ring).is_unit()


def _homogeneous_weights(gens: Sequence[Poly], ring: PolyRing):
    for w in ring.grading:
        if all(min(w) >= 0 and len({sum(a * b for a, b in zip(w, ring.decode(m))) for m in g.terms}) == 1 for g in gens):
            return list(w)
    return None


def eliminate(gens: Sequence[Poly], drop_vars: Sequence, ring: PolyRing | None = None) -> list:
    """Generators of the ideal intersected with the subring avoiding ``drop_vars``.

    The returned polynomials live in the input ring.  Homogeneous input is
    eliminated with a degree-compatible elimination order; otherwise a
    product order with the dropped block first is used.
    """
    gens = _nonzero(gens)
    if not gens:
        return []
    ring = ring or gens[0].ring
    drop = {ring.index(v) if isinstance(v, str) else v for v in drop_vars}
    n = ring.nvars
    w = _homogeneous_weights(gens, ring)
    if w is not None:
        order = MonomialOrder.elimination(n, sorted(drop), w)
        er = PolyRing(ring.field, ring.names, order, [w])
    else:
        keep = [i for i in range(n) if i not in drop]
        perm = sorted(drop) + keep
        names = [ring.names[i] for i in perm]
        order = MonomialOrder.block([MonomialOrder.grevlex(len(drop)), MonomialOrder.grevlex(len(keep))])
        er = PolyRing(ring.field, names, order)
    G = buchberger([g.to_ring(er) for g in gens], er)
    out = []
    for g in G:
        if not (g.variables() & {er.index(ring.names[i]) for i in drop}):
            out.append(g.to_ring(ring))
    return out


def intersect(I: Sequence[Poly], J: Sequence[Poly], ring: PolyRing) -> list:
    """Generators of I ∩ J (via t·I + (1-t)·J, eliminating t)."""
    I, J = _nonzero(I), _nonzero(J)
    if not I or not J:
        return []
    w = list(ring.grading[0])
    tname = "_t"
    names = [tname] + list(ring.names)
    homog = all(g.is_homogeneous(0) for g in I + J)
    if homog:
        wt = [0] + w
        order = MonomialOrder.elimination(len(names), [0], wt)
        er = PolyRing(ring.field, names, order, [wt])
    else:
        order = MonomialOrder.block([MonomialOrder.lex(1), MonomialOrder.grevlex(ring.nvars)])
        er = PolyRing(ring.field, names, order)
    t = er.gen(0)
    gens = [t * g.to_ring(er) for g in I] + [(1 - t) * h.to_ring(er) for h in J]
    G = buchberger(gens, er)
    return [_drop_first(g, ring) for g in G if 0 not in g.variables()]


def _drop_first(g: Poly, ring: PolyRing) -> Poly:
    src = g.ring
    d = {}
    for m, c in g.terms.items():
        e = src.decode(m)
        d[ring.encode(e[1:])] = c
    return Poly(ring, d)


def ideal_quotient(I: Sequence[Poly], f: Poly, ring: PolyRing | None = None) -> list:
    """Generators of (I : f) = (I ∩ (f)) / f."""
    if not f:
        raise ZeroPolynomialError("quotient by the zero polynomial")
    ring = ring or f.ring
    I = _nonzero(I)
    if not I:
        return []
    inter = intersect(I, [f], ring)
    out = [g.exact_div(f) for g in inter]
    return list(groebner(out, ring).polys)


def quotient_by_ideal(I: Sequence[Poly], J: Sequence[Poly], ring: PolyRing) -> list:
    """Generators of (I : J) as the intersection of (I : g) over generators g of J."""
    J = _nonzero(J)
    if not J:
        return [ring.one()]
    result = None
    for g in J:
        q = ideal_quotient(I, g, ring)
        result = q if result is None else intersect(result, q, ring)
    return list(groebner(result, ring).polys)


def saturate_element(I: Sequence[Poly], f: Poly, ring: PolyRing | None = None, method: str = "auto") -> list:
    """Generators of (I : f^∞).

    ``method="iterate"`` repeats the colon until it stabilizes;
    ``method="revlex"`` adjoins u = f as the revlex-smallest variable,
    divides basis elements by the highest power of u and substitutes back.
    ``auto`` uses the revlex trick for homogeneous input.
    """
    if not f:
        raise ZeroPolynomialError("saturation by zero")
    ring = ring or f.ring
    I = _nonzero(I)
    if not I:
        return []
    if f.is_constant():
        return list(groebner(I, ring).polys)
    homog = f.is_homogeneous(0) and all(g.is_homogeneous(0) for g in I)
    if method == "auto":
        method = "revlex" if homog else "iterate"
    if method == "iterate":
        current = groebner(I, ring)
        while True:
            nxt = groebner(ideal_quotient(list(current.polys), f, ring), ring)
            if nxt.polys == current.polys:
                return list(current.polys)
            current = nxt
    if method != "revlex":
        raise ValueError(f"unknown saturation method {method!r}")
    if not homog:
        raise ValueError("revlex saturation needs homogeneous input")
    w = list(ring.grading[0])
    if min(w) <= 0:
        raise ValueError("revlex saturation needs a positive grading")
    uname = "_u"
    names = list(ring.names) + [uname]
    wu = w + [f.degree(0)]
    order = MonomialOrder.grevlex(len(names), wu)
    er = PolyRing(ring.field, names, order, [wu])
    u = er.gen(len(names) - 1)
    is_var = len(f) == 1 and f.lc == 1 and sum(ring.decode(f.lm)) == 1
    if is_var:
        # f is a variable: reorder so it is revlex-last, no extra variable needed
        vi = ring.decode(f.lm).index(1)
        names2 = [nm for k, nm in enumerate(ring.names) if k != vi] + [ring.names[vi]]
        w2 = [w[k] for k in range(ring.nvars) if k != vi] + [w[vi]]
        er2 = PolyRing(ring.field, names2, MonomialOrder.grevlex(len(names2), w2), [w2])
        G = buchberger([g.to_ring(er2) for g in I], er2)
        last = er2.nvars - 1
        out = [_divide_out_var(g, last) for g in G]
        return list(groebner([g.to_ring(ring) for g in out], ring).polys)
    gens = [g.to_ring(er) for g in I] + [u - f.to_ring(er)]
    G = buchberger(gens, er)
    last = er.nvars - 1
    images = list(ring.gens) + [f]
    out = [_divide_out_var(g, last).substitute(images) for g in G]
    return list(groebner(out, ring).polys)


def _divide_out_var(g: Poly, i: int) -> Poly:
    ring = g.ring
    e = min(ring.decode(m)[i] for m in g.terms)
    if not e:
        return g
    shift = e * ring.var_monomial(i)
    return Poly(ring, {m - shift: c for m, c in g.terms.items()})


def saturate(I: Sequence[Poly], J: Sequence[Poly] | Poly, ring: PolyRing | None = None, method: str = "auto") -> list:
    """Generators of (I : J^∞), as the intersection of saturations by the generators of J."""
    if isinstance(J, Poly):
        J = [J]
    J = _nonzero(J)
    if not J:
        raise ZeroPolynomialError("saturation by the zero ideal")
    ring = ring or J[0].ring
    result = None
    for g in J:
        s = saturate_element(I, g, ring, method)
        if s and any(h.is_constant() for h in s):
            s = [ring.one()]
        if result is None:
            result = s
        elif not s:
            result = []
        else:
            if any(h.is_constant() for h in result):
                result = s
            elif any(h.is_constant() for h in s):
                pass
            else:
                result = intersect(result, s, ring)
        if not result:
            break
    return list(groebner(result, ring).polys)


def mingens(gens: Sequence[Poly], ring: PolyRing) -> list:
    """A minimal homogeneous generating set (greedy, by ascending degree)."""
    gens = sorted(_nonzero(gens), key=lambda g: (g.degree(0), g.lm))
    kept: list = []
    for g in gens:
        if kept and ideal_contains(kept, g, ring):
            continue
        kept.append(g)
    return kept


def syzygies(
    vectors: Sequence[Sequence[Poly]],
    ring: PolyRing,
    modulo: Sequence[Poly] = (),
) -> list:
    """Generators of {s : Σ s_j v_j ≡ 0 componentwise modulo ``modulo``}.

    ``vectors`` are the columns; each is a list of the same length r.  The
    computation is a module Groebner basis in position-over-term order with
    one tag variable per column; syzygy entries come back reduced modulo
    ``modulo``.
    """
    vectors = [list(v) for v in vectors]
    if not vectors:
        raise ValueError("syzygies of an empty list")
    r = len(vectors[0])
    if any(len(v) != r for v in vectors):
        raise ValueError("vectors of different lengths")
    k = len(vectors)
    modulo = _nonzero(modulo)
    n = ring.nvars
    base_w = list(ring.grading[0])

    # module weights making every generator homogeneous when possible
    wE, wT = _module_weights(vectors, ring, r, k)
    enames = [f"_E{c}" for c in range(r)]
    tnames = [f"_T{j}" for j in range(k)]
    names = enames + tnames + list(ring.names)
    nm = r + k
    rows = []
    for i in range(nm):
        rows.append([1 if j == i else 0 for j in range(nm)] + [0] * n)
    for row in ring.order.rows:
        rows.append([0] * nm + list(row))
    weights = wE + wT + base_w
    mr = PolyRing(ring.field, names, MonomialOrder(len(names), rows, "pot"), [weights])
    shift = list(range(nm, nm + n))
    E = [mr.gen(c) for c in range(r)]
    T = [mr.gen(r + j) for j in range(k)]

    def lift(f: Poly) -> Poly:
        return f.to_ring(mr, shift)

    gens = []
    for j, v in enumerate(vectors):
        el = T[j]
        for c, entry in enumerate(v):
            if entry:
                el = el + lift(entry) * E[c]
        gens.append(el)
    for a in modulo:
        la = lift(a)
        for c in range(r):
            gens.append(la * E[c])
    eng = GroebnerEngine(mr, gens, module_vars=list(range(nm)))
    eng.run()
    modgb = groebner(modulo, ring) if modulo else None
    out = []
    for g in eng.reduced():
        e_lm = mr.decode(g.lm)
        if any(e_lm[c] for c in range(r)):
            continue
        comps = [dict() for _ in range(k)]
        for m, c in g.terms.items():
            e = mr.decode(m)
            j = next(jj for jj in range(k) if e[r + jj])
            comps[j][ring.encode(e[nm:])] = c
        vec = [Poly(ring, d) for d in comps]
        if modgb is not None:
            vec = [normal_form(x, modgb) for x in vec]
        if any(vec):
            out.append(vec)
    return out


def _module_weights(vectors, ring: PolyRing, r: int, k: int):
    """Nonnegative weights for position/tag variables giving homogeneous generators."""
    wE: list = [None] * r
    wT: list = [None] * k
    entries = {}
    for j, v in enumerate(vectors):
        for c, x in enumerate(v):
            if x:
                if not x.is_homogeneous(0):
                    return [0] * r, [0] * k
                entries[(j, c)] = x.degree(0)
    # bipartite propagation: wE[c] + deg = wT[j]
    for start in range(k):
        if wT[start] is not None:
            continue
        wT[start] = 0
        stack = [("T", start)]
        while stack:
            kind, idx = stack.pop()
            for (j, c), deg in entries.items():
                if kind == "T" and j == idx:
                    val = wT[j] - deg
                    if wE[c] is None:
                        wE[c] = val
                        stack.append(("E", c))
                    elif wE[c] != val:
                        return [0] * r, [0] * k
                elif kind == "E" and c == idx:
                    val = wE[c] + deg
                    if wT[j] is None:
                        wT[j] = val
                        stack.append(("T", j))
                    elif wT[j] != val:
                        return [0] * r, [0] * k
    wE = [0 if x is None else x for x in wE]
    low = min(wE + wT)
    if low < 0:
        wE = [x - low for x in wE]
        wT = [x - low for x in wT]
    return wE, wT
