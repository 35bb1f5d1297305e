"""Rational maps between projective varieties given by representatives."""

from __future__ import annotations

from typing import Sequence

from .errors import InvalidMapError, RingMismatchError, UnsupportedError
from .ideals import eliminate, groebner, saturate, syzygies
from .rings import MonomialOrder, Poly, PolyRing
from .variety import Variety

__all__ = [
    "RationalMap",
    "rational_map",
    "identity_map",
    "is_same_map",
    "compose",
    "image_variety",
    "ideal_of_image",
    "is_dominant",
    "base_locus",
    "base_locus_via_dual",
    "is_regular",
]


class RationalMap:
    """A representative (f_0, ..., f_m) of a rational map source ⇢ target.

    Forms are stored reduced modulo the source ideal.  Use
    :func:`rational_map` to build a validated instance.
    """

    def __init__(self, source: Variety, target: Variety, forms: Sequence[Poly]):
        self.source = source
        self.target = target
        self.forms = tuple(forms)
        nz = [f for f in self.forms if f]
        self.degree = nz[0].degree(0) if nz else 0

    def __repr__(self):
        return f"RationalMap({self.source.ring} -> {self.target.ring}, [{', '.join(map(str, self.forms))}])"

    def __str__(self):
        return "map(" + ", ".join(str(f) for f in self.forms) + ")"

    @property
    def first_nonzero(self) -> int:
        return next(i for i, f in enumerate(self.forms) if f)


def rational_map(source, target, forms: Sequence[Poly], check: bool = True) -> RationalMap:
    """Validate and build a representative.

    ``source`` and ``target`` may be varieties or bare rings (projective
    spaces).  Raises :class:`InvalidMapError` on inhomogeneous forms, mixed
    degrees, forms all zero on the source, or a wrong number of forms.
    """
    if isinstance(source, PolyRing):
        source = Variety(source)
    if isinstance(target, PolyRing):
        target = Variety(target)
    forms = list(forms)
    if len(forms) != target.nvars:
        raise InvalidMapError(f"expected {target.nvars} forms for the target, got {len(forms)}")
    degs = set()
    for i, f in enumerate(forms):
        if f.ring != source.ring:
            raise RingMismatchError(f"form {i} is not in the source ring")
        if not f.is_homogeneous(0):
            raise InvalidMapError(f"form {i} ({f}) is not homogeneous", i)
        if f:
            degs.add(f.degree(0))
            if len(degs) > 1:
                first = next(k for k, g in enumerate(forms) if g)
                raise InvalidMapError(
                    f"form {i} has degree {f.degree(0)} but form {first} has degree {forms[first].degree(0)}", i
                )
    reduced = [source.reduce(f) for f in forms]
    if not any(reduced):
        raise InvalidMapError("all forms vanish on the source")
    F = RationalMap(source, target, reduced)
    if check and target.ideal:
        for g in target.ideal:
            if source.reduce(g.substitute(reduced)):
                raise InvalidMapError(f"target equation {g} does not vanish on the image")
    return F


def identity_map(V: Variety) -> RationalMap:
    return RationalMap(V, V, [V.reduce(x) for x in V.ring.gens])


def _same_spaces(F: RationalMap, G: RationalMap):
    if F.source.ring != G.source.ring or F.target.ring != G.target.ring:
        raise RingMismatchError("maps have different sources or targets")


def is_same_map(F: RationalMap, G: RationalMap) -> bool:
    """True when every cross minor f_i g_j - f_j g_i vanishes on the source."""
    _same_spaces(F, G)
    if not (any(F.forms) and any(G.forms)):
        return False
    f, g = F.forms, G.forms
    V = F.source
    for i in range(len(f)):
        for j in range(i + 1, len(f)):
            if V.reduce(f[i] * g[j] - f[j] * g[i]):
                return False
    return True


def compose(F: RationalMap, G: RationalMap) -> RationalMap:
    """G ∘ F: substitute the forms of F into those of G."""
    if F.target.ring != G.source.ring:
        raise RingMismatchError("target of the first map is not the source of the second")
    forms = [F.source.reduce(g.substitute(list(F.forms))) for g in G.forms]
    return RationalMap(F.source, G.target, forms)


def _graph_ring(F: RationalMap):
    """k[X, Y] with fresh names, weights X:1 and Y:deg, and the graph ideal."""
    src, tgt = F.source.ring, F.target.ring
    nx, ny = src.nvars, tgt.nvars
    names = [f"_x{i}" for i in range(nx)] + [f"_y{j}" for j in range(ny)]
    w = [1] * nx + [F.degree] * ny
    ring = PolyRing(src.field, names, MonomialOrder.elimination(nx + ny, list(range(nx)), w), [w])
    xs = list(range(nx))
    ys = list(range(nx, nx + ny))
    gens = [g.to_ring(ring, xs) for g in F.source.ideal]
    for j, f in enumerate(F.forms):
        gens.append(ring.gen(nx + j) - f.to_ring(ring, xs))
    return ring, gens, xs, ys


def image_variety(F: RationalMap) -> Variety:
    """Closure of the image, as a subvariety of the target's ambient space."""
    tgt = F.target.ring
    ring, gens, xs, ys = _graph_ring(F)
    elim = eliminate(gens, xs, ring)
    out = []
    for g in elim:
        d = {}
        for m, c in g.terms.items():
            e = ring.decode(m)
            d[tgt.encode([e[k] for k in ys])] = c
        out.append(Poly(tgt, d))
    out = list(groebner(out + list(F.target.ideal), tgt).polys)
    return Variety(tgt, out, F.target.assume_domain)


def ideal_of_image(F: RationalMap) -> list:
    """Kernel of k[Y]/b -> R: image equations reduced modulo the target ideal."""
    img = image_variety(F)
    return [g for g in img.gb if F.target.reduce(g)]


def is_dominant(F: RationalMap) -> bool:
    return not ideal_of_image(F)


def _irrelevant_saturation(gens: Sequence[Poly], V: Variety) -> list:
    ring = V.ring
    sat = saturate(list(gens) + list(V.ideal), list(ring.gens), ring)
    return list(groebner(sat, ring).polys)


def _modulo_source(gens: Sequence[Poly], V: Variety) -> list:
    """Reduced basis of gens + a, omitting elements that lie in a."""
    G = groebner(list(gens) + list(V.ideal), V.ring)
    if G.is_unit():
        return [V.ring.one()]
    return [g for g in G if V.reduce(g)]


def _representative_coordinates(F: RationalMap, k: int | None = None) -> list:
    """Coordinates of all representatives obtained from ((f_k) : I).

    Solves g f_i = q_i f_k modulo a for all i at once; the solutions
    (g, q_0, ..., q_m) form a module whose q entries are the coordinates.
    """
    V = F.source
    if not V.assume_domain:
        raise UnsupportedError("base locus needs a source that is a domain")
    ring = V.ring
    if k is None:
        k = F.first_nonzero
    fk = F.forms[k]
    if not fk:
        raise ValueError(f"form {k} vanishes on the source")
    m1 = len(F.forms)
    zero = ring.zero()
    columns = [list(F.forms)]
    for i in range(m1):
        col = [zero] * m1
        col[i] = -fk
        columns.append(col)
    coords = []
    for s in syzygies(columns, ring, V.ideal):
        coords.extend(q for q in s[1:] if q)
    return coords


def base_locus(F: RationalMap, saturate_output: bool = True, index: int | None = None) -> list:
    """Generators of the base locus ideal, reduced modulo the source ideal.

    ``index`` picks the nonzero form used for the colon ideal (default:
    the first one).  Returns ``[1]`` when the base locus is empty after
    saturation.
    """
    coords = _representative_coordinates(F, index)
    if saturate_output:
        sat = _irrelevant_saturation(coords, F.source)
        if len(sat) == 1 and sat[0].is_constant():
            return [F.source.ring.one()]
        return [g for g in sat if F.source.reduce(g)]
    return _modulo_source(coords, F.source)


def base_locus_via_dual(F: RationalMap, saturate_output: bool = True) -> list:
    """Base locus from the kernel of the transposed syzygy matrix.

    A slower route kept for cross-checking :func:`base_locus`.
    """
    V = F.source
    ring = V.ring
    syz = syzygies([[f] for f in F.forms], ring, V.ideal)
    if not syz:
        # no syzygies: the transpose is zero and its kernel is everything
        entries = [ring.one()]
    else:
        # rows of the syzygy matrix as columns of the transpose
        columns = [[s[i] for s in syz] for i in range(len(F.forms))]
        entries = [x for v in syzygies(columns, ring, V.ideal) for x in v if x]
    if saturate_output:
        sat = _irrelevant_saturation(entries, V)
        if len(sat) == 1 and sat[0].is_constant():
            return [ring.one()]
        return [g for g in sat if V.reduce(g)]
    return _modulo_source(entries, V)


def is_regular(F: RationalMap) -> bool:
    """True when the map is defined everywhere on the source."""
    V = F.source
    # if the forms alone have no common zero there is nothing to compute
    quick = _irrelevant_saturation([f for f in F.forms if f], V)
    if len(quick) == 1 and quick[0].is_constant():
        return True
    bl = base_locus(F, saturate_output=True)
    return len(bl) == 1 and bl[0].is_constant()
