"""Projective varieties presented as k[X]/a with a homogeneous ideal a."""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

from .errors import NotHomogeneousError, RingMismatchError
from .groebner import GroebnerBasis, normal_form
from .ideals import groebner, saturate
from .rings import Poly, PolyRing

__all__ = ["Variety", "Representation", "format_ideal"]


def format_ideal(gens: Sequence[Poly]) -> str:
    """Canonical text form ``ideal(g1, g2, ...)``; ``ideal()`` for the zero ideal."""
    return "ideal(" + ", ".join(str(g) for g in gens) + ")"


class Variety:
    """Coordinate ring R = ring / ideal, with the reduced basis computed lazily.

    ``assume_domain`` records that the ideal is prime; nothing here checks it.
    """

    def __init__(self, ring: PolyRing, ideal: Sequence[Poly] = (), assume_domain: bool = True):
        ideal = tuple(g for g in ideal if g)
        for g in ideal:
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} is not in {ring}")
            if not g.is_homogeneous(0):
                raise NotHomogeneousError(f"defining equation {g} is not homogeneous")
        self.ring = ring
        self.ideal = ideal
        self.assume_domain = assume_domain

    def __repr__(self):
        if not self.ideal:
            return f"Variety({self.ring})"
        return f"Variety({self.ring} / {format_ideal(self.ideal)})"

    @cached_property
    def gb(self) -> GroebnerBasis:
        return groebner(self.ideal, self.ring)

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def reduce(self, f: Poly) -> Poly:
        if not self.ideal:
            return f
        return normal_form(f, self.gb)

    def contains(self, f: Poly) -> bool:
        return not self.reduce(f)

    def same_ideal(self, gens: Sequence[Poly]) -> bool:
        return groebner(gens, self.ring).polys == self.gb.polys

    def irrelevant(self) -> list:
        return list(self.ring.gens)

    def is_empty(self) -> bool:
        """True when the projective zero set is empty."""
        return groebner(saturate(self.ideal, self.irrelevant(), self.ring), self.ring).is_unit() if self.ideal else False

    def linear_equations(self) -> list:
        """Reduced basis elements of degree one; they span the degree-one piece."""
        return [g for g in self.gb if g.degree(0) == 1]

    def nondegeneracy_dim(self) -> int:
        """Dimension of the degree-one piece of the ideal (0 when nondegenerate)."""
        return len(self.linear_equations())

    def is_nondegenerate(self) -> bool:
        return self.nondegeneracy_dim() == 0

    @cached_property
    def minimal(self) -> Representation:
        return Representation.of(self)


class Representation:
    """A linear re-embedding dropping the variables solved by linear equations.

    ``to_small`` maps each original variable to a polynomial in the smaller
    ring; ``to_large`` maps each variable of the smaller ring back to the
    original variable of the same name.
    """

    def __init__(self, original: Variety, variety: Variety, to_small: list, to_large: list):
        self.original = original
        self.variety = variety
        self.to_small = to_small
        self.to_large = to_large

    @property
    def is_trivial(self) -> bool:
        return self.variety is self.original

    @classmethod
    def of(cls, V: Variety) -> Representation:
        lin = V.linear_equations()
        ring = V.ring
        if not lin:
            return cls(V, V, list(ring.gens), list(ring.gens))
        solved = {}
        for g in lin:
            e = ring.decode(g.lm)
            solved[e.index(1)] = g
        keep = [i for i in range(ring.nvars) if i not in solved]
        small = PolyRing(ring.field, [ring.names[i] for i in keep])
        images = []
        for i in range(ring.nvars):
            if i in solved:
                # x_i = x_i - g, which only involves kept variables
                expr = ring.gen(i) - solved[i]
                images.append(expr.to_ring(small, _index_map(ring, small)))
            else:
                images.append(small.gen(ring.names[i]))
        rest = [g.substitute(images) for g in V.gb if g.degree(0) > 1]
        W = Variety(small, [g for g in rest if g], V.assume_domain)
        back = [ring.gen(ring.names[i]) for i in keep]
        return cls(V, W, images, back)

    def push(self, f: Poly) -> Poly:
        """An original-ring polynomial rewritten in the smaller ring."""
        if self.is_trivial:
            return f
        return f.substitute(self.to_small)

    def pull(self, f: Poly) -> Poly:
        if self.is_trivial:
            return f
        return f.substitute(self.to_large)


def _index_map(big: PolyRing, small: PolyRing) -> list:
    out = []
    for name in big.names:
        try:
            out.append(small.index(name))
        except KeyError:
            out.append(0)  # only reached for variables absent from the polynomial
    return out
