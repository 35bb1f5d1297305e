"""Buchberger's algorithm, normal forms and reduced Groebner bases.

The engine is a resumable state machine.  Pairs are processed by sugar
degree (the normal strategy for homogeneous input) and pruned with the
Gebauer-Moeller criteria.  A run may be capped by a box of degree bounds
under one or more nonnegative gradings; pairs outside the box are kept and
picked up again by a later run with a larger (or no) cap.

In module mode a subset of the variables marks positions (basis vectors of
a free module); only elements whose leading terms share a position are
paired, so products of two position variables never appear.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .errors import RingMismatchError, ZeroPolynomialError
from .rings import Poly, PolyRing

__all__ = ["GroebnerBasis", "GroebnerEngine", "Reducer", "buchberger", "normal_form", "reduced_basis"]

_CACHE_LIMIT = 1 << 21


class Reducer:
    """Monic reducers with a divisibility cache; reduces dict polynomials fully."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.p = ring.field.p
        self._low = ring._low
        self._guard = ring._guard
        self.lms: list = []
        self.lows: list = []
        self.monos: list = []
        self.coeffs: list = []
        self._cache: dict = {}

    def add_reducer(self, monos: Sequence[int], coeffs: Sequence) -> int:
        """Append a monic element given as descending monomials/coefficients."""
        self.lms.append(monos[0])
        self.lows.append(monos[0] & self._low)
        self.monos.append(tuple(monos[1:]))
        self.coeffs.append(tuple(coeffs[1:]))
        return len(self.lms) - 1

    def find_reducer(self, m: int) -> int:
        cache = self._cache
        hit = cache.get(m)
        start = 0
        if hit is not None:
            if hit >= 0:
                return hit
            start = -hit - 1
        guard = self._guard
        mg = (m & self._low) | guard
        lows = self.lows
        for idx in range(start, len(lows)):
            if ((mg - lows[idx]) & guard) == guard:
                if len(cache) > _CACHE_LIMIT:
                    cache.clear()
                cache[m] = idx
                return idx
        if len(cache) > _CACHE_LIMIT:
            cache.clear()
        cache[m] = -len(lows) - 1
        return -1

    def reduce(self, f: dict) -> list:
        """Fully reduce ``f`` (consumed); return remainder terms, descending."""
        p = self.p
        heap = [-m for m in f]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        out = []
        find = self.find_reducer
        lms, monos_l, coeffs_l = self.lms, self.monos, self.coeffs
        while heap:
            m = -pop(heap)
            c = f.pop(m, None)
            if c is None:
                continue
            r = find(m)
            if r < 0:
                out.append((m, c))
                continue
            q = m - lms[r]
            get = f.get
            if p:
                for mm, cc in zip(monos_l[r], coeffs_l[r]):
                    k = mm + q
                    old = get(k)
                    if old is None:
                        f[k] = (-c * cc) % p
                        push(heap, -k)
                    else:
                        v = (old - c * cc) % p
                        if v:
                            f[k] = v
                        else:
                            del f[k]
            else:
                for mm, cc in zip(monos_l[r], coeffs_l[r]):
                    k = mm + q
                    old = get(k)
                    if old is None:
                        f[k] = -c * cc
                        push(heap, -k)
                    else:
                        v = old - c * cc
                        if v:
                            f[k] = v
                        else:
                            del f[k]
        return out


def _monic_terms(terms: list, field) -> tuple:
    lc = terms[0][1]
    p = field.p
    if lc == 1:
        return tuple(m for m, _ in terms), tuple(c for _, c in terms)
    inv = field.inv(lc)
    if p:
        return tuple(m for m, _ in terms), tuple(c * inv % p for _, c in terms)
    return tuple(m for m, _ in terms), tuple(c * inv for _, c in terms)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis snapshot.

    ``cap`` is ``None`` for a complete basis; otherwise it holds the degree
    bounds (aligned with ``cap_gradings``) up to which the basis is exact.
    """

    ring: PolyRing
    polys: tuple
    complete: bool = True
    cap: tuple | None = None
    cap_gradings: tuple | None = None

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    @property
    def order(self):
        return self.ring.order

    def leading_monomials(self) -> list:
        return [g.lm for g in self.polys]

    def reducer(self) -> Reducer:
        red = Reducer(self.ring)
        for g in self.polys:
            ms, cs = _monic_terms(g.sorted_terms(), self.ring.field)
            red.add_reducer(ms, cs)
        return red

    def reduce(self, f: Poly) -> Poly:
        return normal_form(f, self)

    def contains(self, f: Poly) -> bool:
        return not normal_form(f, self)

    def is_unit(self) -> bool:
        return any(g.lm == 0 for g in self.polys)


def normal_form(f: Poly, G: GroebnerBasis | Sequence[Poly] | Reducer) -> Poly:
    """Remainder of ``f`` with no term divisible by a leading term of ``G``."""
    if isinstance(G, Reducer):
        red = G
    elif isinstance(G, GroebnerBasis):
        red = G.reducer()
    else:
        red = Reducer(f.ring)
        for g in G:
            if g.ring != f.ring:
                raise RingMismatchError("normal form across rings")
            if g:
                red.add_reducer(*_monic_terms(g.sorted_terms(), f.ring.field))
    if isinstance(G, GroebnerBasis) and G.ring != f.ring:
        raise RingMismatchError(f"normal form of element of {f.ring} modulo basis in {G.ring}")
    rem = red.reduce(dict(f.terms))
    return Poly(f.ring, dict(rem))


class GroebnerEngine(Reducer):
    """Resumable Buchberger state for one ideal (or submodule).

    ``cap_gradings`` lists the weight vectors a run can be capped by; the
    input must be homogeneous for each of them for caps to be meaningful.
    ``module_vars`` are the indices of position variables (module mode).
    """

    def __init__(
        self,
        ring: PolyRing,
        gens: Sequence[Poly] = (),
        cap_gradings: Sequence[Sequence[int]] | None = None,
        module_vars: Sequence[int] | None = None,
    ):
        super().__init__(ring)
        self.field = ring.field
        self.sugar_weights = ring.grading[0]
        self.cap_gradings = tuple(tuple(w) for w in cap_gradings) if cap_gradings else ()
        self.module_vars = tuple(module_vars) if module_vars else ()
        self.sugars: list = []
        self.active: list = []
        self.positions: list = []
        self._heap: list = []
        self._deferred: list = []
        self._dead: set = set()
        self._inputs: list = []
        self._seq = 0
        self.cap = None
        self.pairs_reduced = 0
        self.zero_reductions = 0
        self.add_generators(gens)

    # -- bookkeeping --------------------------------------------------------------
    def _deg(self, m: int, w) -> int:
        return sum(a * b for a, b in zip(w, self.ring.decode(m)))

    def _capdeg(self, m: int) -> tuple:
        e = self.ring.decode(m)
        return tuple(sum(a * b for a, b in zip(w, e)) for w in self.cap_gradings)

    def _position(self, m: int):
        if not self.module_vars:
            return None
        e = self.ring.decode(m)
        for v in self.module_vars:
            if e[v]:
                return v
        return None

    def _within(self, capdeg: tuple) -> bool:
        if self.cap is None:
            return True
        return all(d <= b for d, b in zip(capdeg, self.cap))

    def _push(self, entry):
        heapq.heappush(self._heap, entry)

    def add_generators(self, gens: Sequence[Poly]) -> None:
        for g in gens:
            if g.ring != self.ring:
                raise RingMismatchError(f"generator in {g.ring}, engine over {self.ring}")
            if not g:
                continue
            k = len(self._inputs)
            self._inputs.append(g)
            w = self.sugar_weights
            sugar = max(self._deg(m, w) for m in g.terms)
            capdeg = tuple(max(self._deg(m, cw) for m in g.terms) for cw in self.cap_gradings)
            self._seq += 1
            self._push((sugar, g.lm, self._seq, -1, k, capdeg))

    @property
    def has_pending(self) -> bool:
        return any(e[2] not in self._dead for e in self._heap) or any(
            e[2] not in self._dead for e in self._deferred
        )

    # -- main loop ------------------------------------------------------------------
    def run(self, cap: Sequence[int] | None = None, on_stage=None) -> GroebnerEngine:
        """Process pairs until none are left inside ``cap`` (``None``: no cap)."""
        self.cap = tuple(cap) if cap is not None else None
        if self._deferred:
            keep = []
            for e in self._deferred:
                if e[2] in self._dead:
                    continue
                if self._within(e[5]):
                    self._push(e)
                else:
                    keep.append(e)
            self._deferred = keep
        heap = self._heap
        dead = self._dead
        while heap:
            entry = heapq.heappop(heap)
            seq = entry[2]
            if seq in dead:
                dead.discard(seq)
                continue
            if not self._within(entry[5]):
                self._deferred.append(entry)
                continue
            sugar, lcm, _, i, j, _cd = entry
            if i < 0:
                g = self._inputs[j]
                f = dict(g.terms)
            else:
                f = self._spoly(i, j, lcm)
            self.pairs_reduced += 1
            rem = self.reduce(f)
            if not rem:
                self.zero_reductions += 1
                continue
            self._insert(rem, sugar)
        return self

    def _spoly(self, i: int, j: int, lcm: int) -> dict:
        p = self.p
        qi = lcm - self.lms[i]
        qj = lcm - self.lms[j]
        f = {}
        for m, c in zip(self.monos[i], self.coeffs[i]):
            f[m + qi] = c
        get = f.get
        if p:
            for m, c in zip(self.monos[j], self.coeffs[j]):
                k = m + qj
                v = (get(k, 0) - c) % p
                if v:
                    f[k] = v
                else:
                    f.pop(k, None)
        else:
            for m, c in zip(self.monos[j], self.coeffs[j]):
                k = m + qj
                v = get(k, 0) - c
                if v:
                    f[k] = v
                else:
                    f.pop(k, None)
        return f

    def _insert(self, rem: list, sugar: int) -> None:
        ring = self.ring
        monos, coeffs = _monic_terms(rem, self.field)
        h = len(self.lms)
        lm_h = monos[0]
        pos_h = self._position(lm_h)
        divides = ring.divides
        lcm_of = ring.lcm
        decode = ring.decode

        # Gebauer-Moeller: new pairs (g, h)
        cands = []
        e_h = decode(lm_h)
        for g in range(h):
            if not self.active[g]:
                continue
            if self.module_vars and self.positions[g] != pos_h:
                continue
            lm_g = self.lms[g]
            e_g = decode(lm_g)
            l = ring.encode([a if a > b else b for a, b in zip(e_g, e_h)])
            coprime = l == lm_g + lm_h
            cands.append((g, l, coprime))
        chosen = []
        while cands:
            g, l, coprime = cands.pop(0)
            if coprime or not (
                any(divides(l2, l) for _, l2, _ in cands) or any(divides(l2, l) for _, l2, _ in chosen)
            ):
                chosen.append((g, l, coprime))
        new_pairs = [(g, l) for g, l, coprime in chosen if not coprime]

        # prune old pairs whose lcm is divisible by lm_h
        for entries in (self._heap, self._deferred):
            for e in entries:
                i, j = e[3], e[4]
                if i < 0 or e[2] in self._dead:
                    continue
                l = e[1]
                if not divides(lm_h, l):
                    continue
                if lcm_of(self.lms[i], lm_h) != l and lcm_of(self.lms[j], lm_h) != l:
                    self._dead.add(e[2])

        # deactivate elements whose leading term lm_h divides
        for g in range(h):
            if self.active[g] and divides(lm_h, self.lms[g]):
                self.active[g] = False

        self.add_reducer(monos, coeffs)
        self.sugars.append(sugar)
        self.active.append(True)
        self.positions.append(pos_h)
        # the cache may hold "irreducible" verdicts that h invalidates; they
        # are resumed from the stored index, so nothing to clear

        w = self.sugar_weights
        deg_h = self._deg(lm_h, w)
        for g, l in new_pairs:
            dl = self._deg(l, w)
            s = max(self.sugars[g] + dl - self._deg(self.lms[g], w), sugar + dl - deg_h)
            self._seq += 1
            self._push((s, l, self._seq, g, h, self._capdeg(l)))

    # -- results ----------------------------------------------------------------------
    def active_polys(self) -> list:
        ring = self.ring
        out = []
        for k, a in enumerate(self.active):
            if a:
                d = {self.lms[k]: self.field.one}
                d.update(zip(self.monos[k], self.coeffs[k]))
                out.append(Poly(ring, d))
        return out

    def reduced(self) -> list:
        """Interreduced active elements sorted by ascending leading monomial."""
        ring = self.ring
        idx = [k for k, a in enumerate(self.active) if a]
        red = Reducer(ring)
        for k in idx:
            red.add_reducer((self.lms[k],) + self.monos[k], (self.field.one,) + self.coeffs[k])
        out = []
        for k in idx:
            f = dict(zip(self.monos[k], self.coeffs[k]))
            tail = red.reduce(f)
            d = {self.lms[k]: self.field.one}
            d.update(tail)
            out.append(Poly(ring, d))
        out.sort(key=lambda g: g.lm)
        return out

    def snapshot(self) -> GroebnerBasis:
        complete = self.cap is None or not self.has_pending
        return GroebnerBasis(
            self.ring,
            tuple(self.reduced()),
            complete=complete,
            cap=None if complete else self.cap,
            cap_gradings=self.cap_gradings or None,
        )


def buchberger(
    gens: Sequence[Poly],
    ring: PolyRing | None = None,
    cap: Sequence[int] | None = None,
    cap_gradings: Sequence[Sequence[int]] | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of ``gens`` in their ring's order.

    With ``cap`` the run is truncated to the degree box ``cap`` under
    ``cap_gradings`` (default: the ring's gradings, so ``cap=(1, N)`` on a
    bigraded ring truncates at bidegree (1, N)).  Zero generators are
    rejected.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need generators or a ring")
        ring = gens[0].ring
    for g in gens:
        if not g:
            raise ZeroPolynomialError("zero generator")
        if g.ring != ring:
            raise RingMismatchError("generators in different rings")
    if cap is not None:
        if cap_gradings is None:
            if not ring.is_bigraded:
                raise RingMismatchError("a bidegree cap needs a bigraded ring")
            cap_gradings = ring.grading
        if len(cap) != len(cap_gradings):
            raise ValueError("cap and gradings disagree in length")
        for g in gens:
            for k, w in enumerate(cap_gradings):
                if len({sum(a * b for a, b in zip(w, ring.decode(m))) for m in g.terms}) > 1:
                    from .errors import NotHomogeneousError

                    raise NotHomogeneousError(f"{g} is not homogeneous for grading {k}")
    eng = GroebnerEngine(ring, gens, cap_gradings=cap_gradings)
    eng.run(cap)
    return eng.snapshot()


def reduced_basis(gens: Sequence[Poly], ring: PolyRing | None = None) -> GroebnerBasis:
    """Like :func:`buchberger` but silently drops zero generators."""
    gens = [g for g in gens if g]
    if not gens:
        if ring is None:
            raise ValueError("need a ring for the zero ideal")
        return GroebnerBasis(ring, ())
    return buchberger(gens, ring)
