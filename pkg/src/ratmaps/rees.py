"""Rees ideals of rational maps and their x-linear part.

The Rees ideal of a map with forms f_0..f_m of degree d lives in the
bigraded ring k[X, Y].  It is computed by eliminating an extra variable t
from a + (Y_j - t f_j) in k[t, X, Y].  That ideal is homogeneous for two
nonnegative gradings::

    G1: t -> 1, X -> 1, Y -> d + 1
    G2: t -> 1, X -> 0, Y -> 1

and a t-free element of bidegree (p, q) has G1 = p + (d + 1) q, G2 = q.
Capping the Buchberger run at G1 <= 1 + (d + 1) N, G2 <= N therefore
produces every basis element of bidegree (1, q) with q <= N, and the
remaining pairs stay queued so a larger cap resumes the same run.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import count
from typing import Iterator, Sequence

from .errors import StepLimitExceeded
from .groebner import GroebnerEngine, buchberger, normal_form
from .ideals import syzygies
from .linalg import EVAL_PRIME, PolyMatrix, bareiss, scalar_rank
from .maps import RationalMap
from .rings import MonomialOrder, Poly, PolyRing
from .variety import Variety

__all__ = [
    "ReesChunk",
    "ReesComputation",
    "JacobianDualMatrix",
    "rees_ring",
    "rees_full",
    "rees_saturation",
    "rees_truncated",
    "linear_part",
    "jacobian_matrix",
    "jacobian_dual",
    "rank_over_target",
    "quick_rank",
    "deterministic_rank",
    "simis_schedule",
    "STRATEGIES",
]

log = logging.getLogger("ratmaps")

STRATEGIES = ("hybrid", "rees", "simis", "saturation")


def simis_schedule() -> Iterator[int]:
    """Truncation degrees 1, 2, 4, 7, 11, 16, ... (steps grow by one)."""
    n = 1
    for step in count(1):
        yield n
        n += step


def _fresh(name: str, taken: set) -> str:
    while name in taken:
        name = name + "_"
    return name


def rees_ring(F: RationalMap) -> PolyRing:
    """The bigraded ring k[X, Y] holding the Rees ideal of ``F``.

    Source variable names are kept; target names are kept too unless they
    collide, in which case target variables become Y0, Y1, ...  The order
    is the weighted grevlex with X -> 1, Y -> d + 1.
    """
    xs = list(F.source.ring.names)
    ys = list(F.target.ring.names)
    if set(xs) & set(ys):
        taken = set(xs)
        ys = [_fresh(f"Y{j}", taken) for j in range(len(ys))]
    d = F.degree
    nx, ny = len(xs), len(ys)
    order = MonomialOrder.grevlex(nx + ny, [1] * nx + [d + 1] * ny)
    return PolyRing(F.source.ring.field, xs + ys, order, [[1] * nx + [0] * ny, [0] * nx + [1] * ny])


@dataclass(frozen=True)
class ReesChunk:
    """Bihomogeneous generators of (a truncation of) the Rees ideal.

    ``cap`` is ``None`` for a complete basis, otherwise N such that all
    basis elements of bidegree (1, q), q <= N, are present.
    """

    ring: PolyRing
    gens: tuple
    cap: int | None
    strategy: str
    degree: int = 1

    @property
    def complete(self) -> bool:
        return self.cap is None

    @property
    def bidegrees(self) -> tuple:
        return tuple(g.bidegree() for g in self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)


class ReesComputation:
    """Resumable elimination computation of the Rees ideal of one map."""

    def __init__(self, F: RationalMap):
        self.map = F
        self.out_ring = rees_ring(F)
        src = F.source.ring
        nx = src.nvars
        ny = F.target.ring.nvars
        d = F.degree
        self.d = d
        tname = _fresh("t", set(self.out_ring.names))
        names = [tname] + list(self.out_ring.names)
        n = len(names)
        g1 = [1] + [1] * nx + [d + 1] * ny
        g2 = [1] + [0] * nx + [1] * ny
        self.ring = PolyRing(src.field, names, MonomialOrder.elimination(n, [0], g1), [g1, g2])
        xmap = list(range(1, nx + 1))
        t = self.ring.gen(0)
        gens = [g.to_ring(self.ring, xmap) for g in F.source.gb]
        for j, f in enumerate(F.forms):
            gens.append(self.ring.gen(1 + nx + j) - t * f.to_ring(self.ring, xmap))
        self.engine = GroebnerEngine(self.ring, gens, cap_gradings=[g1, g2])
        self.reached: int | None = 0
        self._out_map = [0] + list(range(n - 1))

    def _extract(self) -> list:
        out = []
        for g in self.engine.reduced():
            if self.ring.decode(g.lm)[0]:
                continue
            d = {}
            for m, c in g.terms.items():
                d[self.out_ring.encode(self.ring.decode(m)[1:])] = c
            out.append(Poly(self.out_ring, d))
        out.sort(key=lambda g: (g.bidegree()[::-1], g.lm))
        return out

    def run_to(self, N: int) -> ReesChunk:
        """Extend the computation to cap (1, N)."""
        if N < 1:
            raise ValueError("truncation degree must be at least 1")
        if self.reached is None:
            return self.full()
        self.engine.run((1 + (self.d + 1) * N, N))
        if not self.engine.has_pending:
            self.reached = None
            return ReesChunk(self.out_ring, tuple(self._extract()), None, "simis", self.d)
        self.reached = max(self.reached, N)
        return ReesChunk(self.out_ring, tuple(self._extract()), N, "simis", self.d)

    def full(self, strategy: str = "rees") -> ReesChunk:
        """Finish the basis, reusing all work done so far."""
        self.engine.run(None)
        self.reached = None
        return ReesChunk(self.out_ring, tuple(self._extract()), None, strategy, self.d)


def rees_full(F: RationalMap) -> ReesChunk:
    """Complete reduced basis of the Rees ideal by elimination."""
    return ReesComputation(F).full("rees")


def rees_truncated(F: RationalMap, N: int) -> ReesChunk:
    return ReesComputation(F).run_to(N)


def rees_saturation(F: RationalMap) -> ReesChunk:
    """Rees ideal as the saturation of the symmetric-algebra ideal.

    The symmetric-algebra ideal is a + (sum_i s_i Y_i for syzygies s of
    the forms); it is saturated by the first nonzero form.
    """
    out = rees_ring(F)
    src = F.source.ring
    nx, ny = src.nvars, F.target.ring.nvars
    d = F.degree
    xmap = list(range(nx))
    Ys = [out.gen(nx + j) for j in range(ny)]
    L = [g.to_ring(out, xmap) for g in F.source.gb]
    for s in syzygies([[f] for f in F.forms], src, F.source.ideal):
        L.append(sum((si.to_ring(out, xmap) * y for si, y in zip(s, Ys) if si), out.zero()))
    L = [g for g in L if g]
    fk = F.forms[F.first_nonzero].to_ring(out, xmap)
    # revlex trick: adjoin u = f_k as the smallest variable and divide u out
    uname = _fresh("u", set(out.names))
    names = list(out.names) + [uname]
    w = [1] * nx + [d + 1] * ny + [d]
    big = PolyRing(out.field, names, MonomialOrder.grevlex(len(names), w), [w])
    lift = list(range(nx + ny))
    u = big.gen(nx + ny)
    gens = [g.to_ring(big, lift) for g in L] + [u - fk.to_ring(big, lift)] if L else []
    result = []
    if gens:
        G = buchberger(gens, big)
        images = list(out.gens) + [fk]
        for g in G:
            e = min(big.decode(m)[-1] for m in g.terms)
            if e:
                shift = e * big.var_monomial(nx + ny)
                g = Poly(big, {m - shift: c for m, c in g.terms.items()})
            result.append(g.substitute(images))
    result = [g for g in result if g]
    basis = buchberger(result, out).polys if result else ()
    gens_sorted = sorted(basis, key=lambda g: (g.bidegree()[::-1], g.lm))
    return ReesChunk(out, tuple(gens_sorted), None, "saturation", d)


def linear_part(J: ReesChunk) -> list:
    """Minimal generators of bidegree (1, q) of the ideal they generate.

    Candidates are taken by ascending q; one is dropped when it reduces to
    zero against a basis of the kept ones truncated at its own bidegree.
    """
    cands = [g for g in J.gens if g.bidegree()[0] == 1]
    cands.sort(key=lambda g: (g.bidegree()[1], g.lm))
    kept: list = []
    ring = J.ring
    eng = None
    for g in cands:
        q = g.bidegree()[1]
        if eng is not None:
            eng.run((1, q))
            if not eng.reduce(dict(g.terms)):
                continue
        kept.append(g)
        if eng is None:
            eng = GroebnerEngine(ring, [g], cap_gradings=ring.grading)
        else:
            eng.add_generators([g])
    return kept


def jacobian_matrix(rows: Sequence[Poly], target: PolyRing) -> PolyMatrix:
    """x-partials of x-linear biforms, as polynomials in the target ring."""
    if not rows:
        return PolyMatrix([], target)
    ring = rows[0].ring
    nx = ring.grading[0].count(1)
    out = []
    for P in rows:
        row = []
        for i in range(nx):
            dp = P.diff(i)
            d = {}
            for m, c in dp.terms.items():
                d[target.encode(ring.decode(m)[nx:])] = c
            row.append(Poly(target, d))
        out.append(row)
    return PolyMatrix(out, target)


@dataclass
class JacobianDualMatrix:
    """Weak Jacobian dual matrix over S = k[Y]/b.

    ``liftings`` are the x-linear Rees relations P_j; row j holds dP_j/dx_i.
    """

    matrix: PolyMatrix
    target: Variety
    liftings: list
    map: RationalMap
    strategy: str
    cap: int | None = None
    stages: list = field(default_factory=list)
    rank: int | None = None

    @property
    def shape(self) -> tuple:
        return (len(self.matrix.rows), self.map.source.ring.nvars)

    @property
    def full_rank(self) -> int:
        """The rank that certifies birationality: edim - 1."""
        return self.map.source.ring.nvars - 1


def _sampler(M: JacobianDualMatrix):
    """Random points of the target at which a rank lower bound can be read off."""
    F = M.map
    field_ = F.source.ring.field
    modulus = EVAL_PRIME if field_.p == 0 else None
    if not F.source.ideal:

        def sample(rng):
            p = [rng.randrange(1, modulus) if modulus else field_.random_element(rng) for _ in range(F.source.nvars)]
            return [_ev(f, p, modulus) for f in F.forms]

        return sample, (modulus or field_.p)
    if not M.target.ideal:

        def sample(rng):
            return [rng.randrange(1, modulus) if modulus else field_.random_element(rng) for _ in range(M.target.nvars)]

        return sample, (modulus or field_.p)
    return None, None


def _ev(f: Poly, point, modulus):
    from .linalg import _eval

    return _eval(f, point, modulus)


def quick_rank(M: JacobianDualMatrix, seed: int = 0, points: int = 2) -> int | None:
    """Lower bound for the rank from evaluations at random points (None: no sampler)."""
    sample, p = _sampler(M)
    if sample is None or not M.matrix.rows:
        return None if sample is None else 0
    rng = random.Random(seed)
    best = 0
    for _ in range(points):
        y = sample(rng)
        vals = M.matrix.evaluate(y, p if M.map.source.ring.field.p == 0 else None)
        best = max(best, scalar_rank(vals, p))
        if best == min(M.shape[0], M.full_rank):
            break
    return best


def deterministic_rank(M: JacobianDualMatrix) -> int:
    if not M.matrix.rows:
        return 0
    S = M.target
    rank, *_ = bareiss(M.matrix, lambda f: not S.reduce(f))
    return rank


def rank_over_target(M: JacobianDualMatrix, quick: bool = True, seed: int = 0) -> int:
    """Rank of the matrix over Frac(S)."""
    if quick:
        r = quick_rank(M, seed)
        if r is not None and r >= min(M.shape[0], M.full_rank):
            log.info("rank %d certified at a random point", r)
            return r
    return deterministic_rank(M)


def _dual_from_chunk(F: RationalMap, target: Variety, chunk: ReesChunk, strategy: str) -> JacobianDualMatrix:
    rows = linear_part(chunk)
    mat = jacobian_matrix(rows, target.ring)
    return JacobianDualMatrix(mat, target, rows, F, strategy, chunk.cap)


def jacobian_dual(
    F: RationalMap,
    strategy: str = "hybrid",
    hybrid_limit: int = 15,
    quick: bool = True,
    seed: int = 0,
    step_limit: int | None = None,
    target: Variety | None = None,
) -> JacobianDualMatrix:
    """Weak Jacobian dual matrix of a map with a nondegenerate source.

    ``target`` is the variety S the rank is measured over (default: the
    map's target).  ``simis`` escalates the truncation degree until the
    rank reaches edim - 1 and raises :class:`StepLimitExceeded` after
    ``step_limit`` stages; without a limit it stops once the basis is
    complete.  ``hybrid`` runs
    the same stages but completes the basis once a stage beyond
    ``hybrid_limit`` fails.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if hybrid_limit < 1:
        raise ValueError("hybrid limit must be positive")
    target = target or F.target
    if strategy == "rees":
        M = _dual_from_chunk(F, target, rees_full(F), "rees")
    elif strategy == "saturation":
        M = _dual_from_chunk(F, target, rees_saturation(F), "saturation")
    else:
        comp = ReesComputation(F)
        M = None
        stages = []
        for step, N in enumerate(simis_schedule(), start=1):
            if strategy == "simis" and step_limit is not None and step > step_limit:
                raise StepLimitExceeded(f"rank not reached after {step_limit} stages")
            log.info("computing partial Groebner basis of the Rees ideal up to degree (1, %d)", N)
            chunk = comp.run_to(N)
            stages.append(N)
            M = _dual_from_chunk(F, target, chunk, strategy)
            M.stages = list(stages)
            r = rank_over_target(M, quick, seed) if M.matrix.rows else 0
            M.rank = r
            if r == M.full_rank:
                log.info("computed enough of the Groebner basis")
                break
            if chunk.complete:
                if strategy == "simis" and step_limit is not None:
                    # further stages add nothing; escalate only to honour the step limit
                    continue
                break
            if strategy == "hybrid" and N > hybrid_limit:
                log.info("giving up on truncation; completing the basis from the partial one")
                chunk = comp.full("hybrid")
                M = _dual_from_chunk(F, target, chunk, "hybrid")
                M.stages = list(stages)
                break
    log.info("found Jacobian dual matrix with %d columns and %d rows", M.shape[1], M.shape[0])
    return M
