"""Birationality, inverse maps and the closed-embedding test."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from .errors import NotBirationalError, RatMapsError
from .ideals import syzygies
from .linalg import scalar_rank, signed_maximal_minors
from .maps import RationalMap, image_variety, is_regular
from .rees import JacobianDualMatrix, _sampler, jacobian_dual, rank_over_target
from .variety import Variety

__all__ = [
    "InverseOptions",
    "prepare",
    "is_birational",
    "inverse_of_map",
    "inverse_by_minors",
    "inverse_by_syzygies",
    "is_embedding",
    "auto_minors_count",
]

log = logging.getLogger("ratmaps")


@dataclass(frozen=True)
class InverseOptions:
    """Knobs shared by the birationality and inverse computations.

    ``minors_count=None`` picks a count from the ring sizes; 0 skips the
    minors method.  ``step_limit`` bounds the stages of the simis strategy.
    """

    strategy: str = "hybrid"
    hybrid_limit: int = 15
    minors_count: int | None = None
    assume_dominant: bool = False
    check_birational: bool = True
    quick_rank: bool = True
    seed: int = 0
    step_limit: int | None = None

    def __post_init__(self):
        if self.minors_count is not None and self.minors_count < 0:
            raise ValueError("minors_count must be nonnegative")
        if self.hybrid_limit < 1:
            raise ValueError("hybrid_limit must be positive")


def auto_minors_count(F: RationalMap) -> int:
    return 2 + F.source.nvars


@dataclass
class Prepared:
    """A map rewritten for the Jacobian dual criterion.

    ``small`` has a nondegenerate source and the image (or the given
    target) as target; ``rep`` records how to return to original
    coordinates.
    """

    original: RationalMap
    small: RationalMap
    rep: object
    image: Variety
    dual: JacobianDualMatrix

    @property
    def full_rank(self) -> int:
        return self.small.source.nvars - 1


def prepare(F: RationalMap, opts: InverseOptions = InverseOptions()) -> Prepared:
    rep = F.source.minimal
    if not rep.is_trivial:
        log.info("source is degenerate; dropping %d variables", F.source.nvars - rep.variety.nvars)
    forms = [rep.variety.reduce(rep.push(f)) for f in F.forms]
    if opts.assume_dominant:
        image = F.target
    else:
        log.info("computing the image of the map")
        image = image_variety(F)
        log.info("found the image of the map")
    small = RationalMap(rep.variety, image, forms)
    M = jacobian_dual(
        small,
        strategy=opts.strategy,
        hybrid_limit=opts.hybrid_limit,
        quick=opts.quick_rank,
        seed=opts.seed,
        step_limit=opts.step_limit,
        target=image,
    )
    return Prepared(F, small, rep, image, M)


def _rank(P: Prepared, opts: InverseOptions) -> int:
    if P.dual.rank is None or P.dual.rank < P.full_rank:
        P.dual.rank = rank_over_target(P.dual, opts.quick_rank, opts.seed)
    return P.dual.rank


def is_birational(F: RationalMap, opts: InverseOptions = InverseOptions()) -> bool:
    """True when F is birational onto its image (onto the target with assume_dominant)."""
    P = prepare(F, opts)
    return _rank(P, opts) == P.full_rank


def _choose_rows(M: JacobianDualMatrix, r: int, rng: random.Random) -> list | None:
    """Greedy choice of r rows of rank r, cheapest rows first.

    Rank increments are tested at a random point when one can be sampled,
    otherwise by exact elimination modulo the target ideal.
    """
    rows = list(range(M.shape[0]))
    keys = {i: (M.matrix.row_degree(i), rng.random()) for i in rows}
    rows.sort(key=keys.get)
    sample, p = _sampler(M)
    if sample is not None:
        y = sample(rng)
        modulus = p if M.map.source.ring.field.p == 0 else None
        vals = M.matrix.evaluate(y, modulus)
        chosen: list = []
        for i in rows:
            if scalar_rank([vals[k] for k in chosen + [i]], p) == len(chosen) + 1:
                chosen.append(i)
                if len(chosen) == r:
                    return chosen
        return None
    from .linalg import bareiss

    S = M.target
    rank, piv_rows, _, _ = bareiss(M.matrix, lambda f: not S.reduce(f), rows=rows, stop_at=r)
    return piv_rows if rank == r else None


def inverse_by_minors(P: Prepared, attempts: int, seed: int = 0) -> list | None:
    """Signed maximal minors of an (edim-1) x edim submatrix of full rank."""
    M = P.dual
    r = P.full_rank
    S = P.image
    for a in range(attempts):
        rng = random.Random(f"{seed}:{a}")
        chosen = _choose_rows(M, r, rng)
        if chosen is None:
            log.info("minors attempt %d found no submatrix of rank %d", a + 1, r)
            continue
        sub = [M.matrix.rows[i] for i in sorted(chosen)]
        v = [S.reduce(x) for x in signed_maximal_minors(sub)]
        if any(v):
            log.info("found a nonzero minor in %d attempts", a + 1)
            return v
    return None


def inverse_by_syzygies(P: Prepared) -> list:
    """Coordinates of a positive-degree vector in the null space over S."""
    M = P.dual
    S = P.image
    cols = [[row[i] for row in M.matrix.rows] for i in range(M.shape[1])]
    if not cols[0]:
        raise NotBirationalError("Jacobian dual matrix has no rows")
    kernel = syzygies(cols, S.ring, S.ideal)

    def deg(v):
        return min(x.degree(0) for x in v if x)

    for v in sorted(kernel, key=deg):
        v = [S.reduce(x) for x in v]
        if any(v) and all(x.is_homogeneous(0) for x in v) and deg(v) > 0:
            return v
    raise RatMapsError("null space of the Jacobian dual has no usable vector")


def inverse_of_map(F: RationalMap, opts: InverseOptions = InverseOptions()) -> RationalMap:
    """A representative of the inverse, from the image back to the source."""
    P = prepare(F, opts)
    if opts.check_birational:
        if _rank(P, opts) != P.full_rank:
            raise NotBirationalError("the map is not birational onto its image")
    count_ = auto_minors_count(P.small) if opts.minors_count is None else opts.minors_count
    v = None
    if count_:
        log.info("looking for a nonzero minor (%d attempts)", count_)
        v = inverse_by_minors(P, count_, opts.seed)
    if v is None:
        log.info("computing syzygies of the Jacobian dual matrix")
        v = inverse_by_syzygies(P)
    forms = [P.image.reduce(g.substitute(v)) for g in P.rep.to_small]
    lead = next(f for f in forms if f).lc
    fld = F.source.ring.field
    if lead != fld.one:
        forms = [f.scale(fld.inv(lead)) for f in forms]
    return RationalMap(P.image, F.source, forms)


def is_embedding(F: RationalMap, opts: InverseOptions | None = None) -> bool:
    """Regular, birational onto the image, with a regular inverse."""
    if opts is None:
        opts = InverseOptions(minors_count=0)
    log.info("checking whether the map is regular")
    if not is_regular(F):
        return False
    log.info("computing the inverse map")
    try:
        G = inverse_of_map(F, opts)
    except NotBirationalError:
        return False
    log.info("checking whether the inverse map is regular")
    return is_regular(G)
