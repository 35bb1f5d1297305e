import random
from itertools import islice, product

import pytest
import sympy

from conftest import random_form
from ratmaps import GF, QQ, PolyRing
from ratmaps.errors import StepLimitExceeded
from ratmaps.ideals import ideal_contains, ideal_equal
from ratmaps.maps import rational_map
from ratmaps.rees import (
    ReesComputation,
    deterministic_rank,
    jacobian_dual,
    linear_part,
    quick_rank,
    rank_over_target,
    rees_full,
    rees_ring,
    rees_saturation,
    rees_truncated,
    simis_schedule,
)

P2 = PolyRing(QQ, "x,y,z")
x, y, z = P2.gens


def cremona():
    return rational_map(P2, P2, [y * z, x * z, x * y])


def random_quadric_map(seed, p=101):
    rng = random.Random(seed)
    R = PolyRing(GF(p), "x,y,z")
    while True:
        forms = [random_form(R, 2, rng, terms=4) for _ in range(3)]
        if all(forms):
            return rational_map(R, R, forms)


def test_schedule():
    assert list(islice(simis_schedule(), 7)) == [1, 2, 4, 7, 11, 16, 22]


def test_rees_ring_renames_on_collision():
    S = rees_ring(cremona())
    assert S.names == ("x", "y", "z", "Y0", "Y1", "Y2")
    T = PolyRing(QQ, "a,b,c")
    S2 = rees_ring(rational_map(P2, T, [y * z, x * z, x * y]))
    assert S2.names[3:] == ("a", "b", "c")


def test_rees_of_cremona():
    J = rees_full(cremona())
    assert J.complete
    assert [str(g) for g in J.gens] == ["y*Y1-z*Y2", "x*Y0-z*Y2"]
    assert J.bidegrees == ((1, 1), (1, 1))


def test_rees_elements_vanish_on_graph():
    F = cremona()
    J = rees_full(F)
    S = J.ring
    t = sympy.Symbol("t")
    X = sympy.symbols("x y z")
    images = [*X] + [t * sympy.sympify(str(f)) for f in F.forms]
    for g in J.gens:
        expr = sympy.sympify(str(g).replace("^", "**"), locals=dict(zip(S.names, sympy.symbols(S.names))))
        assert sympy.expand(expr.subs(dict(zip(sympy.symbols(S.names), images)), simultaneous=True)) == 0


def linear_syzygy_dim(F):
    """Dimension of {(a_ij) : sum a_ij x_i f_j = 0} by plain linear algebra."""
    R = F.source.ring
    n = R.nvars
    m = len(F.forms)
    unknowns = sympy.symbols(f"a0:{n * m}")
    X = sympy.symbols(R.names)
    fs = [sympy.sympify(str(f).replace("^", "**"), locals=dict(zip(R.names, X))) for f in F.forms]
    total = sum(unknowns[i * m + j] * X[i] * fs[j] for i, j in product(range(n), range(m)))
    eqs = sympy.Poly(sympy.expand(total), *X).coeffs()
    A = sympy.Matrix([[sympy.diff(e, u) for u in unknowns] for e in eqs])
    if R.field.p:
        rank = _rank_mod(A.tolist(), R.field.p)
    else:
        rank = A.rank()
    return n * m - rank


def _rank_mod(rows, p):
    rows = [[int(v) % p for v in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def test_bidegree_one_one_piece_matches_linear_algebra():
    F = cremona()
    J = rees_full(F)
    assert sum(1 for b in J.bidegrees if b == (1, 1)) == linear_syzygy_dim(F) == 2


@pytest.mark.parametrize("seed", range(5))
def test_bidegree_one_one_piece_random(seed):
    F = random_quadric_map(seed)
    J = rees_full(F)
    assert sum(1 for b in J.bidegrees if b == (1, 1)) == linear_syzygy_dim(F)


@pytest.mark.parametrize("seed", range(10))
def test_saturation_equals_elimination(seed):
    F = random_quadric_map(100 + seed)
    A = rees_full(F)
    B = rees_saturation(F)
    assert ideal_equal(list(A.gens), list(B.gens), A.ring)


def test_saturation_on_curve_source():
    from ratmaps.variety import Variety

    C = Variety(P2, [x * z - y**2])
    F = rational_map(C, PolyRing(QQ, "a,b"), [x, y])
    A = rees_full(F)
    B = rees_saturation(F)
    assert ideal_equal(list(A.gens), list(B.gens), A.ring)


def test_truncation_is_contained_and_complete_below_cap():
    F = random_quadric_map(7)
    full = rees_full(F)
    for N in (1, 2):
        part = rees_truncated(F, N)
        assert part.cap in (N, None)
        for g in part.gens:
            assert ideal_contains(list(full.gens), g)
        low = [g for g in full.gens if g.bidegree()[0] == 1 and g.bidegree()[1] <= N]
        for g in low:
            assert ideal_contains(list(part.gens), g)


def test_resumable_stages_reach_full_basis():
    F = random_quadric_map(3)
    comp = ReesComputation(F)
    for N in (1, 2, 4):
        comp.run_to(N)
    done = comp.full()
    assert ideal_equal(list(done.gens), list(rees_full(F).gens), done.ring)


def test_linear_part_of_cremona():
    rows = linear_part(rees_full(cremona()))
    assert [g.bidegree() for g in rows] == [(1, 1), (1, 1)]


def test_linear_part_is_minimal():
    J = rees_full(random_quadric_map(11))
    rows = linear_part(J)
    for i, g in enumerate(rows):
        others = rows[:i] + rows[i + 1 :]
        if others:
            assert not ideal_contains(others, g)


@pytest.mark.parametrize("strategy", ["hybrid", "rees", "simis", "saturation"])
def test_jacobian_dual_of_cremona(strategy):
    M = jacobian_dual(cremona(), strategy=strategy)
    assert M.shape == (2, 3)
    assert rank_over_target(M) == 2 == deterministic_rank(M)
    if strategy in ("hybrid", "simis"):
        assert M.stages == [1]


def test_jacobian_dual_entries_are_linear_in_targets():
    M = jacobian_dual(cremona(), strategy="rees")
    for row in M.matrix.rows:
        for e in row:
            assert not e or e.degree(0) == 1


def test_simis_step_limit():
    F = rational_map(P2, P2, [x**2, y**2, z**2])
    with pytest.raises(StepLimitExceeded):
        jacobian_dual(F, strategy="simis", step_limit=3)
    for strategy in ("hybrid", "simis"):
        M = jacobian_dual(F, strategy=strategy)
        assert rank_over_target(M) < 2


def test_unknown_strategy():
    with pytest.raises(ValueError):
        jacobian_dual(cremona(), strategy="magic")


@pytest.mark.parametrize("which", ["cremona", "squares", "random"])
def test_quick_rank_never_exceeds_true_rank(which):
    if which == "cremona":
        F = cremona()
    elif which == "squares":
        F = rational_map(P2, P2, [x**2, y**2, z**2])
    else:
        F = random_quadric_map(5)
    M = jacobian_dual(F, strategy="rees")
    true = deterministic_rank(M)
    for seed in range(100):
        q = quick_rank(M, seed)
        assert q is not None and q <= true
