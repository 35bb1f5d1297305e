"""Matrices of polynomials over a quotient k[Y]/b.

Rank is taken over the fraction field of k[Y]/b, which is assumed to be a
domain.  Exact work uses fraction-free (Bareiss) elimination in k[Y]
with pivots chosen nonzero modulo b; the quick path evaluates at points
and uses scalar Gaussian elimination.
"""

from __future__ import annotations

import random
from typing import Callable, Sequence

from .rings import Poly

__all__ = [
    "PolyMatrix",
    "bareiss",
    "determinant",
    "scalar_rank",
    "signed_maximal_minors",
]

# prime used to evaluate rational matrices when estimating rank
EVAL_PRIME = (1 << 61) - 1


def _degree(p: Poly) -> int:
    return p.degree(0) if p else -1


class PolyMatrix:
    """A dense list-of-rows matrix of polynomials in one ring."""

    def __init__(self, rows: Sequence[Sequence[Poly]], ring=None):
        self.rows = [list(r) for r in rows]
        if ring is None:
            ring = self.rows[0][0].ring if self.rows and self.rows[0] else None
        self.ring = ring

    @property
    def shape(self) -> tuple:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> PolyMatrix:
        if cols is None:
            cols = range(self.shape[1])
        return PolyMatrix([[self.rows[i][j] for j in cols] for i in rows], self.ring)

    def row_degree(self, i: int) -> int:
        return max((_degree(p) for p in self.rows[i]), default=-1)

    def evaluate(self, point: Sequence, modulus: int | None = None) -> list:
        """Scalar matrix at ``point``; rational entries go mod ``modulus`` when given."""
        out = []
        for row in self.rows:
            out.append([_eval(p, point, modulus) for p in row])
        return out

    def __str__(self):
        return "matrix{" + ", ".join("{" + ", ".join(str(p) for p in r) + "}" for r in self.rows) + "}"


def _eval(p: Poly, point, modulus):
    if modulus is None:
        return p.evaluate(point)
    ring = p.ring
    total = 0
    for m, c in p.terms.items():
        num, den = int(c.numerator), int(c.denominator)
        v = num * pow(den, -1, modulus) % modulus
        for x, e in zip(point, ring.decode(m)):
            if e:
                v = v * pow(x, e, modulus) % modulus
        total += v
    return total % modulus


def scalar_rank(rows: list, p: int) -> int:
    """Rank of an integer matrix modulo the prime ``p`` (or over Q when p = 0)."""
    if p == 0:
        from fractions import Fraction

        a = [[Fraction(x) for x in r] for r in rows]

        def inv(x):
            return 1 / x

        def red(x):
            return x
    else:
        a = [[x % p for x in r] for r in rows]

        def inv(x):
            return pow(x, -1, p)

        def red(x):
            return x % p

    nrows = len(a)
    ncols = len(a[0]) if a else 0
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        iv = inv(a[rank][c])
        for r in range(rank + 1, nrows):
            if a[r][c]:
                f = red(a[r][c] * iv)
                a[r] = [red(x - f * y) for x, y in zip(a[r], a[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def bareiss(
    M: PolyMatrix,
    is_zero: Callable[[Poly], bool],
    rows: Sequence[int] | None = None,
    cols: Sequence[int] | None = None,
    stop_at: int | None = None,
):
    """Fraction-free elimination with pivots that are nonzero modulo b.

    Returns ``(rank, pivot_rows, pivot_cols, last_pivot)``.  Every
    intermediate entry is a minor of the lifted matrix, so divisions are
    exact in k[Y]; ``is_zero`` tests an entry modulo b.  Among admissible
    pivots the one of least degree wins.
    """
    rows = list(range(M.shape[0])) if rows is None else list(rows)
    cols = list(range(M.shape[1])) if cols is None else list(cols)
    a = [[M.rows[i][j] for j in cols] for i in rows]
    nr, nc = len(a), len(cols)
    live_r = list(range(nr))
    live_c = list(range(nc))
    prev = None
    piv_rows: list = []
    piv_cols: list = []
    zero_cache: dict = {}

    def nz(i, j):
        key = (i, j, id(a[i][j]))
        if key not in zero_cache:
            zero_cache[key] = bool(a[i][j]) and not is_zero(a[i][j])
        return zero_cache[key]

    while live_r and live_c:
        if stop_at is not None and len(piv_rows) >= stop_at:
            break
        best = None
        for i in live_r:
            for j in live_c:
                if a[i][j] and (best is None or _degree(a[i][j]) < best[0]) and nz(i, j):
                    best = (_degree(a[i][j]), i, j)
        if best is None:
            break
        _, pi, pj = best
        pivot = a[pi][pj]
        live_r.remove(pi)
        live_c.remove(pj)
        for i in live_r:
            aij = a[i][pj]
            for j in live_c:
                v = pivot * a[i][j]
                if aij:
                    v = v - aij * a[pi][j]
                if prev is not None and v:
                    v = v.exact_div(prev)
                a[i][j] = v
        prev = pivot
        piv_rows.append(rows[pi])
        piv_cols.append(cols[pj])
    return len(piv_rows), piv_rows, piv_cols, prev


def determinant(entries: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix by Bareiss elimination."""
    n = len(entries)
    if n == 0:
        raise ValueError("empty matrix")
    ring = entries[0][0].ring
    a = [list(r) for r in entries]
    sign = 1
    prev = None
    for k in range(n):
        piv = None
        for i in range(k, n):
            if a[i][k] and (piv is None or len(a[i][k]) < len(a[piv][k])):
                piv = i
        if piv is None:
            return ring.zero()
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                if prev is not None and v:
                    v = v.exact_div(prev)
                a[i][j] = v
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def signed_maximal_minors(rows: Sequence[Sequence[Poly]]) -> list:
    """For an r × (r+1) matrix, the vector v_i = (-1)^i det(M without column i).

    The vector spans the kernel of the matrix over the fraction field when
    the rank is r.
    """
    r = len(rows)
    c = len(rows[0])
    if c != r + 1:
        raise ValueError("need an r x (r+1) matrix")
    out = []
    for i in range(c):
        sub = [[row[j] for j in range(c) if j != i] for row in rows]
        d = determinant(sub) if r else rows[0][0].ring.one()
        out.append(d if i % 2 == 0 else -d)
    return out


def random_point(field, n: int, rng: random.Random, modulus: int | None = None) -> list:
    if modulus is not None:
        return [rng.randrange(1, modulus) for _ in range(n)]
    return [field.random_element(rng) for _ in range(n)]
