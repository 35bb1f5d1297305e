"""Monomial orders, graded polynomial rings and sparse polynomials.

A monomial is a single Python int.  The low bits hold the raw exponent
vector (one field per variable, variable 0 most significant, each field with
a guard bit); the high bits hold the rows of a nonnegative weight matrix
applied to the exponents.  Because the packing is linear, multiplying
monomials is integer addition, comparing them under the ring's order is
integer comparison, and divisibility is one masked subtraction.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

from .errors import NotHomogeneousError, RingMismatchError, ZeroPolynomialError
from .fields import Field

__all__ = ["MonomialOrder", "PolyRing", "Poly"]

FIELD_BITS = 24
_FIELD_MASK = (1 << (FIELD_BITS - 1)) - 1
MAX_EXPONENT = _FIELD_MASK


class MonomialOrder:
    """A matrix order: compare weight rows in turn, then lexicographically.

    Every row is a nonnegative integer vector.  Ties left after the rows are
    broken lexicographically with variable 0 largest, so any list of rows
    (including none) yields a global monomial order.
    """

    __slots__ = ("name", "rows", "nvars")

    def __init__(self, nvars: int, rows: Sequence[Sequence[int]] = (), name: str = "matrix"):
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        for r in rows:
            if len(r) != nvars:
                raise ValueError("order row has wrong length")
            if min(r, default=0) < 0:
                raise ValueError("order rows must be nonnegative")
        self.nvars = nvars
        self.rows = rows
        self.name = name

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.nvars, self.rows) == (other.nvars, other.rows)

    def __hash__(self):
        return hash((self.nvars, self.rows))

    def __repr__(self):
        return f"MonomialOrder({self.name}, nvars={self.nvars})"

    @classmethod
    def lex(cls, n: int) -> MonomialOrder:
        return cls(n, [], "lex")

    @classmethod
    def grevlex(cls, n: int, weights: Sequence[int] | None = None) -> MonomialOrder:
        """Weighted degree, ties broken reverse-lexicographically (last variable smallest)."""
        w = list(weights) if weights is not None else [1] * n
        rows = [w]
        for k in range(1, n):
            rows.append(w[: n - k] + [0] * k)
        name = "grevlex" if weights is None else "wgrevlex"
        return cls(n, rows, name)

    @classmethod
    def block(cls, blocks: Sequence[MonomialOrder]) -> MonomialOrder:
        """Product order: the first block decides, later blocks break ties."""
        n = sum(b.nvars for b in blocks)
        rows, offset = [], 0
        for b in blocks:
            brows = list(b.rows)
            if b.name == "lex" or not brows:
                brows = [[1 if i == j else 0 for j in range(b.nvars)] for i in range(b.nvars)]
            for r in brows:
                rows.append([0] * offset + list(r) + [0] * (n - offset - b.nvars))
            offset += b.nvars
        return cls(n, rows, "block")

    @classmethod
    def bidegree(cls, nx: int, ny: int) -> MonomialOrder:
        """Compare (x-degree, y-degree) lexicographically, then grevlex."""
        n = nx + ny
        rows = [[1] * nx + [0] * ny, [0] * nx + [1] * ny]
        rows += list(cls.grevlex(n).rows)
        return cls(n, rows, "bidegree")

    @classmethod
    def elimination(cls, n: int, drop: Sequence[int], weights: Sequence[int] | None = None) -> MonomialOrder:
        """Weighted degree first, then degree in the dropped variables, then revlex.

        For ideals homogeneous with respect to ``weights`` this eliminates the
        variables in ``drop``: a homogeneous polynomial whose leading monomial
        avoids them avoids them altogether.
        """
        w = list(weights) if weights is not None else [1] * n
        ind = [1 if i in set(drop) else 0 for i in range(n)]
        rows = [w, ind] + list(cls.grevlex(n, [max(1, v) for v in w]).rows)[1:]
        return cls(n, rows, "elimination")


@functools.lru_cache(maxsize=256)
def _layout(nvars: int, rows: tuple):
    """Per-variable packed unit monomials plus masks for a given order."""
    W = FIELD_BITS
    k = len(rows)
    units = []
    for i in range(nvars):
        u = 1 << ((nvars - 1 - i) * W)
        for j, r in enumerate(rows):
            if r[i]:
                u += r[i] << ((nvars + k - 1 - j) * W)
        units.append(u)
    low = (1 << (nvars * W)) - 1
    guard = 0
    for i in range(nvars):
        guard |= 1 << ((nvars - 1 - i) * W + W - 1)
    shifts = tuple((nvars - 1 - i) * W for i in range(nvars))
    return tuple(units), low, guard, shifts


class PolyRing:
    """A polynomial ring over a field with a monomial order and gradings.

    ``grading`` is a list of nonnegative weight vectors; the first one is
    the primary grading used for degrees and pair selection.  A bigraded ring
    carries two vectors, the indicator of the X block and of the Y block.
    """

    def __init__(
        self,
        field: Field,
        names: Sequence[str] | str,
        order: MonomialOrder | str | None = None,
        grading: Sequence[Sequence[int]] | None = None,
    ):
        if isinstance(names, str):
            names = [s.strip() for s in names.split(",") if s.strip()]
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        n = len(names)
        if order is None or order == "grevlex":
            order = MonomialOrder.grevlex(n)
        elif order == "lex":
            order = MonomialOrder.lex(n)
        if order.nvars != n:
            raise ValueError("order and variable count disagree")
        if grading is None:
            grading = [[1] * n]
        grading = tuple(tuple(int(v) for v in w) for w in grading)
        if any(len(w) != n for w in grading):
            raise ValueError("grading vector has wrong length")
        self.field = field
        self.names = names
        self.order = order
        self.grading = grading
        self.nvars = n
        self._units, self._low, self._guard, self._shifts = _layout(n, order.rows)
        self._key = (field, names, order, grading)
        self._hash = hash(self._key)
        self._index = {name: i for i, name in enumerate(names)}

    @classmethod
    def bigraded(cls, field: Field, xnames: Sequence[str], ynames: Sequence[str], order=None) -> PolyRing:
        nx, ny = len(xnames), len(ynames)
        if order is None:
            order = MonomialOrder.bidegree(nx, ny)
        grading = [[1] * nx + [0] * ny, [0] * nx + [1] * ny]
        return cls(field, list(xnames) + list(ynames), order, grading)

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        return self is other or (isinstance(other, PolyRing) and self._key == other._key)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{self.field}[{','.join(self.names)}]"

    @property
    def is_bigraded(self) -> bool:
        return len(self.grading) == 2

    def with_order(self, order: MonomialOrder, grading=None) -> PolyRing:
        return PolyRing(self.field, self.names, order, self.grading if grading is None else grading)

    def index(self, name: str) -> int:
        return self._index[name]

    # -- monomials ------------------------------------------------------------
    def encode(self, exps: Sequence[int]) -> int:
        m = 0
        for e, u in zip(exps, self._units):
            if e:
                if e < 0 or e > MAX_EXPONENT:
                    raise OverflowError(f"exponent {e} out of range")
                m += e * u
        return m

    def decode(self, m: int) -> tuple:
        return tuple((m >> s) & _FIELD_MASK for s in self._shifts)

    def var_monomial(self, i: int) -> int:
        return self._units[i]

    def divides(self, a: int, b: int) -> bool:
        g = self._guard
        return ((((b & self._low) | g) - (a & self._low)) & g) == g

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.decode(a), self.decode(b)
        return self.encode([x if x > y else y for x, y in zip(ea, eb)])

    def mono_degree(self, m: int, k: int = 0) -> int:
        w = self.grading[k]
        return sum(a * b for a, b in zip(w, self.decode(m)))

    def mono_str(self, m: int) -> str:
        parts = []
        for name, e in zip(self.names, self.decode(m)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # -- elements -------------------------------------------------------------
    def __call__(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.ring == self:
                return value
            return value.to_ring(self)
        if isinstance(value, str):
            from .parser import parse_polynomial

            return parse_polynomial(value, self)
        c = self.field(value)
        return Poly(self, {0: c} if c else {})

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return Poly(self, {0: self.field.one})

    def gen(self, i) -> Poly:
        if isinstance(i, str):
            i = self._index[i]
        return Poly(self, {self._units[i]: self.field.one})

    @property
    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def from_terms(self, terms: Iterable) -> Poly:
        """Build a polynomial from ``(exponents, coefficient)`` pairs."""
        d: dict = {}
        f = self.field
        for exps, c in terms:
            m = self.encode(exps)
            d[m] = d.get(m, 0) + f(c)
        return Poly._clean(self, d)

    def monomial(self, exps: Sequence[int], coeff=1) -> Poly:
        return self.from_terms([(exps, coeff)])


class Poly:
    """An immutable sparse polynomial: ``{packed monomial: coefficient}``."""

    __slots__ = ("ring", "terms", "_lm", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None
        self._hash = None

    @staticmethod
    def _clean(ring: PolyRing, d: dict) -> Poly:
        p = ring.field.p
        if p:
            out = {}
            for m, c in d.items():
                c %= p
                if c:
                    out[m] = c
            return Poly(ring, out)
        return Poly(ring, {m: c for m, c in d.items() if c})

    # -- basic structure ----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    @property
    def lm(self) -> int:
        if self._lm is None:
            if not self.terms:
                raise ZeroPolynomialError("zero polynomial has no leading monomial")
            self._lm = max(self.terms)
        return self._lm

    @property
    def lc(self):
        return self.terms[self.lm]

    def lt(self) -> Poly:
        return Poly(self.ring, {self.lm: self.lc})

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), reverse=True)

    def exponents(self) -> list:
        """``(exponent tuple, coefficient)`` pairs in descending order."""
        dec = self.ring.decode
        return [(dec(m), c) for m, c in self.sorted_terms()]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        fmt = ring.field.format
        out = []
        for m, c in self.sorted_terms():
            cs = fmt(c)
            if m == 0:
                s = cs
            elif cs == "1":
                s = ring.mono_str(m)
            elif cs == "-1":
                s = "-" + ring.mono_str(m)
            else:
                s = cs + "*" + ring.mono_str(m)
            if out and not s.startswith("-"):
                out.append("+")
            out.append(s)
        return "".join(out)

    # -- arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        return self.ring(other)

    def __add__(self, other):
        other = self._coerce(other)
        d = dict(self.terms)
        for m, c in other.terms.items():
            d[m] = d.get(m, 0) + c
        return Poly._clean(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Poly(self.ring, {m: (-c) % p for m, c in self.terms.items()})
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.field(other)
            return self.scale(c)
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        d: dict = {}
        get = d.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                k = m1 + m2
                d[k] = get(k, 0) + c1 * c2
        return Poly._clean(self.ring, d)

    __rmul__ = __mul__

    def scale(self, c) -> Poly:
        p = self.ring.field.p
        if not c:
            return Poly(self.ring, {})
        if p:
            return Poly(self.ring, {m: v * c % p for m, v in self.terms.items()})
        return Poly(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: int, c) -> Poly:
        p = self.ring.field.p
        if p:
            return Poly(self.ring, {m + mono: v * c % p for m, v in self.terms.items()})
        return Poly(self.ring, {m + mono: v * c for m, v in self.terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def monic(self) -> Poly:
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc))

    def exact_div(self, other: Poly) -> Poly:
        """Quotient of an exact division; raises ``ArithmeticError`` otherwise."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroPolynomialError("division by zero polynomial")
        ring = self.ring
        f = ring.field
        p = f.p
        lm_b, inv_lc = other.lm, f.inv(other.lc)
        tail = [(m, c) for m, c in other.terms.items() if m != lm_b]
        rem = dict(self.terms)
        q = {}
        while rem:
            m = max(rem)
            if not ring.divides(lm_b, m):
                raise ArithmeticError("division is not exact")
            c = rem.pop(m) * inv_lc
            if p:
                c %= p
            s = m - lm_b
            q[s] = c
            for mt, ct in tail:
                k = mt + s
                v = rem.get(k, 0) - c * ct
                if p:
                    v %= p
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return Poly(ring, q)

    # -- degrees ----------------------------------------------------------------
    def degree(self, k: int = 0) -> int:
        """Maximum degree of a term under grading ``k``."""
        if not self.terms:
            return -1
        md = self.ring.mono_degree
        return max(md(m, k) for m in self.terms)

    def is_homogeneous(self, k: int | None = None) -> bool:
        ks = range(len(self.ring.grading)) if k is None else [k]
        md = self.ring.mono_degree
        for kk in ks:
            if len({md(m, kk) for m in self.terms}) > 1:
                return False
        return True

    def multidegree(self) -> tuple:
        """Common degree under every grading of the ring."""
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no degree")
        if not self.is_homogeneous():
            raise NotHomogeneousError(f"{self} is not homogeneous")
        m = next(iter(self.terms))
        return tuple(self.ring.mono_degree(m, k) for k in range(len(self.ring.grading)))

    def bidegree(self) -> tuple:
        if not self.ring.is_bigraded:
            raise RingMismatchError("bidegree needs a bigraded ring")
        return self.multidegree()

    def variables(self) -> set:
        used = set()
        for m in self.terms:
            for i, e in enumerate(self.ring.decode(m)):
                if e:
                    used.add(i)
        return used

    # -- maps -----------------------------------------------------------------------
    def to_ring(self, ring: PolyRing, mapping: Sequence[int] | None = None) -> Poly:
        """Move into ``ring``, matching variables by name (or via ``mapping``)."""
        src = self.ring
        if mapping is None:
            try:
                mapping = [ring.index(n) for n in src.names]
            except KeyError as exc:
                raise RingMismatchError(f"variable {exc} missing from {ring}") from None
        if ring.field != src.field:
            raise RingMismatchError("fields differ")
        units = [ring.var_monomial(j) for j in mapping]
        d = {}
        for m, c in self.terms.items():
            e = src.decode(m)
            nm = 0
            for ei, u in zip(e, units):
                if ei:
                    nm += ei * u
            d[nm] = c
        return Poly(ring, d)

    def substitute(self, images: Sequence[Poly]) -> Poly:
        """Replace variable ``i`` by ``images[i]`` and expand."""
        src = self.ring
        if len(images) != src.nvars:
            raise ValueError(f"need {src.nvars} images, got {len(images)}")
        images = list(images)
        target = images[0].ring if images else src
        for img in images:
            if img.ring != target:
                raise RingMismatchError("images live in different rings")
        cache: list = [dict() for _ in images]

        def power(i, e):
            c = cache[i]
            if e not in c:
                if e == 1:
                    c[e] = images[i]
                elif e % 2 == 0:
                    h = power(i, e // 2)
                    c[e] = h * h
                else:
                    c[e] = power(i, e - 1) * images[i]
            return c[e]

        items = [(src.decode(m), c) for m, c in self.terms.items()]
        n = src.nvars

        def rec(group, i):
            if i == n or len(group) == 1:
                acc = target.zero()
                for e, c in group:
                    t = target(c)
                    for j in range(i, n):
                        if e[j]:
                            t = t * power(j, e[j])
                    acc = acc + t
                return acc
            buckets: dict = {}
            for e, c in group:
                buckets.setdefault(e[i], []).append((e, c))
            acc = target.zero()
            for ei, sub in buckets.items():
                part = rec(sub, i + 1)
                if ei:
                    part = part * power(i, ei)
                acc = acc + part
            return acc

        if not items:
            return target.zero()
        return rec(items, 0)

    def evaluate(self, point: Sequence) -> object:
        """Value at a point of field elements."""
        f = self.ring.field
        p = f.p
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, self.ring.decode(m)):
                if e:
                    v = v * (pow(x, e, p) if p else x**e)
            total += v
        return total % p if p else total

    def diff(self, i: int) -> Poly:
        ring = self.ring
        u = ring.var_monomial(i)
        p = ring.field.p
        d = {}
        for m, c in self.terms.items():
            e = ring.decode(m)[i]
            if e:
                v = c * e
                if p:
                    v %= p
                if v:
                    d[m - u] = v
        return Poly(ring, d)
