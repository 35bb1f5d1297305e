"""Exact coefficient fields: prime fields GF(p) and the rationals.

Elements of GF(p) are plain Python ints in ``[0, p)``; rationals are
``gmpy2.mpq`` values, which gmpy2 keeps in lowest terms with a positive
denominator.  Hot loops elsewhere in the package special-case on ``field.p``
instead of going through method calls.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2

__all__ = ["Field", "QQ", "GF", "is_prime"]


def is_prime(n: int) -> bool:
    return n >= 2 and bool(gmpy2.is_prime(n))


class Field:
    """A coefficient field; ``p == 0`` means the rationals."""

    __slots__ = ("p", "_hash")

    def __init__(self, p: int = 0):
        if p:
            if not is_prime(p):
                raise ValueError(f"GF({p}): modulus is not prime")
            if p >= 2**31:
                raise ValueError(f"GF({p}): modulus must be below 2^31")
        self.p = p
        self._hash = hash(("Field", p))

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"GF({self.p})" if self.p else "QQ"

    __str__ = __repr__

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self):
        return 0 if self.p else gmpy2.mpq(0)

    @property
    def one(self):
        return 1 if self.p else gmpy2.mpq(1)

    def __call__(self, value):
        """Coerce an int, Fraction, mpq or ``"a/b"`` string into the field."""
        p = self.p
        if isinstance(value, str):
            value = Fraction(value)
        if p:
            if isinstance(value, int):
                return value % p
            q = Fraction(value)
            den = q.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator {q.denominator} vanishes in GF({p})")
            return q.numerator * pow(den, -1, p) % p
        if isinstance(value, Fraction):
            return gmpy2.mpq(value.numerator, value.denominator)
        return gmpy2.mpq(value)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_one(self, a) -> bool:
        return a == 1

    def to_fraction(self, a) -> Fraction:
        if self.p:
            return Fraction(int(a))
        return Fraction(int(a.numerator), int(a.denominator))

    def format(self, a) -> str:
        """Canonical text for a coefficient (least residue over GF(p))."""
        if self.p:
            return str(int(a))
        num, den = int(a.numerator), int(a.denominator)
        return str(num) if den == 1 else f"{num}/{den}"

    def random_element(self, rng, bound: int = 1000):
        if self.p:
            return rng.randrange(self.p)
        return gmpy2.mpq(rng.randint(-bound, bound))


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
