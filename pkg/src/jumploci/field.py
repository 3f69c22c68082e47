"""Exact coefficient fields: prime fields GF(p) and the rationals.

Scalars are stored as plain ``int`` (reduced representatives in [0, p) for
GF(p)) or ``fractions.Fraction`` for QQ.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """GF(p) when ``p > 0``, the rationals when ``p == 0``."""

    p: int

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("characteristic must be nonnegative")
        if self.p > 0:
            if not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
            if self.p >= 1 << 31:
                raise ValueError("prime must be < 2^31")

    @property
    def is_prime_field(self) -> bool:
        return self.p > 0

    def coerce(self, x):
        if self.p:
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    def zero(self):
        return 0 if self.p else Fraction(0)

    def one(self):
        return 1 if self.p else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero field element")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def __repr__(self):
        return f"GF({self.p})" if self.p else "QQ"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
