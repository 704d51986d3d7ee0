"""Exact coefficient fields: the rationals and prime fields F_p.

Coefficients are stored as plain Python values (`fractions.Fraction` over Q,
`int` in the range [0, p) over F_p) and every arithmetic operation goes
through the field object, so the rest of the package never needs to know
which field it is working over.  Zero-ness is always testable with `not c`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CoefficientError

# Witnesses making Miller-Rabin deterministic for all n < 3.3 * 10^24,
# which covers every machine-word modulus we accept.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_MAX_MODULUS = 2**63 - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Rationals:
    """The field Q.  Elements are `fractions.Fraction` (always exact)."""

    characteristic = 0

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, q: Fraction) -> Fraction:
        return Fraction(q)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def inv(self, a):
        return self.div(Fraction(1), a)

    def render(self, c) -> str:
        return str(c)

    def is_negative(self, c) -> bool:
        return c < 0

    def abs(self, c):
        return -c if c < 0 else c

    def __str__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p.  Elements are ints in [0, p)."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p <= _MAX_MODULUS:
            raise CoefficientError(f"modulus must be an integer in [2, 2^63): {self.p!r}")
        if not is_prime(self.p):
            raise CoefficientError(f"modulus is not prime: {self.p}")

    @property
    def characteristic(self) -> int:
        return self.p

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_fraction(self, q: Fraction) -> int:
        den = q.denominator % self.p
        if den == 0:
            raise CoefficientError(f"denominator {q.denominator} is zero mod {self.p}")
        return q.numerator * pow(den, self.p - 2, self.p) % self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return a * pow(b, self.p - 2, self.p) % self.p

    def inv(self, a):
        return self.div(1, a)

    def render(self, c) -> str:
        return str(c)

    def is_negative(self, c) -> bool:
        # Elements of F_p are canonical representatives; none render with a sign.
        return False

    def abs(self, c):
        return c

    def __str__(self) -> str:
        return f"F_{self.p}"


FieldSpec = Rationals | PrimeField

QQ = Rationals()


def rationals() -> Rationals:
    return QQ


def prime_field(p: int) -> PrimeField:
    return PrimeField(p)
