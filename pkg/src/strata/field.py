"""Exact coefficient fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

from fractions import Fraction
import operator
import random


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """A coefficient field.

    Elements are plain Python values: ``Fraction`` for QQ and ``int`` in
    ``range(p)`` for GF(p).  The arithmetic is exposed as attributes
    (``add``, ``mul``, ...) so inner loops can bind them locally.
    """

    __slots__ = ("characteristic", "add", "sub", "mul", "neg", "inv")

    def __init__(self, characteristic: int = 0):
        if characteristic < 0:
            raise FieldError("characteristic must be 0 or a prime")
        if characteristic:
            if characteristic >= 2**31 or not _is_prime(characteristic):
                raise FieldError(f"{characteristic} is not a prime below 2^31")
            p = characteristic
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.mul = lambda a, b: (a * b) % p
            self.neg = lambda a: (-a) % p
            self.inv = lambda a: pow(a, -1, p)
        else:
            self.add = operator.add
            self.sub = operator.sub
            self.mul = operator.mul
            self.neg = operator.neg
            self.inv = lambda a: 1 / Fraction(a)
        self.characteristic = characteristic

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        """Coerce an int, Fraction or ``"a/b"`` string into the field."""
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise FieldError(f"denominator of {value} vanishes mod {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_str(self, a) -> str:
        if self.characteristic:
            return str(a)
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def random_element(self, rng: random.Random, bound: int = 5):
        if self.characteristic:
            return rng.randrange(self.characteristic)
        return Fraction(rng.randint(-bound, bound))

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
