"""The localization Z[1/N] and its elements num / N**exp."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct primes of ``n`` by trial division."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


@dataclass(frozen=True)
class LocalizedRing:
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")

    @cached_property
    def primes(self) -> tuple[int, ...]:
        return prime_factors(self.N)

    def strip(self, d: int) -> int:
        """Remove every prime of N from ``d``; the result generates the same ideal of Z[1/N]."""
        d = abs(d)
        if d == 0:
            return 0
        for p in self.primes:
            while d % p == 0:
                d //= p
        return d

    def is_unit(self, x) -> bool:
        x = Fraction(x)
        return x != 0 and self.strip(x.numerator) == 1 and self.strip(x.denominator) == 1

    def contains(self, x) -> bool:
        return self.strip(Fraction(x).denominator) == 1

    def canonical(self) -> tuple[int, ...]:
        """Z[1/N] depends only on the primes of N."""
        return self.primes

    def __str__(self) -> str:
        return "Z" if self.N == 1 else f"Z[1/{self.N}]"


@dataclass(frozen=True)
class LocalizedScalar:
    """``num / N**exp`` with ``exp`` as small as possible."""

    num: int
    exp: int
    N: int

    def __post_init__(self):
        if self.exp < 0:
            raise ValueError("exponent must be >= 0")
        num, exp = self.num, self.exp
        if self.N > 1:
            while exp > 0 and num % self.N == 0:
                num //= self.N
                exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    @classmethod
    def from_fraction(cls, x, N: int) -> LocalizedScalar:
        x = Fraction(x)
        if not LocalizedRing(N).contains(x):
            raise ValueError(f"{x} is not in Z[1/{N}]")
        exp = 0
        while N**exp % x.denominator:
            exp += 1
        return cls(int(x * N**exp), exp, N)

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.N**self.exp)

    def __mul__(self, other: LocalizedScalar) -> LocalizedScalar:
        self._same_ring(other)
        return LocalizedScalar(self.num * other.num, self.exp + other.exp, self.N)

    def __add__(self, other: LocalizedScalar) -> LocalizedScalar:
        self._same_ring(other)
        e = max(self.exp, other.exp)
        return LocalizedScalar(
            self.num * self.N ** (e - self.exp) + other.num * self.N ** (e - other.exp), e, self.N
        )

    def __neg__(self) -> LocalizedScalar:
        return LocalizedScalar(-self.num, self.exp, self.N)

    def _same_ring(self, other: LocalizedScalar) -> None:
        if self.N != other.N:
            raise ValueError("scalars live in different localizations")

    def to_dict(self) -> dict[str, int]:
        return {"num": self.num, "exp": self.exp, "N": self.N}

    def __str__(self) -> str:
        return str(self.to_fraction())
