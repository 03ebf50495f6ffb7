"""Finitely generated abelian groups in invariant-factor form."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from odokit.ktheory.localized import prime_factors


def _prime_powers(d: int) -> list[tuple[int, int]]:
    out = []
    for p in prime_factors(d):
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        out.append((p, e))
    return out


def invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Rewrite a direct sum of cyclic groups Z/d as a divisibility chain d1 | d2 | ..."""
    by_prime: dict[int, list[int]] = defaultdict(list)
    for d in orders:
        d = abs(d)
        if d == 0:
            raise ValueError("Z/0 is free, not torsion")
        for p, e in _prime_powers(d):
            by_prime[p].append(e)
    if not by_prime:
        return ()
    length = max(len(v) for v in by_prime.values())
    chain = [1] * length
    for p, exps in by_prime.items():
        exps = sorted(exps, reverse=True)
        for i, e in enumerate(exps):
            chain[length - 1 - i] *= p**e
    return tuple(chain)


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be >= 0")
        chain = tuple(self.invariant_factors)
        if any(d < 2 for d in chain):
            raise ValueError(f"invariant factors must be >= 2: {chain}")
        if any(b % a for a, b in zip(chain, chain[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain: {chain}")
        object.__setattr__(self, "invariant_factors", chain)

    @classmethod
    def from_cyclic(cls, free_rank: int, orders: Iterable[int]) -> AbelianGroup:
        """Build from arbitrary cyclic orders; orders equal to 1 are dropped."""
        return cls(free_rank, invariant_factors(d for d in orders if abs(d) != 1))

    def __add__(self, other: AbelianGroup) -> AbelianGroup:
        return AbelianGroup.from_cyclic(
            self.free_rank + other.free_rank, self.invariant_factors + other.invariant_factors
        )

    def power(self, n: int) -> AbelianGroup:
        out = AbelianGroup()
        for _ in range(n):
            out = out + self
        return out

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.invariant_factors)}

    @classmethod
    def from_dict(cls, data: dict) -> AbelianGroup:
        return cls(data["free_rank"], tuple(data["torsion"]))

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        run: list[int] = []
        for d in self.invariant_factors:
            if run and run[-1] != d:
                parts.append(_cyc(run[-1], len(run)))
                run = []
            run.append(d)
        if run:
            parts.append(_cyc(run[-1], len(run)))
        return " + ".join(parts) if parts else "0"


def _cyc(d: int, mult: int) -> str:
    return f"Z/{d}" if mult == 1 else f"(Z/{d})^{mult}"


def cyclic(d: int) -> AbelianGroup:
    return AbelianGroup.from_cyclic(0, [d])


def free(r: int) -> AbelianGroup:
    return AbelianGroup(r)
