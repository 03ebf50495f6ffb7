"""Smith normal form over Z, and elementary divisors over Z[1/N]."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from odokit.ktheory.localized import LocalizedRing


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, data: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        ent = tuple(tuple(int(x) for x in row) for row in data)
        ncols = cols if cols is not None else (len(ent[0]) if ent else 0)
        if any(len(r) != ncols for r in ent):
            raise ValueError("ragged matrix")
        return cls(len(ent), ncols, ent)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.of([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls.of([[0] * cols for _ in range(rows)], cols=cols)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols_t = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix.of(
            [[sum(a * b for a, b in zip(row, col)) for col in cols_t] for row in self.entries],
            cols=other.cols,
        )

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class SNF:
    divisors: tuple[int, ...]
    U: IntMatrix | None
    V: IntMatrix | None
    D: IntMatrix

    def certify(self, M: IntMatrix) -> bool:
        """Check U M V == D, D diagonal with the divisors, and the divisibility chain."""
        if self.U is None or self.V is None:
            raise ValueError("transforms were not tracked")
        if self.U @ M @ self.V != self.D:
            return False
        for i in range(self.D.rows):
            for j in range(self.D.cols):
                want = self.divisors[i] if i == j and i < len(self.divisors) else 0
                if self.D.entries[i][j] != want:
                    return False
        return all(b % a == 0 for a, b in zip(self.divisors, self.divisors[1:])) and all(
            d > 0 for d in self.divisors
        )


def smith_normal_form(M: IntMatrix | Sequence[Sequence[int]], transforms: bool = True) -> SNF:
    """Diagonalize by unimodular row and column operations.

    First phase: pivot on the entry of least absolute value and clear its row
    and column (Euclid steps when the pivot does not divide).  Second phase:
    repair the divisibility chain on the diagonal with 2x2 gcd/lcm moves.
    """
    if not isinstance(M, IntMatrix):
        M = IntMatrix.of(M)
    m, n = M.rows, M.cols
    A = [list(r) for r in M.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None
    t = 0

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        # columns left of the pivot are already zero in both rows
        rd, rs = A[dst], A[src]
        rd[t:] = [a + q * b if b else a for a, b in zip(rd[t:], rs[t:])]
        if U is not None:
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in range(t, m):
            row = A[r]
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                row[dst] += q * row[src]

    while t < min(m, n):
        best, best_abs = None, None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best_abs is None or abs(x) < best_abs):
                    best, best_abs = (i, j), abs(x)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            rows = [i for i in range(t + 1, m) if A[i][t]]
            if rows:
                for i in rows:
                    add_row(i, t, -_nearest(A[i][t], A[t][t]))
                small = min((i for i in rows if A[i][t]), key=lambda i: abs(A[i][t]), default=None)
                if small is not None:
                    swap_rows(t, small)
                continue
            cols = [j for j in range(t + 1, n) if A[t][j]]
            if cols:
                for j in cols:
                    add_col(j, t, -_nearest(A[t][j], A[t][t]))
                small = min((j for j in cols if A[t][j]), key=lambda j: abs(A[t][j]), default=None)
                if small is not None:
                    swap_cols(t, small)
                continue
            break
        t += 1

    for i in range(t):
        for j in range(i + 1, t):
            a, b = A[i][i], A[j][j]
            if b % a == 0:
                continue
            g, s_, t_ = _xgcd(a, b)
            A[i][i], A[j][j] = g, a * b // g
            if transforms:
                # rows: [[s, t], [-b/g, a/g]];  columns: [[1, -t b/g], [1, s a/g]]
                ri, rj = U[i], U[j]
                U[i] = [s_ * x + t_ * y for x, y in zip(ri, rj)]
                U[j] = [-(b // g) * x + (a // g) * y for x, y in zip(ri, rj)]
                for row in V:
                    ci, cj = row[i], row[j]
                    row[i] = ci + cj
                    row[j] = -(t_ * b // g) * ci + (s_ * a // g) * cj
    for i in range(t):
        if A[i][i] < 0:
            A[i][i] = -A[i][i]
            if U is not None:
                U[i] = [-x for x in U[i]]

    divisors = tuple(A[i][i] for i in range(t))
    return SNF(
        divisors,
        IntMatrix.of(U, cols=m) if U is not None else None,
        IntMatrix.of(V, cols=n) if V is not None else None,
        IntMatrix.of(A, cols=n),
    )


def _nearest(b: int, a: int) -> int:
    """Quotient of b by a rounded to nearest, so the remainder is at most |a|/2."""
    q, r = divmod(b, a)
    if 2 * abs(r) > abs(a):
        q += 1
    return q


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def clear_denominators(M: Sequence[Sequence], ring: LocalizedRing) -> IntMatrix:
    """Scale each row by the lcm of its denominators (a unit of Z[1/N]) to make it integral."""
    out = []
    for row in M:
        row = [Fraction(x) for x in row]
        for x in row:
            if not ring.contains(x):
                raise ValueError(f"entry {x} is not in {ring}")
        L = math.lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * L) for x in row])
    cols = len(M[0]) if len(M) else 0
    return IntMatrix.of(out, cols=cols)


def localized_divisors(M: Sequence[Sequence], ring: LocalizedRing) -> list[int]:
    """Elementary divisors over Z[1/N], normalized to positive integers coprime to N.

    The list has one entry per unit of rank; entries equal to 1 are units.
    """
    snf = smith_normal_form(clear_denominators(M, ring), transforms=False)
    return [ring.strip(d) for d in snf.divisors]
