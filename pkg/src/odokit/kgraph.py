"""Standard product of odometers as a single-vertex k-graph.

A path of degree ``p`` is encoded by an integer in ``[0, weight(p))`` where
``weight(p) = prod(n_i ** p_i)``.  Composition is mixed-radix concatenation,
``value(mu nu) = value(mu) + value(nu) * weight(d(mu))``, which is exactly the
commutation rule ``s + t*n_i = t' + s'*n_j`` extended to all degrees.  The
odometer action of ``Z`` is addition with carry; the carry out of the block is
the restriction ``g|_mu``.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product
from typing import Iterator, Sequence

from odokit.report import Report

Degree = tuple[int, ...]


class KGraphError(ValueError):
    pass


class InvalidSpecError(KGraphError):
    pass


class InvalidDegreeError(KGraphError):
    pass


class InvalidDigitError(KGraphError):
    pass


class InvalidSplitError(KGraphError):
    pass


class InvalidOrderError(KGraphError):
    pass


@dataclass(frozen=True)
class OdometerSpec:
    moduli: tuple[int, ...]

    def __init__(self, moduli: Sequence[int]):
        mods = tuple(int(n) for n in moduli)
        if not mods:
            raise InvalidSpecError("need at least one modulus (k >= 1)")
        bad = [n for n in mods if n < 2]
        if bad:
            raise InvalidSpecError(f"every modulus must be >= 2, got {bad}")
        object.__setattr__(self, "moduli", mods)

    @property
    def k(self) -> int:
        return len(self.moduli)

    @property
    def N(self) -> int:
        """Product of the moduli; the number of paths of degree (1,...,1)."""
        return math.prod(self.moduli)

    def zero(self) -> Degree:
        return (0,) * self.k

    def unit(self, i: int) -> Degree:
        """The basis degree e_i, colors numbered from 1."""
        if not 1 <= i <= self.k:
            raise InvalidDegreeError(f"color {i} out of range 1..{self.k}")
        return tuple(1 if j == i - 1 else 0 for j in range(self.k))

    def vertex(self) -> PathWord:
        return PathWord(self, self.zero(), 0)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.moduli)) + ")"


def _check_degree(spec: OdometerSpec, p: Sequence[int]) -> Degree:
    return _valid_degree(spec.k, p if type(p) is tuple else tuple(p))


@lru_cache(maxsize=8192)
def _valid_degree(k: int, p: tuple) -> Degree:
    p = tuple(int(x) for x in p)
    if len(p) != k:
        raise InvalidDegreeError(f"degree {p} has length {len(p)}, expected {k}")
    if any(x < 0 for x in p):
        raise InvalidDegreeError(f"degree {p} has a negative entry")
    return p


def weight(spec: OdometerSpec, p: Sequence[int]) -> int:
    """Number of paths of degree ``p``."""
    return _weight(spec.moduli, _check_degree(spec, p))


@lru_cache(maxsize=4096)
def _weight(moduli: tuple[int, ...], p: Degree) -> int:
    return math.prod(n**e for n, e in zip(moduli, p))


@dataclass(frozen=True)
class PathWord:
    spec: OdometerSpec
    degree: Degree
    value: int

    def __post_init__(self):
        deg = _check_degree(self.spec, self.degree)
        object.__setattr__(self, "degree", deg)
        w = _weight(self.spec.moduli, deg)
        if not 0 <= self.value < w:
            raise InvalidDigitError(f"value {self.value} outside [0, {w}) for degree {deg}")

    @property
    def weight(self) -> int:
        return _weight(self.spec.moduli, self.degree)

    def is_vertex(self) -> bool:
        return not any(self.degree)

    def __str__(self) -> str:
        return format_path(self)


def edge(spec: OdometerSpec, i: int, s: int) -> PathWord:
    """The edge x_s^i of color ``i`` (1-based) and digit ``s``."""
    e = spec.unit(i)
    if not 0 <= s < spec.moduli[i - 1]:
        raise InvalidDigitError(f"digit {s} out of range for color {i} (modulus {spec.moduli[i - 1]})")
    return PathWord(spec, e, s)


def compose(mu: PathWord, nu: PathWord) -> PathWord:
    if mu.spec != nu.spec:
        raise KGraphError("paths come from different odometer specs")
    deg = tuple(a + b for a, b in zip(mu.degree, nu.degree))
    return PathWord(mu.spec, deg, mu.value + nu.value * mu.weight)


def factorize(mu: PathWord, a: Sequence[int]) -> tuple[PathWord, PathWord]:
    """Unique split of ``mu`` into a head of degree ``a`` and the remaining tail."""
    spec = mu.spec
    a = _check_degree(spec, a)
    if any(x > y for x, y in zip(a, mu.degree)):
        raise InvalidSplitError(f"split degree {a} is not <= {mu.degree}")
    rest = tuple(y - x for x, y in zip(a, mu.degree))
    q, r = divmod(mu.value, weight(spec, a))
    return PathWord(spec, a, r), PathWord(spec, rest, q)


def digits(mu: PathWord, color_order: Sequence[int]) -> list[tuple[int, int]]:
    """Peel single edges off ``mu`` in the given color order, returning (color, digit) pairs."""
    spec = mu.spec
    counts = [0] * spec.k
    for c in color_order:
        if not 1 <= c <= spec.k:
            raise InvalidOrderError(f"color {c} out of range 1..{spec.k}")
        counts[c - 1] += 1
    if tuple(counts) != mu.degree:
        raise InvalidOrderError(f"color order {list(color_order)} does not match degree {mu.degree}")
    out = []
    rest = mu
    for c in color_order:
        head, rest = factorize(rest, spec.unit(c))
        out.append((c, head.value))
    return out


def from_digits(spec: OdometerSpec, seq: Sequence[tuple[int, int]]) -> PathWord:
    return reduce(compose, (edge(spec, c, s) for c, s in seq), spec.vertex())


def act(g: int, mu: PathWord) -> tuple[PathWord, int]:
    """Return ``(g . mu, g|_mu)``: add ``g`` with carry inside the block of ``mu``."""
    q, r = divmod(mu.value + g, mu.weight)
    return PathWord(mu.spec, mu.degree, r), q


def g_lambda(spec: OdometerSpec) -> int:
    return math.gcd(*(n - 1 for n in spec.moduli))


def paths_of_degree(spec: OdometerSpec, p: Sequence[int]) -> Iterator[PathWord]:
    p = _check_degree(spec, p)
    for v in range(weight(spec, p)):
        yield PathWord(spec, p, v)


def degrees_upto(spec: OdometerSpec, cap: int) -> Iterator[Degree]:
    yield from product(range(cap + 1), repeat=spec.k)


_PATH_RE = re.compile(r"^\s*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*,?\s*\)\s*:\s*(\d+)\s*$")


def parse_path(spec: OdometerSpec, text: str) -> PathWord:
    """Parse the ``(p1,...,pk):value`` syntax."""
    m = _PATH_RE.match(text)
    if not m:
        raise KGraphError(f"malformed path {text!r}; expected '(p1,...,pk):value'")
    deg = tuple(int(x) for x in m.group(1).split(","))
    return PathWord(spec, deg, int(m.group(2)))


def format_path(mu: PathWord) -> str:
    return "(" + ",".join(map(str, mu.degree)) + f"):{mu.value}"


def parse_degree(spec: OdometerSpec, text: str) -> Degree:
    """Accept ``e2``, ``0`` or an explicit ``(a,b,...)`` tuple."""
    t = text.strip()
    if re.fullmatch(r"e\d+", t):
        return spec.unit(int(t[1:]))
    if t == "0":
        return spec.zero()
    m = re.fullmatch(r"\(?\s*(\d+(?:\s*,\s*\d+)*)\s*\)?", t)
    if not m:
        raise KGraphError(f"malformed degree {text!r}")
    return _check_degree(spec, [int(x) for x in m.group(1).split(",")])


def _random_path(spec: OdometerSpec, rng: random.Random, cap: int) -> PathWord:
    deg = tuple(rng.randint(0, cap) for _ in range(spec.k))
    return PathWord(spec, deg, rng.randrange(weight(spec, deg)))


def check_axioms(
    spec: OdometerSpec,
    sample_count: int,
    seed: int = 0,
    degree_cap: int = 3,
    g_bound: int | None = None,
) -> Report:
    """Sample (g, h, mu, nu) and test the seven self-similarity conditions.

    ``g`` and ``h`` are drawn from ``[-B, B]`` where ``B`` is ``g_bound`` if
    given, otherwise the weight of the degree of ``mu`` (so multi-carry cases
    are hit).  ``g_bound=0`` restricts sampling to the identity.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    rng = random.Random(seed)
    vertex = spec.vertex()
    names = [
        "(1) degree preservation",
        "(2) source/range equivariance",
        "(3) action on composites",
        "(4) restriction to the vertex",
        "(5) restriction cocycle",
        "(6) unit restriction",
        "(7) chain rule",
    ]
    bad: dict[str, dict] = {}

    def fail(name: str, **ce):
        bad.setdefault(name, {k: _show(v) for k, v in ce.items()})

    for _ in range(sample_count):
        mu = _random_path(spec, rng, degree_cap)
        nu = _random_path(spec, rng, degree_cap)
        bound = mu.weight if g_bound is None else g_bound
        g = rng.randint(-bound, bound)
        h = rng.randint(-bound, bound)

        gmu, g_mu = act(g, mu)
        if gmu.degree != mu.degree:
            fail(names[0], g=g, mu=mu)
        gv, g_v = act(g, vertex)
        if gv != vertex:
            fail(names[1], g=g)
        mn = compose(mu, nu)
        lhs, g_mn = act(g, mn)
        rhs = compose(gmu, act(g_mu, nu)[0])
        if lhs != rhs:
            fail(names[2], g=g, mu=mu, nu=nu)
        if g_v != g:
            fail(names[3], g=g)
        if g_mn != act(g_mu, nu)[1]:
            fail(names[4], g=g, mu=mu, nu=nu)
        if act(0, mu) != (mu, 0):
            fail(names[5], mu=mu)
        hmu, h_mu = act(h, mu)
        if act(g + h, mu)[1] != act(g, hmu)[1] + h_mu:
            fail(names[6], g=g, h=h, mu=mu)

    report = Report()
    for name in names:
        report.add(name, name not in bad, {"samples": sample_count, "seed": seed}, bad.get(name))
    return report


def _show(v):
    return format_path(v) if isinstance(v, PathWord) else v
