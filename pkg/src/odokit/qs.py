"""Exact model of the Q_S generators as affine partial bijections of Z.

The canonical representation on l^2(Z) sends ``u`` to ``x -> x + 1`` and
``s_n`` to ``x -> n x``.  Every monomial in the generators and their adjoints
is then a map ``x -> a x + b`` defined on a single residue class, so operator
identities between orthogonal sums of monomials reduce to identities of
partial maps, which are decidable exactly.

Words are read as operator products: the leftmost letter is applied last.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from odokit import kgraph
from odokit.kgraph import OdometerSpec, PathWord
from odokit.report import Report


class NotAPartialIsometryError(ValueError):
    pass


@dataclass(frozen=True)
class ResidueClass:
    modulus: int
    residue: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def __contains__(self, x: int) -> bool:
        return (x - self.residue) % self.modulus == 0

    def intersect(self, other: ResidueClass) -> ResidueClass | None:
        return _crt(self, other)

    def disjoint(self, other: ResidueClass) -> bool:
        return (self.residue - other.residue) % math.gcd(self.modulus, other.modulus) != 0

    def __str__(self) -> str:
        return f"{self.residue} mod {self.modulus}"


ZZ = ResidueClass(1, 0)


def _crt(a: ResidueClass, b: ResidueClass) -> ResidueClass | None:
    g = math.gcd(a.modulus, b.modulus)
    diff = b.residue - a.residue
    if diff % g:
        return None
    m = a.modulus // g
    # a.residue + a.modulus * t = b.residue (mod b.modulus)
    t = (diff // g) * pow(m, -1, b.modulus // g) if b.modulus // g > 1 else 0
    lcm = a.modulus * (b.modulus // g)
    return ResidueClass(lcm, a.residue + a.modulus * t)


@dataclass(frozen=True)
class AffinePartialMap:
    """``x -> slope*x + offset`` on ``domain``; ``domain=None`` is the empty map."""

    slope: Fraction
    offset: Fraction
    domain: ResidueClass | None

    def __post_init__(self):
        if self.domain is None:
            object.__setattr__(self, "slope", Fraction(1))
            object.__setattr__(self, "offset", Fraction(0))
            return
        slope, offset = Fraction(self.slope), Fraction(self.offset)
        if slope <= 0:
            raise ValueError("slope must be positive")
        if (slope * self.domain.modulus).denominator != 1:
            raise ValueError("slope times the domain modulus must be an integer")
        if (slope * self.domain.residue + offset).denominator != 1:
            raise ValueError("map does not send its domain into Z")
        object.__setattr__(self, "slope", slope)
        object.__setattr__(self, "offset", offset)

    @property
    def is_empty(self) -> bool:
        return self.domain is None

    @property
    def image(self) -> ResidueClass | None:
        if self.domain is None:
            return None
        d = self.domain
        return ResidueClass(int(self.slope * d.modulus), int(self.slope * d.residue + self.offset))

    def __call__(self, x: int) -> int | None:
        if self.domain is None or x not in self.domain:
            return None
        return int(self.slope * x + self.offset)

    def __matmul__(self, other: AffinePartialMap) -> AffinePartialMap:
        return compose_maps(self, other)

    def __str__(self) -> str:
        if self.domain is None:
            return "0"
        lin = "x" if self.slope == 1 else f"{self.slope}x"
        off = f" + {self.offset}" if self.offset > 0 else (f" - {-self.offset}" if self.offset < 0 else "")
        return f"x -> {lin}{off} on {self.domain}"


EMPTY = AffinePartialMap(Fraction(1), Fraction(0), None)
IDENTITY = AffinePartialMap(Fraction(1), Fraction(0), ZZ)


def affine(slope, offset, modulus: int = 1, residue: int = 0) -> AffinePartialMap:
    return AffinePartialMap(Fraction(slope), Fraction(offset), ResidueClass(modulus, residue))


def u_power(z: int) -> AffinePartialMap:
    return affine(1, z)


def compose_maps(f: AffinePartialMap, g: AffinePartialMap) -> AffinePartialMap:
    """``f o g`` on ``g^{-1}(dom f)``."""
    if f.is_empty or g.is_empty:
        return EMPTY
    meet = _crt(g.image, f.domain)
    if meet is None:
        return EMPTY
    # pull the residue class back through g
    gd = g.domain
    step = int(g.slope * gd.modulus)
    t = (meet.residue - int(g.slope * gd.residue + g.offset)) // step
    mod = gd.modulus * (meet.modulus // step)
    dom = ResidueClass(mod, gd.residue + gd.modulus * t)
    return AffinePartialMap(f.slope * g.slope, f.slope * g.offset + f.offset, dom)


def adjoint(m: AffinePartialMap) -> AffinePartialMap:
    if m.is_empty:
        return EMPTY
    return AffinePartialMap(1 / m.slope, -m.offset / m.slope, m.image)


@dataclass(frozen=True)
class Letter:
    gen: str  # "u" or "s"
    n: int | None = None
    star: bool = False

    def __post_init__(self):
        if self.gen not in ("u", "s"):
            raise ValueError(f"unknown generator {self.gen!r}")
        if self.gen == "s" and (self.n is None or self.n < 2):
            raise ValueError("s_n needs n >= 2")

    def adjoint(self) -> Letter:
        return Letter(self.gen, self.n, not self.star)

    def __str__(self) -> str:
        base = "u" if self.gen == "u" else f"s{self.n}"
        return base + ("*" if self.star else "")


Word = Sequence[Letter]

_LETTER_RE = re.compile(r"^(u|s_?(\d+))(\*?)$")


def parse_letter(text: str) -> Letter:
    m = _LETTER_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad letter {text!r}; expected u, u*, sN or sN*")
    if m.group(1) == "u":
        return Letter("u", None, bool(m.group(3)))
    return Letter("s", int(m.group(2)), bool(m.group(3)))


def parse_word(text: str) -> list[Letter]:
    return [parse_letter(t) for t in text.replace(",", " ").split()]


def u_letters(z: int) -> list[Letter]:
    return [Letter("u", None, z < 0)] * abs(z)


def word_adjoint(w: Word) -> list[Letter]:
    return [x.adjoint() for x in reversed(w)]


def eval_letter(letter: Letter) -> AffinePartialMap:
    if letter.gen == "u":
        return u_power(-1 if letter.star else 1)
    if letter.star:
        return affine(Fraction(1, letter.n), 0, letter.n, 0)
    return affine(letter.n, 0)


def eval_word(w: Word) -> AffinePartialMap:
    out, shift = IDENTITY, 0
    for x in w:
        # a run of u, u* letters is a single translation
        if x.gen == "u":
            shift += -1 if x.star else 1
            continue
        if shift:
            out, shift = compose_maps(out, u_power(shift)), 0
        out = compose_maps(out, eval_letter(x))
    return compose_maps(out, u_power(shift)) if shift else out


class MapSum:
    """Finite orthogonal sum of monomials: domains and images pairwise disjoint."""

    def __init__(self, summands: Iterable[AffinePartialMap]):
        parts = tuple(m for m in summands if not m.is_empty)
        for i, a in enumerate(parts):
            for b in parts[i + 1:]:
                if not a.domain.disjoint(b.domain):
                    raise NotAPartialIsometryError(f"overlapping domains: {a} / {b}")
                if not a.image.disjoint(b.image):
                    raise NotAPartialIsometryError(f"overlapping images: {a} / {b}")
        self.summands = parts

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def piece_at(self, x: int) -> AffinePartialMap | None:
        for m in self.summands:
            if x in m.domain:
                return m
        return None

    def __repr__(self) -> str:
        return "MapSum(" + ", ".join(map(str, self.summands)) + ")"


def _as_sum(a) -> MapSum:
    if isinstance(a, MapSum):
        return a
    if isinstance(a, AffinePartialMap):
        return MapSum([a])
    return MapSum(a)


def sum_equal(a, b) -> bool:
    """Exact equality of two orthogonal monomial sums as partial functions on Z.

    Every domain is a union of classes mod L (the lcm of all domain moduli), and
    on each such class both sides are affine or undefined, so comparing the
    (slope, offset) pair per residue decides equality.
    """
    a, b = _as_sum(a), _as_sum(b)
    moduli = [m.domain.modulus for m in (*a, *b)]
    L = math.lcm(*moduli) if moduli else 1
    for rho in range(L):
        pa, pb = a.piece_at(rho), b.piece_at(rho)
        if (pa is None) != (pb is None):
            return False
        if pa is not None and (pa.slope, pa.offset) != (pb.slope, pb.offset):
            return False
    return True


# relation checks


def _s(n: int) -> Letter:
    return Letter("s", n)


def verify_qs_relations(S: Iterable[int]) -> Report:
    S = sorted(set(S))
    if not S or any(n < 2 for n in S):
        raise ValueError("S must be a nonempty set of integers >= 2")
    report = Report()
    bad1 = bad2 = bad3 = None
    for n in S:
        for m in S:
            if not sum_equal(eval_word([_s(n), _s(m)]), eval_word([_s(m), _s(n)])):
                bad1 = bad1 or {"n": n, "m": m}
        if not sum_equal(eval_word([_s(n), Letter("u")]), eval_word(u_letters(n) + [_s(n)])):
            bad2 = bad2 or {"n": n}
        ranges = [eval_word(u_letters(i) + [_s(n)]).image for i in range(n)]
        partition = all(r == ResidueClass(n, i) for i, r in enumerate(ranges))
        projections = [eval_word(u_letters(i) + [_s(n), _s(n).adjoint()] + u_letters(-i)) for i in range(n)]
        try:
            covers = sum_equal(MapSum(projections), IDENTITY)
        except NotAPartialIsometryError:
            covers = False
        if not (partition and covers):
            bad3 = bad3 or {"n": n, "ranges": [str(r) for r in ranges]}
    report.add("(1) s_n s_m = s_m s_n", bad1 is None, {"S": S}, bad1)
    report.add("(2) s_n u = u^n s_n", bad2 is None, {"S": S}, bad2)
    report.add("(3) sum of range projections of u^i s_n is 1", bad3 is None, {"S": S}, bad3)
    return report


def lemma46_word(n: int, z: int) -> list[Letter]:
    return [_s(n).adjoint()] + u_letters(z) + [_s(n)]


def verify_lemma46(n: int, z: int) -> Report:
    """``s_n* u^z s_n`` vanishes when ``n`` does not divide ``z`` and is ``u^(z/n)`` otherwise."""
    got = eval_word(lemma46_word(n, z))
    expected = EMPTY if z % n else u_power(z // n)
    report = Report()
    report.add(
        f"s_{n}* u^{z} s_{n}",
        got == expected,
        {"n": n, "z": z, "value": str(got)},
        {"expected": str(expected), "got": str(got)},
    )
    return report


def prop47_sides(n: int, m: int) -> tuple[AffinePartialMap, list[AffinePartialMap]]:
    lhs = eval_word([_s(n).adjoint(), _s(m)])
    rhs = []
    for l in range(0, n * m):
        if l % n == 0 and l % m == 0:
            rhs.append(eval_word(u_letters(l // n) + [_s(m), _s(n).adjoint()] + u_letters(-(l // m))))
    return lhs, rhs


def verify_prop47(n: int, m: int) -> Report:
    lhs, rhs = prop47_sides(n, m)
    nonempty = [x for x in rhs if not x.is_empty]
    report = Report()
    try:
        equal = sum_equal(lhs, MapSum(rhs))
        err = None
    except NotAPartialIsometryError as exc:
        equal, err = False, str(exc)
    details = {"n": n, "m": m, "lhs": str(lhs), "rhs": [str(x) for x in nonempty]}
    report.add(f"s_{n}* s_{m} expansion", equal, details, {"error": err} if err else details)
    report.add(
        f"s_{n}* s_{m} summand count",
        len(nonempty) == math.gcd(n, m),
        {"summands": len(nonempty), "gcd": math.gcd(n, m)},
        {"summands": len(nonempty), "gcd": math.gcd(n, m)},
    )
    return report


# the k-graph side


def kgraph_generator(mu: PathWord) -> AffinePartialMap:
    """Operator of ``s_mu``: ``x -> weight(d(mu)) x + value(mu)`` on all of Z."""
    return affine(mu.weight, mu.value)


def verify_covariance(g: int, mu: PathWord) -> Report:
    moved, restriction = kgraph.act(g, mu)
    lhs = u_power(g) @ kgraph_generator(mu)
    rhs = kgraph_generator(moved) @ u_power(restriction)
    report = Report()
    report.add(
        "u_g s_mu = s_{g.mu} u_{g|mu}",
        lhs == rhs,
        {"g": g, "mu": str(mu), "lhs": str(lhs), "rhs": str(rhs)},
        {"lhs": str(lhs), "rhs": str(rhs)},
    )
    return report


# Symbolic generators of O_{Z,Lambda_S}: ("t", i, s) is t_{x_s^i}, ("v",) the unitary.


def _kgraph_model(spec: OdometerSpec, sym) -> AffinePartialMap:
    if sym[0] == "v":
        return u_power(1)
    _, i, s = sym
    return kgraph_generator(kgraph.edge(spec, i, s))


def _eval_kgraph_word(spec: OdometerSpec, word) -> AffinePartialMap:
    return reduce(compose_maps, (_kgraph_model(spec, x) for x in word), IDENTITY)


def pi_image(spec: OdometerSpec, sym) -> list[Letter]:
    """pi: t_{x_s^i} -> u^s s_{n_i}, v -> u."""
    if sym[0] == "v":
        return [Letter("u")]
    _, i, s = sym
    return u_letters(s) + [_s(spec.moduli[i - 1])]


def rho_image(spec: OdometerSpec, letter: Letter) -> list:
    """rho: s_{n_i} -> t_{x_0^i}, u -> v (adjoints map to adjoints)."""
    if letter.gen == "u":
        return [("v", -1)] if letter.star else [("v",)]
    i = spec.moduli.index(letter.n) + 1
    return [("t*", i, 0)] if letter.star else [("t", i, 0)]


def verify_dictionary(S: Iterable[int]) -> Report:
    S = sorted(set(S))
    if not S or any(n < 2 for n in S):
        raise ValueError("S must be a nonempty set of integers >= 2")
    spec = OdometerSpec(S)
    k = spec.k
    report = Report()

    def T(i: int, s: int) -> AffinePartialMap:
        return eval_word(pi_image(spec, ("t", i, s)))

    V = eval_word(pi_image(spec, ("v",)))

    # (a) pi-images obey the odometer presentation
    bad = None
    for i in range(1, k + 1):
        terms = [T(i, s) @ adjoint(T(i, s)) for s in range(spec.moduli[i - 1])]
        try:
            ok = sum_equal(MapSum(terms), IDENTITY)
        except NotAPartialIsometryError:
            ok = False
        if not ok:
            bad = bad or {"i": i}
    report.add("pi: sum_s t_s t_s* = 1", bad is None, {"S": S}, bad)

    bad = None
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            ni, nj = spec.moduli[i - 1], spec.moduli[j - 1]
            for s in range(ni):
                for t in range(nj):
                    s2, t2 = divmod(s + t * ni, nj)
                    if T(i, s) @ T(j, t) != T(j, t2) @ T(i, s2):
                        bad = bad or {"i": i, "j": j, "s": s, "t": t}
    report.add("pi: commutation rule", bad is None, {"S": S}, bad)

    bad = None
    for i in range(1, k + 1):
        n = spec.moduli[i - 1]
        for s in range(n):
            rhs = T(i, s + 1) if s < n - 1 else T(i, 0) @ V
            if V @ T(i, s) != rhs:
                bad = bad or {"i": i, "s": s}
    report.add("pi: u t_s = t_{s+1}, wrapping to t_0 u", bad is None, {"S": S}, bad)

    # (b) rho-images obey the Q_S relations in the k-graph generator model
    def rho(letter: Letter) -> AffinePartialMap:
        out = IDENTITY
        for sym in rho_image(spec, letter):
            if sym[0] == "t*":
                m = adjoint(_kgraph_model(spec, ("t", sym[1], sym[2])))
            elif sym == ("v", -1):
                m = u_power(-1)
            else:
                m = _kgraph_model(spec, sym)
            out = out @ m
        return out

    def rho_word(w: Word) -> AffinePartialMap:
        return reduce(compose_maps, (rho(x) for x in w), IDENTITY)

    bad = None
    for n in S:
        for m in S:
            if rho_word([_s(n), _s(m)]) != rho_word([_s(m), _s(n)]):
                bad = bad or {"relation": 1, "n": n, "m": m}
        if rho_word([_s(n), Letter("u")]) != rho_word(u_letters(n) + [_s(n)]):
            bad = bad or {"relation": 2, "n": n}
        projections = [rho_word(u_letters(i) + [_s(n), _s(n).adjoint()] + u_letters(-i)) for i in range(n)]
        try:
            ok = sum_equal(MapSum(projections), IDENTITY)
        except NotAPartialIsometryError:
            ok = False
        if not ok:
            bad = bad or {"relation": 3, "n": n}
    report.add("rho: Q_S relations", bad is None, {"S": S}, bad)

    # (c) both composites fix every generator
    bad = None
    for i in range(1, k + 1):
        for s in range(spec.moduli[i - 1]):
            sym = ("t", i, s)
            back = [y for x in pi_image(spec, sym) for y in rho_image(spec, x)]
            if _eval_kgraph_word(spec, back) != _kgraph_model(spec, sym):
                bad = bad or {"generator": f"t_(x_{s}^{i})"}
    if _eval_kgraph_word(spec, [y for x in pi_image(spec, ("v",)) for y in rho_image(spec, x)]) != u_power(1):
        bad = bad or {"generator": "v"}
    report.add("rho o pi fixes generators", bad is None, {"S": S}, bad)

    bad = None
    for letter in [Letter("u")] + [_s(n) for n in S]:
        back = [y for x in rho_image(spec, letter) for y in pi_image(spec, x)]
        if back != [letter]:
            bad = bad or {"generator": str(letter), "image": [str(x) for x in back]}
    report.add("pi o rho fixes generators", bad is None, {"S": S}, bad)
    return report
