"""The skew product of a standard odometer k-graph by its degree functor.

Morphisms are pairs ``(mu, z)`` with ``z`` in ``Z^k``; the range is ``z`` and the
source is ``z + d(mu)``.  The group acts on the path coordinate only, and
``Z^k`` acts freely by translating the base point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from odokit import kgraph
from odokit.kgraph import KGraphError, OdometerSpec, PathWord
from odokit.report import Report

Vertex = tuple[int, ...]


class ComposabilityError(KGraphError):
    pass


@dataclass(frozen=True)
class SkewPath:
    path: PathWord
    base: Vertex

    def __post_init__(self):
        base = tuple(int(x) for x in self.base)
        if len(base) != self.path.spec.k:
            raise kgraph.InvalidDegreeError(f"base {base} has wrong length for k={self.path.spec.k}")
        object.__setattr__(self, "base", base)

    @property
    def spec(self) -> OdometerSpec:
        return self.path.spec

    @property
    def range(self) -> Vertex:
        return self.base

    @property
    def source(self) -> Vertex:
        return _add(self.base, self.path.degree)


def _add(a: Sequence[int], b: Sequence[int]) -> Vertex:
    return tuple(x + y for x, y in zip(a, b))


def skew_vertex(spec: OdometerSpec, z: Sequence[int]) -> SkewPath:
    return SkewPath(spec.vertex(), tuple(z))


def endpoints(sp: SkewPath) -> tuple[Vertex, Vertex]:
    """``(range, source)``."""
    return sp.range, sp.source


def skew_compose(a: SkewPath, b: SkewPath) -> SkewPath:
    if b.base != a.source:
        raise ComposabilityError(f"source {a.source} of first factor differs from range {b.base} of second")
    return SkewPath(kgraph.compose(a.path, b.path), a.base)


def skew_factorize(sp: SkewPath, a: Sequence[int]) -> tuple[SkewPath, SkewPath]:
    head, tail = kgraph.factorize(sp.path, a)
    return SkewPath(head, sp.base), SkewPath(tail, _add(sp.base, head.degree))


def skew_act(g: int, sp: SkewPath) -> tuple[SkewPath, int]:
    moved, restriction = kgraph.act(g, sp.path)
    return SkewPath(moved, sp.base), restriction


def translate(z: Sequence[int], sp: SkewPath) -> SkewPath:
    return SkewPath(sp.path, _add(sp.base, z))


def check_skew_axioms(
    spec: OdometerSpec, sample_count: int, seed: int = 0, degree_cap: int = 3, base_bound: int = 5
) -> Report:
    """Self-similarity conditions re-checked through the skew layer.

    Also confirms that restrictions do not depend on the base point and that
    translation commutes with composition, factorization and the action.
    """
    rng = random.Random(seed)
    k = spec.k
    bad: dict[str, dict] = {}

    def rand_base():
        return tuple(rng.randint(-base_bound, base_bound) for _ in range(k))

    def rand_path():
        deg = tuple(rng.randint(0, degree_cap) for _ in range(k))
        return PathWord(spec, deg, rng.randrange(kgraph.weight(spec, deg)))

    for _ in range(sample_count):
        a = SkewPath(rand_path(), rand_base())
        b = SkewPath(rand_path(), a.source)
        w = rand_base()
        bound = a.path.weight
        g, h = rng.randint(-bound, bound), rng.randint(-bound, bound)
        ce = {"a": (str(a.path), a.base), "b": (str(b.path), b.base), "g": g, "h": h, "w": w}

        ab = skew_compose(a, b)
        ga, g_a = skew_act(g, a)
        if ga.path.degree != a.path.degree or ga.base != a.base:
            bad.setdefault("(1) degree preservation", ce)
        if endpoints(ga) != endpoints(a):
            bad.setdefault("(2) source/range equivariance", ce)
        gab, g_ab = skew_act(g, ab)
        gb, g_b = skew_act(g_a, b)
        if gab != skew_compose(ga, gb):
            bad.setdefault("(3) action on composites", ce)
        if skew_act(g, skew_vertex(spec, a.base)) != (skew_vertex(spec, a.base), g):
            bad.setdefault("(4) restriction to the vertex", ce)
        if g_ab != g_b:
            bad.setdefault("(5) restriction cocycle", ce)
        if skew_act(0, a) != (a, 0):
            bad.setdefault("(6) unit restriction", ce)
        ha, h_a = skew_act(h, a)
        if skew_act(g + h, a)[1] != skew_act(g, ha)[1] + h_a:
            bad.setdefault("(7) chain rule", ce)
        if skew_act(g, translate(w, a))[1] != g_a:
            bad.setdefault("restriction independent of base", ce)
        if endpoints(ab) != (a.range, b.source):
            bad.setdefault("endpoint functoriality", ce)

        wa, wb = translate(w, a), translate(w, b)
        split = tuple(rng.randint(0, d) for d in ab.path.degree)
        f1, f2 = skew_factorize(ab, split)
        t1, t2 = skew_factorize(translate(w, ab), split)
        commutes = (
            skew_compose(wa, wb) == translate(w, ab)
            and (t1, t2) == (translate(w, f1), translate(w, f2))
            and skew_act(g, wa) == (translate(w, ga), g_a)
        )
        if not commutes:
            bad.setdefault("translation commutes", ce)

    report = Report()
    for name in (
        "(1) degree preservation",
        "(2) source/range equivariance",
        "(3) action on composites",
        "(4) restriction to the vertex",
        "(5) restriction cocycle",
        "(6) unit restriction",
        "(7) chain rule",
        "restriction independent of base",
        "endpoint functoriality",
        "translation commutes",
    ):
        report.add(name, name not in bad, {"samples": sample_count, "seed": seed}, bad.get(name))
    return report
