"""E1/E2 pages of the Z^k spectral sequence for the stabilized odometer algebra.

The stabilization has K0 = Z[1/N] (N the product of the moduli) with the i-th
generator of Z^k acting by division by n_i, and K1 = Z with trivial action.
E1^{p,q} = K_q tensor Lambda^p(Z^k) and d1 is the Koszul differential
``g (x) e -> sum_i (e_i . g - g) (x) (e ^ e_i)``.  Everything here stays at E2;
higher differentials and the extension problem are not attempted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from odokit import kgraph
from odokit.kgraph import OdometerSpec
from odokit.ktheory.groups import AbelianGroup
from odokit.ktheory.localized import LocalizedRing, LocalizedScalar
from odokit.ktheory.snf import localized_divisors
from odokit.report import Report

CAVEAT = "E₂ only; higher differentials and extensions unresolved"

EVEN, ODD = "even", "odd"

Subset = tuple[int, ...]
Matrix = list[list[Fraction]]


class NotAComplexError(ValueError):
    pass


class OutOfHypothesisError(ValueError):
    pass


def ring_of(spec: OdometerSpec) -> LocalizedRing:
    return LocalizedRing(spec.N)


def action_on_K0(spec: OdometerSpec, z: Sequence[int], x: LocalizedScalar) -> LocalizedScalar:
    """``z . x = x / prod(n_i ** z_i)``."""
    if len(z) != spec.k:
        raise kgraph.InvalidDegreeError(f"translation {tuple(z)} has wrong length for k={spec.k}")
    factor = Fraction(1)
    for n, zi in zip(spec.moduli, z):
        factor /= Fraction(n) ** zi
    return LocalizedScalar.from_fraction(x.to_fraction() * factor, x.N)


def wedge_basis(k: int, p: int) -> list[Subset]:
    """Increasing p-subsets of {1..k} in lexicographic order."""
    if p < 0 or p > k:
        return []
    return list(combinations(range(1, k + 1), p))


def wedge_append(e: Sequence[int], i: int) -> tuple[int, Subset] | None:
    """``e ^ e_i`` as (sign, sorted subset), or None when ``i`` already occurs."""
    if i in e:
        return None
    sign = -1 if sum(1 for x in e if x > i) % 2 else 1
    return sign, tuple(sorted((*e, i)))


def _action_minus_one(spec: OdometerSpec, parity: str, inverse: bool) -> list[Fraction]:
    if parity == ODD:
        return [Fraction(0)] * spec.k
    if inverse:
        return [Fraction(n) - 1 for n in spec.moduli]
    return [Fraction(1, n) - 1 for n in spec.moduli]


def build_d1(spec: OdometerSpec, parity: str, inverse: bool = False) -> list[Matrix]:
    """Differentials D^0..D^{k-1}; D^p has shape C(k,p+1) x C(k,p) and acts on columns.

    ``inverse=True`` uses the inverse Z^k action (multiplication by n_i).
    """
    if parity not in (EVEN, ODD):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    k = spec.k
    coeff = _action_minus_one(spec, parity, inverse)
    mats = []
    for p in range(k):
        src, dst = wedge_basis(k, p), wedge_basis(k, p + 1)
        index = {e: r for r, e in enumerate(dst)}
        D = [[Fraction(0)] * len(src) for _ in dst]
        for c, e in enumerate(src):
            for i in range(1, k + 1):
                w = wedge_append(e, i)
                if w is not None:
                    sign, f = w
                    D[index[f]][c] += sign * coeff[i - 1]
        mats.append(D)
    return mats


def _integral(A: Matrix) -> list[list[int]]:
    """Scale by the lcm of the denominators; zero-ness of products is unaffected."""
    L = math.lcm(*(Fraction(x).denominator for row in A for x in row)) if A else 1
    return [[int(x * L) for x in row] for row in A]


def _composes_to_zero(A: Matrix, B: Matrix) -> bool:
    a, b = _integral(A), _integral(B)
    cols = list(zip(*b))
    sparse_rows = [[(j, x) for j, x in enumerate(row) if x] for row in a]
    return all(sum(x * col[j] for j, x in row) == 0 for row in sparse_rows for col in cols)


def is_complex(complex_: Sequence[Matrix]) -> bool:
    return all(_composes_to_zero(A, B) for A, B in zip(complex_[1:], complex_))


def _dims(complex_: Sequence[Matrix]) -> list[int]:
    dims = [len(D[0]) if D else 0 for D in complex_]
    dims.append(len(complex_[-1]) if complex_ else 0)
    return dims


def _cohomology_from_divisors(dim: int, out_div: list[int], in_div: list[int]) -> AbelianGroup:
    return AbelianGroup.from_cyclic(dim - len(out_div) - len(in_div), in_div)


def cohomology(complex_: Sequence[Matrix], p: int, ring: LocalizedRing, dims: Sequence[int] | None = None) -> AbelianGroup:
    """ker D^p / im D^{p-1} over ``ring``.

    The torsion of the quotient equals the torsion of coker D^{p-1}, since
    ker D^p is saturated; its invariant factors are the non-unit localized
    elementary divisors of D^{p-1}.  ``dims[p]`` is the rank of the p-th term;
    by default it is read off the matrices.
    """
    dims = list(dims) if dims is not None else _dims(complex_)
    if p < 0 or p >= len(dims):
        return AbelianGroup()
    if 1 <= p < len(complex_) and not _composes_to_zero(complex_[p], complex_[p - 1]):
        raise NotAComplexError(f"D^{p} D^{p - 1} != 0")
    out_div = localized_divisors(complex_[p], ring) if p < len(complex_) else []
    in_div = localized_divisors(complex_[p - 1], ring) if p >= 1 else []
    return _cohomology_from_divisors(dims[p], out_div, in_div)


@dataclass
class SpectralPage:
    k: int
    groups: dict[tuple[int, str], AbelianGroup] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, str]) -> AbelianGroup:
        return self.groups.get(key, AbelianGroup())

    def column(self, parity: str) -> list[AbelianGroup]:
        return [self[(p, parity)] for p in range(self.k + 1)]

    def __eq__(self, other) -> bool:
        return isinstance(other, SpectralPage) and self.k == other.k and all(
            self[(p, q)] == other[(p, q)] for p in range(self.k + 1) for q in (EVEN, ODD)
        )

    def to_dict(self) -> dict:
        return {q: [g.to_dict() for g in self.column(q)] for q in (EVEN, ODD)}

    def to_text(self) -> dict:
        return {q: [str(g) for g in self.column(q)] for q in (EVEN, ODD)}


def e1_page(spec: OdometerSpec) -> dict[str, list[str]]:
    """E1 terms as module descriptions (Z[1/N] is not finitely generated over Z)."""
    k, ring = spec.k, ring_of(spec)
    return {
        EVEN: [_power(str(ring), math.comb(k, p)) for p in range(k + 1)],
        ODD: [_power("Z", math.comb(k, p)) for p in range(k + 1)],
    }


def _power(base: str, r: int) -> str:
    return "0" if r == 0 else base if r == 1 else f"{base}^{r}"


def e2_page(spec: OdometerSpec, inverse: bool = False) -> SpectralPage:
    k, ring = spec.k, ring_of(spec)
    dims = [math.comb(k, p) for p in range(k + 1)]
    page = SpectralPage(k)
    for parity in (EVEN, ODD):
        cx = build_d1(spec, parity, inverse)
        if not is_complex(cx):
            raise NotAComplexError(f"d1 does not square to zero for {spec} ({parity})")
        divs = [localized_divisors(D, ring) for D in cx]
        for p in range(k + 1):
            out_div = divs[p] if p < k else []
            in_div = divs[p - 1] if p >= 1 else []
            page.groups[(p, parity)] = _cohomology_from_divisors(dims[p], out_div, in_div)
    return page


def closed_form_e2(spec: OdometerSpec) -> SpectralPage:
    k, g = spec.k, kgraph.g_lambda(spec)
    page = SpectralPage(k)
    for p in range(k + 1):
        torsion = AbelianGroup.from_cyclic(0, [g] * math.comb(k - 1, p - 1)) if p >= 1 else AbelianGroup()
        page.groups[(p, EVEN)] = torsion
        page.groups[(p, ODD)] = AbelianGroup(math.comb(k, p))
    return page


@dataclass(frozen=True)
class DirectLimit:
    """Z -> Z -> ... with every connecting map multiplication by ``multiplicity``."""

    multiplicity: int
    N: int

    def stage_generator(self, n: int) -> LocalizedScalar:
        """Image of the stage-n generator in the colimit (requires multiplicity == N)."""
        return LocalizedScalar(1, n, self.N)

    @property
    def ring(self) -> LocalizedRing:
        return LocalizedRing(self.multiplicity)


@dataclass(frozen=True)
class StabilizedKGroups:
    K0: DirectLimit
    K1: DirectLimit

    @property
    def K0_ring(self) -> LocalizedRing:
        return self.K0.ring

    def K1_group(self) -> AbelianGroup:
        if self.K1.multiplicity != 1:
            raise ValueError("K1 connecting maps are not isomorphisms")
        return AbelianGroup(1)

    def to_dict(self) -> dict:
        return {
            "K0": {"ring": str(self.K0_ring), "connecting_multiplicity": self.K0.multiplicity},
            "K1": {"group": self.K1_group().to_dict(), "connecting_multiplicity": self.K1.multiplicity},
        }


def stabilized_k_groups(spec: OdometerSpec) -> StabilizedKGroups:
    """K-theory of the stabilization as a colimit over the cubes n*(1,...,1).

    The unit at stage n splits into one projection per path of degree (1,...,1),
    so K0 multiplies by the number of such paths.  On K1 the generator maps to
    the sum of the restrictions 1|_alpha over the same paths.
    """
    ones = (1,) * spec.k
    k0_mult = 0
    k1_mult = 0
    for alpha in kgraph.paths_of_degree(spec, ones):
        k0_mult += 1
        k1_mult += kgraph.act(1, alpha)[1]
    return StabilizedKGroups(DirectLimit(k0_mult, spec.N), DirectLimit(k1_mult, spec.N))


def check_stabilization(spec: OdometerSpec, stages: int = 4) -> Report:
    st = stabilized_k_groups(spec)
    report = Report()
    report.add(
        "K0 connecting multiplicity = n_1 ... n_k",
        st.K0.multiplicity == spec.N,
        {"multiplicity": st.K0.multiplicity, "product": spec.N},
        {"multiplicity": st.K0.multiplicity, "product": spec.N},
    )
    coherent = all(
        LocalizedScalar(st.K0.multiplicity, n + 1, spec.N) == st.K0.stage_generator(n) for n in range(stages)
    )
    report.add("colimit stages are coherent", coherent, {"stages": stages})
    report.add(
        "K0 = Z[1/N]",
        st.K0_ring.canonical() == ring_of(spec).canonical(),
        {"K0": str(ring_of(spec)), "primes": list(ring_of(spec).canonical())},
    )
    report.add("K1 = Z", st.K1.multiplicity == 1, {"K1 connecting multiplicity": st.K1.multiplicity})
    return report


@dataclass(frozen=True)
class ConjectureGroups:
    K0: AbelianGroup
    unit_class: dict
    K1: AbelianGroup

    def to_dict(self) -> dict:
        return {"K0": self.K0.to_dict(), "unit_class": self.unit_class, "K1": self.K1.to_dict()}


def conjecture_groups(spec: OdometerSpec) -> ConjectureGroups:
    k = spec.k
    if k < 2:
        raise OutOfHypothesisError(f"the conjectured K-groups require k >= 2, got k={k}")
    g = kgraph.g_lambda(spec)
    group = AbelianGroup(2 ** (k - 1)) + AbelianGroup.from_cyclic(0, [g] * 2 ** (k - 2))
    e = [(1 if i == 1 else 0) % g for i in range(1, k + 1)]
    unit = {
        "free": 0,
        "torsion": "e",
        "e": e,
        "ambiguous": True,
        "note": f"e has {k} coordinates but the torsion summand has {2 ** (k - 2)}; no embedding is assumed",
    }
    return ConjectureGroups(group, unit, group)


def total_by_parity(page: SpectralPage) -> dict[str, AbelianGroup]:
    """Sum E2^{p,q} over p + q of fixed parity (q even counts as 0)."""
    out = {EVEN: AbelianGroup(), ODD: AbelianGroup()}
    for p in range(page.k + 1):
        for q, qbit in ((EVEN, 0), (ODD, 1)):
            out[EVEN if (p + qbit) % 2 == 0 else ODD] += page[(p, q)]
    return out


def numerology_check(spec: OdometerSpec, page: SpectralPage | None = None) -> Report:
    k = spec.k
    if k < 2:
        raise OutOfHypothesisError("numerology needs k >= 2")
    report = Report()
    free_even = sum(math.comb(k, p) for p in range(0, k + 1, 2))
    free_odd = sum(math.comb(k, p) for p in range(1, k + 1, 2))
    tor_even = sum(math.comb(k - 1, p - 1) for p in range(2, k + 1, 2))
    tor_odd = sum(math.comb(k - 1, p - 1) for p in range(1, k + 1, 2))
    report.add(
        "free ranks per parity = 2^(k-1)",
        free_even == free_odd == 2 ** (k - 1),
        {"even": free_even, "odd": free_odd, "2^(k-1)": 2 ** (k - 1)},
    )
    report.add(
        "torsion multiplicities per parity = 2^(k-2)",
        tor_even == tor_odd == 2 ** (k - 2),
        {"even": tor_even, "odd": tor_odd, "2^(k-2)": 2 ** (k - 2)},
    )
    page = page if page is not None else e2_page(spec)
    totals = total_by_parity(page)
    conj = conjecture_groups(spec)
    report.add(
        "E2 totals match conjectured K0 (p+q even)",
        totals[EVEN] == conj.K0,
        {"E2": str(totals[EVEN]), "conjecture": str(conj.K0)},
        {"E2": str(totals[EVEN]), "conjecture": str(conj.K0)},
    )
    report.add(
        "E2 totals match conjectured K1 (p+q odd)",
        totals[ODD] == conj.K1,
        {"E2": str(totals[ODD]), "conjecture": str(conj.K1)},
        {"E2": str(totals[ODD]), "conjecture": str(conj.K1)},
    )
    report.info("caveat", CAVEAT)
    return report
