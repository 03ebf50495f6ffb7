"""Odometer k-graph: encoding, factorization, the Z-action and its cocycle."""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from odokit import kgraph
from odokit.kgraph import OdometerSpec, PathWord, act, compose, edge, factorize, weight

S23 = OdometerSpec((2, 3))


def P(spec, degree, value):
    return PathWord(spec, tuple(degree), value)


@st.composite
def specs(draw, max_k=3, max_n=7):
    k = draw(st.integers(1, max_k))
    return OdometerSpec(tuple(draw(st.integers(2, max_n)) for _ in range(k)))


@st.composite
def spec_and_path(draw, cap=3):
    spec = draw(specs())
    deg = tuple(draw(st.integers(0, cap)) for _ in range(spec.k))
    return spec, P(spec, deg, draw(st.integers(0, weight(spec, deg) - 1)))


class TestWeight:
    def test_examples(self):
        assert weight(S23, (1, 1)) == 6
        assert weight(S23, (0, 0)) == 1
        assert weight(OdometerSpec((3, 7)), (2, 1)) == 63

    def test_dimension_mismatch(self):
        with pytest.raises(kgraph.InvalidDegreeError):
            weight(S23, (1,))

    def test_big_degrees_are_exact(self):
        assert weight(S23, (100, 50)) == 2**100 * 3**50


class TestSpec:
    @pytest.mark.parametrize("bad", [(), (1, 3), (0,), (2, -3)])
    def test_rejects(self, bad):
        with pytest.raises(kgraph.InvalidSpecError):
            OdometerSpec(bad)

    def test_fields(self):
        spec = OdometerSpec((3, 7))
        assert spec.k == 2 and spec.N == 21
        assert spec.unit(2) == (0, 1)


class TestEdge:
    def test_examples(self):
        assert edge(S23, 1, 1) == P(S23, (1, 0), 1)
        assert edge(S23, 2, 2) == P(S23, (0, 1), 2)
        five = OdometerSpec((5,))
        assert edge(five, 1, 0) == P(five, (1,), 0)

    @pytest.mark.parametrize("i,s", [(1, 2), (2, 3), (1, -1)])
    def test_digit_out_of_range(self, i, s):
        with pytest.raises(kgraph.InvalidDigitError):
            edge(S23, i, s)


class TestCompose:
    def test_examples(self):
        assert compose(edge(S23, 1, 1), edge(S23, 2, 2)) == P(S23, (1, 1), 5)
        assert compose(edge(S23, 2, 2), edge(S23, 1, 1)) == P(S23, (1, 1), 5)

    def test_vertex_is_identity(self):
        mu = P(S23, (2, 1), 11)
        assert compose(mu, S23.vertex()) == mu
        assert compose(S23.vertex(), mu) == mu

    def test_commutation_table_is_a_bijection(self):
        # x^1_s x^2_t = x^2_t' x^1_s' must pair the 6 edge pairs bijectively
        seen = {}
        for s in range(2):
            for t in range(3):
                mu = compose(edge(S23, 1, s), edge(S23, 2, t))
                seen[mu.value] = (s, t)
        assert sorted(seen) == list(range(6))

    @settings(max_examples=200)
    @given(st.data())
    def test_associative(self, data):
        spec = data.draw(specs())
        paths = []
        for _ in range(3):
            deg = tuple(data.draw(st.integers(0, 2)) for _ in range(spec.k))
            paths.append(P(spec, deg, data.draw(st.integers(0, weight(spec, deg) - 1))))
        a, b, c = paths
        assert compose(compose(a, b), c) == compose(a, compose(b, c))


class TestFactorize:
    def test_examples(self):
        mu = P(S23, (1, 1), 5)
        assert factorize(mu, (1, 0)) == (edge(S23, 1, 1), edge(S23, 2, 2))
        assert factorize(mu, (0, 1)) == (edge(S23, 2, 2), edge(S23, 1, 1))
        assert factorize(mu, (0, 0)) == (S23.vertex(), mu)

    def test_invalid_split(self):
        with pytest.raises(kgraph.InvalidSplitError):
            factorize(P(S23, (1, 1), 5), (2, 0))

    @settings(max_examples=200)
    @given(spec_and_path(), st.data())
    def test_recompose(self, sp, data):
        spec, mu = sp
        a = tuple(data.draw(st.integers(0, d)) for d in mu.degree)
        alpha, beta = factorize(mu, a)
        assert alpha.degree == a
        assert compose(alpha, beta) == mu

    def test_uniqueness_brute_force_small(self):
        spec = OdometerSpec((2, 3))
        for deg in [(1, 1), (2, 1), (1, 2)]:
            for mu in kgraph.paths_of_degree(spec, deg):
                for a in itertools.product(*(range(d + 1) for d in deg)):
                    b = tuple(x - y for x, y in zip(deg, a))
                    hits = [
                        (x, y)
                        for x in kgraph.paths_of_degree(spec, a)
                        for y in kgraph.paths_of_degree(spec, b)
                        if compose(x, y) == mu
                    ]
                    assert hits == [factorize(mu, a)]


class TestDigits:
    def test_examples(self):
        mu = P(S23, (1, 1), 5)
        assert kgraph.digits(mu, [1, 2]) == [(1, 1), (2, 2)]
        assert kgraph.digits(mu, [2, 1]) == [(2, 2), (1, 1)]
        assert kgraph.digits(S23.vertex(), []) == []

    def test_order_mismatch(self):
        with pytest.raises(kgraph.InvalidOrderError):
            kgraph.digits(P(S23, (1, 1), 5), [1, 1])

    @settings(max_examples=150)
    @given(spec_and_path(cap=2), st.randoms(use_true_random=False))
    def test_roundtrip_every_order(self, sp, rnd):
        spec, mu = sp
        order = [i + 1 for i, d in enumerate(mu.degree) for _ in range(d)]
        rnd.shuffle(order)
        assert kgraph.from_digits(spec, kgraph.digits(mu, order)) == mu


class TestAct:
    def test_examples(self):
        assert act(1, P(S23, (1, 1), 5)) == (P(S23, (1, 1), 0), 1)
        assert act(-1, P(S23, (1, 1), 0)) == (P(S23, (1, 1), 5), -1)
        mu = P(S23, (2, 0), 3)
        assert act(0, mu) == (mu, 0)

    def test_single_edge_rule(self):
        spec = OdometerSpec((5,))
        for s in range(5):
            moved, r = act(1, edge(spec, 1, s))
            assert moved == edge(spec, 1, (s + 1) % 5)
            assert r == (1 if s == 4 else 0)

    @settings(max_examples=100)
    @given(specs(max_k=2, max_n=5), st.integers(-50, 50))
    def test_permutes_each_level(self, spec, g):
        deg = spec.unit(1)
        deg = tuple(2 * x + 1 for x in deg)
        image = {act(g, mu)[0].value for mu in kgraph.paths_of_degree(spec, deg)}
        assert image == set(range(weight(spec, deg)))

    @settings(max_examples=300)
    @given(spec_and_path(), st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
    def test_chain_rule(self, sp, g, h):
        _, mu = sp
        h_mu, h_r = act(h, mu)
        g_hmu, g_r = act(g, h_mu)
        assert act(g + h, mu) == (g_hmu, g_r + h_r)

    @settings(max_examples=300)
    @given(st.data(), st.integers(-10**4, 10**4))
    def test_composition_rule_and_cocycle(self, data, g):
        spec = data.draw(specs())
        mu, nu = (
            P(spec, deg, data.draw(st.integers(0, weight(spec, deg) - 1)))
            for deg in [tuple(data.draw(st.integers(0, 2)) for _ in range(spec.k)) for _ in range(2)]
        )
        g_mu, r_mu = act(g, mu)
        g_nu, r_nu = act(r_mu, nu)
        assert act(g, compose(mu, nu)) == (compose(g_mu, g_nu), r_nu)


def test_check_axioms_all_pass():
    report = kgraph.check_axioms(S23, 1000, seed=0)
    assert len(report.sections) == 7
    assert report.ok, report.failures()


def test_check_axioms_hand_case_k1():
    # 2 = 1 + 1 on x_1 of the 2-odometer: carry 1 either way
    spec = OdometerSpec((2,))
    mu = edge(spec, 1, 1)
    one_mu, one_r = act(1, mu)
    assert act(2, mu) == (act(1, one_mu)[0], act(1, one_mu)[1] + one_r)
    assert act(2, mu)[1] == 1


def test_g_lambda():
    assert kgraph.g_lambda(OdometerSpec((3, 7))) == 2
    assert kgraph.g_lambda(OdometerSpec((2, 9))) == 1
    assert kgraph.g_lambda(OdometerSpec((5, 9, 13))) == 4
    assert kgraph.g_lambda(OdometerSpec((6,))) == 5


@given(specs(max_k=4, max_n=30))
def test_g_lambda_coprime_to_N(spec):
    assert math.gcd(kgraph.g_lambda(spec), spec.N) == 1


class TestText:
    def test_parse_format_roundtrip(self):
        mu = kgraph.parse_path(S23, "(1,1):5")
        assert mu == P(S23, (1, 1), 5)
        assert kgraph.format_path(mu) == "(1,1):5"

    @pytest.mark.parametrize("bad", ["(1,1):6", "(1):0", "1,1:0", "(1,1):x"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            kgraph.parse_path(S23, bad)

    def test_parse_degree(self):
        assert kgraph.parse_degree(S23, "e1") == (1, 0)
        assert kgraph.parse_degree(S23, "0") == (0, 0)
        assert kgraph.parse_degree(S23, "(2,1)") == (2, 1)
