"""Q_S as affine partial bijections of Z, and the dictionary with the 1-vertex k-graph."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from odokit import qs
from odokit.kgraph import OdometerSpec, PathWord, compose, edge
from odokit.qs import (
    EMPTY,
    IDENTITY,
    AffinePartialMap,
    Letter,
    MapSum,
    NotAPartialIsometryError,
    ResidueClass,
    adjoint,
    affine,
    compose_maps,
    eval_letter,
    eval_word,
    parse_word,
    sum_equal,
)

S23 = OdometerSpec((2, 3))


def w(text):
    return eval_word(parse_word(text))


class TestLetters:
    def test_eval_letter(self):
        assert eval_letter(Letter("u")) == affine(1, 1)
        assert eval_letter(Letter("s", 3)) == affine(3, 0)
        assert eval_letter(Letter("s", 3, star=True)) == affine(Fraction(1, 3), 0, 3, 0)
        assert eval_letter(Letter("u", star=True)) == affine(1, -1)

    def test_parse(self):
        assert parse_word("s2* u s_3") == [Letter("s", 2, True), Letter("u"), Letter("s", 3)]
        with pytest.raises(ValueError):
            parse_word("s1")
        with pytest.raises(ValueError):
            parse_word("t2")


class TestCompose:
    def test_examples(self):
        assert w("s2* u s2") == EMPTY
        assert w("s2* u u s2") == affine(1, 1)
        assert compose_maps(affine(2, 1), EMPTY) == EMPTY
        assert compose_maps(EMPTY, affine(2, 1)) == EMPTY

    def test_eval_word_examples(self):
        assert eval_word([]) == IDENTITY
        assert w("u s2") == affine(2, 1)

    def test_restricted_domains(self):
        # s3* s2 = x -> 2x/3 on 3Z
        assert w("s3* s2") == affine(Fraction(2, 3), 0, 3, 0)
        # s2* u^3 s4: 4x+3 never even
        assert w("s2* u u u s4") == EMPTY
        # s4* u^2 s2: 2x+2 divisible by 4 iff x odd
        assert w("s4* u u s2") == affine(Fraction(1, 2), Fraction(1, 2), 2, 1)

    @settings(max_examples=300)
    @given(st.lists(st.sampled_from(["u", "u*", "s2", "s2*", "s3", "s3*", "s4*", "s6"]), max_size=7),
           st.integers(-200, 200))
    def test_pointwise_semantics(self, letters, x):
        # apply letters right to left by hand
        y = x
        for t in reversed(letters):
            if y is None:
                break
            if t == "u":
                y += 1
            elif t == "u*":
                y -= 1
            elif t.endswith("*"):
                n = int(t[1:-1])
                y = y // n if y % n == 0 else None
            else:
                y *= int(t[1:])
        assert w(" ".join(letters))(x) == y


class TestAdjoint:
    def test_examples(self):
        assert adjoint(eval_letter(Letter("s", 3))) == eval_letter(Letter("s", 3, True))
        m = w("u u u s2")
        assert m == affine(2, 3)
        assert adjoint(m) == affine(Fraction(1, 2), Fraction(-3, 2), 2, 1)
        assert adjoint(adjoint(m)) == m
        assert adjoint(EMPTY) == EMPTY

    @settings(max_examples=300)
    @given(st.lists(st.sampled_from(["u", "u*", "s2", "s2*", "s3", "s3*", "s5", "s5*"]), max_size=8))
    def test_inverse_semigroup(self, letters):
        word = qs.parse_word(" ".join(letters))
        m = eval_word(word)
        assert eval_word(word + qs.word_adjoint(word) + word) == m
        assert eval_word(qs.word_adjoint(word)) == adjoint(m)


class TestMaps:
    def test_rejects_non_integral(self):
        with pytest.raises(ValueError):
            AffinePartialMap(Fraction(1, 2), Fraction(0), ResidueClass(1, 0))

    def test_str(self):
        assert str(affine(1, 1)) == "x -> x + 1 on 0 mod 1"
        assert str(affine(3, -2, 5, 1)) == "x -> 3x - 2 on 1 mod 5"
        assert str(EMPTY) == "0"

    def test_residue_intersection(self):
        assert ResidueClass(4, 1).intersect(ResidueClass(6, 3)) == ResidueClass(12, 9)
        assert ResidueClass(4, 1).intersect(ResidueClass(6, 2)) is None


class TestSumEqual:
    def test_examples(self):
        assert sum_equal(w("s2 s3"), w("s3 s2"))
        assert not sum_equal(w("u s2"), w("s2 u"))
        assert sum_equal(w("s2 u"), w("u u s2"))

    def test_split_sum(self):
        # identity = (id on evens) + (id on odds)
        assert sum_equal(MapSum([affine(1, 0, 2, 0), affine(1, 0, 2, 1)]), IDENTITY)
        assert not sum_equal(MapSum([affine(1, 0, 2, 0)]), IDENTITY)

    def test_overlap_rejected(self):
        with pytest.raises(NotAPartialIsometryError):
            MapSum([affine(1, 0, 2, 0), affine(1, 1, 4, 0)])
        with pytest.raises(NotAPartialIsometryError):
            MapSum([affine(1, 0, 2, 0), affine(1, -1, 2, 1)])


class TestRelations:
    @pytest.mark.parametrize("S", [{2, 3}, {4, 6}, {2}, {5, 7, 12}])
    def test_pass(self, S):
        report = qs.verify_qs_relations(S)
        assert len(report.sections) == 3
        assert report.ok, report.failures()

    def test_partition_n3(self):
        images = [eval_word(qs.u_letters(i) + [Letter("s", 3)]).image for i in range(3)]
        assert images == [ResidueClass(3, 0), ResidueClass(3, 1), ResidueClass(3, 2)]


class TestConjugatedShift:
    @pytest.mark.parametrize("n,z,expected", [(2, 1, EMPTY), (3, -4, EMPTY), (3, 6, affine(1, 2)), (5, 0, IDENTITY)])
    def test_examples(self, n, z, expected):
        assert eval_word(qs.lemma46_word(n, z)) == expected
        assert qs.verify_lemma46(n, z).ok

    @given(st.integers(2, 12), st.integers(-200, 200))
    def test_range(self, n, z):
        assert qs.verify_lemma46(n, z).ok


class TestAdjointProduct:
    def test_coprime(self):
        lhs, rhs = qs.prop47_sides(2, 3)
        assert lhs == affine(Fraction(3, 2), 0, 2, 0)
        assert [x for x in rhs if not x.is_empty] == [lhs]

    def test_equal_pair(self):
        lhs, rhs = qs.prop47_sides(2, 2)
        assert lhs == IDENTITY
        pieces = [x for x in rhs if not x.is_empty]
        assert pieces[0] == affine(1, 0, 2, 0)
        assert pieces[1] == w("u s2 s2* u*")
        assert sum_equal(MapSum(pieces), IDENTITY)

    @pytest.mark.parametrize("n,m", [(4, 6), (6, 4), (12, 8), (9, 6), (5, 5)])
    def test_gcd_summands(self, n, m):
        report = qs.verify_prop47(n, m)
        assert report.ok, report.failures()
        _, rhs = qs.prop47_sides(n, m)
        assert sum(not x.is_empty for x in rhs) == math.gcd(n, m)


class TestKGraphSide:
    def test_generator_examples(self):
        assert qs.kgraph_generator(edge(S23, 2, 2)) == affine(3, 2)
        assert qs.kgraph_generator(S23.vertex()) == IDENTITY
        assert qs.kgraph_generator(PathWord(S23, (1, 1), 5)) == affine(6, 5)
        assert qs.kgraph_generator(edge(S23, 1, 1)) @ qs.kgraph_generator(edge(S23, 2, 2)) == affine(6, 5)

    @given(st.integers(0, 35), st.integers(0, 35))
    def test_multiplicative(self, a, b):
        mu, nu = PathWord(S23, (2, 1), a % 12), PathWord(S23, (0, 2), b % 9)
        assert qs.kgraph_generator(compose(mu, nu)) == qs.kgraph_generator(mu) @ qs.kgraph_generator(nu)

    def test_covariance_examples(self):
        r = qs.verify_covariance(1, PathWord(S23, (1, 1), 5))
        assert r.ok
        assert qs.u_power(1) @ qs.kgraph_generator(PathWord(S23, (1, 1), 5)) == affine(6, 6)
        assert qs.verify_covariance(0, PathWord(S23, (2, 2), 7)).ok
        two = OdometerSpec((2,))
        assert qs.verify_covariance(3, edge(two, 1, 0)).ok
        assert qs.u_power(3) @ qs.kgraph_generator(edge(two, 1, 0)) == affine(2, 3)

    @settings(max_examples=200)
    @given(st.integers(-1000, 1000), st.integers(0, 3), st.integers(0, 3), st.integers(0, 10**6))
    def test_covariance(self, g, a, b, v):
        mu = PathWord(S23, (a, b), v % (2**a * 3**b))
        assert qs.verify_covariance(g, mu).ok


class TestDictionary:
    @pytest.mark.parametrize("S", [{2, 3}, {3, 7}, {2, 3, 5}, {4, 6}])
    def test_pass(self, S):
        report = qs.verify_dictionary(S)
        assert len(report.sections) == 6
        assert report.ok, report.failures()

    def test_pi_examples(self):
        assert eval_word(qs.pi_image(S23, ("t", 1, 1))) == affine(2, 1)
        # wrap case for n=2, s=1
        assert qs.u_power(1) @ affine(2, 1) == affine(2, 2) == affine(2, 0) @ qs.u_power(1)
        t11 = eval_word(qs.pi_image(S23, ("t", 1, 1)))
        t22 = eval_word(qs.pi_image(S23, ("t", 2, 2)))
        assert t11 @ t22 == t22 @ t11 == affine(6, 5)
