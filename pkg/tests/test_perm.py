import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from permsort import perm as P
from permsort.classes import class_handle
from permsort.errors import DomainError, SizeMismatch
from permsort.perm import Alternation, Perm, PointSet


def perms(max_n=8):
    return st.integers(0, max_n).flatmap(lambda n: st.permutations(list(range(1, n + 1)))).map(Perm)


def p(s):
    return Perm.parse(s)


class TestPermValue:
    def test_parse_forms(self):
        assert p("2 4 1 3") == p("2,4,1,3") == p("2413") == (2, 4, 1, 3)
        assert p("10 9 8 7 6 5 4 3 2 1") == P.decreasing(10)
        assert p("") == Perm()

    def test_rejects_non_permutations(self):
        for bad in [(1, 1), (0, 1), (2, 3), (1, 2, 4)]:
            with pytest.raises(DomainError):
                Perm(bad)
        with pytest.raises(DomainError):
            p("1 x 2")

    def test_call_is_one_based(self):
        assert p("2413")(1) == 2
        assert p("2413").size == 4

    def test_text_forms(self):
        assert str(p("2413")) == "2 4 1 3"
        assert repr(p("2413")) == "Perm(2413)"
        assert p("2413").points() == [(1, 2), (2, 4), (3, 1), (4, 3)]


class TestCompose:
    def test_examples(self):
        assert P.compose(p("231"), p("312")) == P.identity(3)
        sigma = Perm((3, 1, 2, 4, 5, 9, 6, 7, 8))
        pi = Perm((3, 8, 1, 6, 2, 5, 9, 4, 7))
        assert P.compose(pi, sigma) == (1, 3, 8, 6, 2, 7, 5, 9, 4)
        for q in P.all_perms(5):
            assert P.compose(P.identity(5), q) == q

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            P.compose(p("12"), p("123"))

    def test_associative_and_neutral(self):
        for n in range(1, 5):
            ps = list(P.all_perms(n))
            ident = P.identity(n)
            for a, b, c in itertools.product(ps, repeat=3):
                assert P.compose(a, P.compose(b, c)) == P.compose(P.compose(a, b), c)
            for a in ps:
                assert P.compose(a, ident) == P.compose(ident, a) == a

    def test_matches_oracle(self):
        for a, b in itertools.product(P.all_perms(4), repeat=2):
            assert P.compose(a, b) == oracle.compose(a, b)


class TestSymmetries:
    def test_examples(self):
        assert P.inverse(p("2413")) == p("3142")
        assert P.inverse(P.identity(6)) == P.identity(6)
        assert P.inverse(P.decreasing(6)) == P.decreasing(6)
        assert P.reverse(p("2413")) == p("3142")
        assert P.complement(p("2413")) == p("3142")
        assert P.flip(p("21")) == p("21")

    def test_inverse_composes_to_identity(self):
        for q in P.all_perms(5):
            assert P.compose(P.inverse(q), q) == P.identity(5)

    def test_antihomomorphisms(self):
        for n in range(1, 6):
            ps = list(P.all_perms(n))
            for s, q in itertools.product(ps, repeat=2):
                assert P.inverse(P.compose(s, q)) == P.compose(P.inverse(q), P.inverse(s))
                assert P.flip(P.compose(s, q)) == P.compose(P.flip(q), P.flip(s))

    @given(perms())
    def test_involutions(self, q):
        for op in (P.reverse, P.complement, P.inverse, P.flip):
            assert op(op(q)) == q
        assert P.flip(q) == P.reverse(P.inverse(P.reverse(q)))


class TestSums:
    def test_examples(self):
        assert P.direct_sum(p("21"), p("21")) == p("2143")
        assert P.skew_sum(p("12"), p("1")) == p("231")
        assert P.direct_sum(Perm(), p("312")) == p("312")
        assert P.skew_sum(p("312"), Perm()) == p("312")

    def test_sum_contains_left_summand(self):
        for total in range(0, 7):
            for k in range(total + 1):
                for a in P.all_perms(k):
                    for b in P.all_perms(total - k):
                        assert P.contains_pattern(P.direct_sum(a, b), a)

    def test_sum_decompose_examples(self):
        assert P.sum_decompose(p("2143")) == [p("21"), p("21")]
        assert P.sum_decompose(P.identity(3)) == [p("1")] * 3
        assert P.sum_decompose(p("321")) == [p("321")]
        assert P.skew_decompose(p("3412")) == [p("12"), p("12")]

    def test_sum_decompose_round_trip(self):
        for n in range(0, 8):
            for q in P.all_perms(n):
                blocks = P.sum_decompose(q)
                acc = Perm()
                for b in blocks:
                    acc = P.direct_sum(acc, b)
                assert acc == q
                # each block is indecomposable
                assert all(len(P.sum_decompose(b)) == 1 for b in blocks)

    def test_skew_decompose_round_trip(self):
        for q in P.all_perms(6):
            acc = Perm()
            for b in P.skew_decompose(q):
                acc = P.skew_sum(acc, b)
            assert acc == q


class TestContainment:
    def test_examples(self):
        assert P.contains_pattern(p("3142"), p("231"))
        assert not P.contains_pattern(p("123"), p("21"))
        for q in P.all_perms(5):
            assert P.contains_pattern(q, q)

    def test_matches_brute_force(self):
        patterns = [q for k in range(1, 5) for q in P.all_perms(k)]
        for q in P.all_perms(6):
            for s in patterns:
                assert P.contains_pattern(q, s) == oracle.contains(q, s)

    @settings(max_examples=200)
    @given(perms(9), perms(4))
    def test_random_against_brute_force(self, q, s):
        assert P.contains_pattern(q, s) == oracle.contains(q, s)


class TestInversions:
    def test_examples(self):
        assert P.count_inversions(P.decreasing(4)) == 6
        assert P.count_inversions(P.identity(7)) == 0
        assert P.count_inversions(p("2143")) == 2

    def test_inverse_invariant(self):
        for n in range(0, 7):
            for q in P.all_perms(n):
                assert P.count_inversions(q) == P.count_inversions(P.inverse(q)) == oracle.inversions(q)


class TestCyclicDistance:
    def test_examples(self):
        assert P.cyclic_distance(1, 6, 6) == 1
        assert P.cyclic_distance(4, 4, 9) == 0
        assert P.cyclic_distance(1, 4, 6) == 3

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            P.cyclic_distance(0, 3, 5)
        with pytest.raises(DomainError):
            P.cyclic_distance(1, 7, 6)

    def test_tcd_examples(self):
        assert P.total_cyclic_distance(P.identity(4)) == 4
        assert P.total_cyclic_distance(Perm((1, 4, 2, 5, 3, 6))) == 14
        assert P.total_cyclic_distance(p("2143")) == 4

    def test_tcd_rotation_invariance(self):
        for n in range(1, 7):
            rr = [Perm(r) for r in oracle.rr_members(n)]
            for q in P.all_perms(n):
                base = P.total_cyclic_distance(q)
                assert base == oracle.tcd(q)
                for rho in rr:
                    assert P.total_cyclic_distance(P.compose(rho, q)) == base
                    assert P.total_cyclic_distance(P.compose(q, rho)) == base

    def test_tcd_step_bound(self):
        for n in range(2, 7):
            ts = class_handle("T").level(n)
            for q in P.all_perms(n):
                base = P.total_cyclic_distance(q)
                for s in ts:
                    assert P.total_cyclic_distance(P.compose(s, q)) <= base + 4


class TestIntervalicity:
    def test_examples(self):
        assert P.intervalicity({(1, 1), (2, 2), (3, 3)}) == 1
        assert P.intervalicity(zip([1, 2, 3, 5, 6], [1, 2, 3, 4, 5])) == 2
        assert P.intervalicity({(1, 1), (3, 2), (5, 3)}) == 3
        assert P.intervalicity(set()) == 0

    def test_general_position_required(self):
        with pytest.raises(DomainError):
            PointSet({(1, 1), (1, 2)})
        with pytest.raises(DomainError):
            P.intervalicity({(1, 3), (2, 3)})


class TestAlternation:
    def test_examples(self):
        assert P.is_alternation(p("1423")) is Alternation.VERTICAL
        assert P.is_alternation(P.identity(4)) is Alternation.NEITHER
        assert P.is_alternation(p("1")) is Alternation.HORIZONTAL
        # 2413 splits its values by parity directly, so Horizontal wins
        assert P.is_alternation(p("2413")) is Alternation.HORIZONTAL

    def test_small_sizes_are_horizontal(self):
        for n in range(0, 3):
            for q in P.all_perms(n):
                assert P.is_alternation(q) is Alternation.HORIZONTAL

    def test_definition(self):
        def split(q):
            odd = [i for i, v in enumerate(q) if v % 2]
            even = [i for i, v in enumerate(q) if not v % 2]
            return not odd or not even or max(odd) < min(even) or max(even) < min(odd)

        for q in P.all_perms(6):
            got = P.is_alternation(q)
            if split(q):
                assert got is Alternation.HORIZONTAL
            elif split(P.inverse(q)):
                assert got is Alternation.VERTICAL
            else:
                assert got is Alternation.NEITHER
