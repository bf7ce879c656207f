import math
import random

import pytest

from permsort import perm as P
from permsort.classes import class_handle
from permsort.engine import sorting_time_table
from permsort.perm import Perm
from permsort.sorters import (SORTERS, SortCertificate, certificate_failure, sort_bubble, sort_insertion,
                              sort_layered, sort_odd_even, sort_pancake, sort_pbt, sort_peg_ca,
                              sort_radix_juxtaposition, step_bound, verify_certificate, _layered_factors)


def p(s):
    return Perm.parse(s)


def product_left_to_right(steps, n):
    out = P.identity(n)
    for s in steps:
        out = P.compose(out, s)
    return out


class TestVerify:
    def test_examples(self):
        assert verify_certificate(SortCertificate(P.identity(4), "F", []))
        assert verify_certificate(SortCertificate(p("21"), "F", [p("21")]))
        assert not verify_certificate(SortCertificate(p("321"), "F", [p("213")]))

    def test_reasons(self):
        assert certificate_failure(SortCertificate(p("321"), "F", [p("12")])) == "step 1 has size 2, expected 3"
        assert certificate_failure(SortCertificate(p("321"), "F", [p("321")])) == "step 1 not a member of F"
        assert "composition mismatch" in certificate_failure(SortCertificate(p("321"), "F", [p("213")]))
        assert certificate_failure(SortCertificate(p("21"), "Av(", [])).startswith("bad spec")

    def test_text_round_trip(self):
        cert = sort_pbt(P.decreasing(8))
        back = SortCertificate.from_text(cert.to_text())
        assert back == cert
        assert cert.to_text().splitlines()[:2] == ["8 7 6 5 4 3 2 1", "PBT"]


class TestExamples:
    def test_bubble(self):
        assert len(sort_bubble(p("21"))) == 1
        assert len(sort_bubble(p("321"))) == 3
        assert len(sort_bubble(P.identity(5))) == 0

    def test_insertion(self):
        assert len(sort_insertion(P.decreasing(4))) == 3
        assert len(sort_insertion(P.identity(5))) == 0
        assert len(sort_insertion(p("2341"))) == 1
        # some inputs ending in 1 need fewer than n-1 steps
        assert min(len(sort_insertion(q)) for q in P.all_perms(4) if q[-1] == 1) == 1

    def test_odd_even(self):
        assert len(sort_odd_even(p("321"))) == 3
        assert len(sort_odd_even(P.identity(6))) == 0
        assert len(sort_odd_even(p("21"))) == 1
        for n in range(3, 8):
            assert len(sort_odd_even(P.decreasing(n))) == n

    def test_pancake(self):
        cert = sort_pancake(p("312"))
        assert cert.steps == [p("321"), p("213")]
        assert len(sort_pancake(P.identity(5))) == 0
        for n in range(2, 9):
            assert sort_pancake(P.decreasing(n)).steps == [P.decreasing(n)]

    def test_radix(self):
        # the first pass leaves 3142 unchanged and is skipped
        assert sort_radix_juxtaposition(p("3142")).steps == [p("2413")]
        assert len(sort_radix_juxtaposition(P.identity(8))) == 0
        for q in P.all_perms(6):
            assert len(sort_radix_juxtaposition(q)) <= 3

    def test_pbt(self):
        assert len(sort_pbt(P.decreasing(8))) == 3
        assert len(sort_pbt(P.identity(7))) == 0

    def test_layered(self):
        assert P.compose(p("321"), p("213")) == p("231") == P.skew_sum(P.identity(2), P.identity(1))
        lam1, lam2 = _layered_factors(3, [(0, 1, 2)])
        assert (lam1, lam2) == ([3, 2, 1], [2, 1, 3])
        assert len(sort_layered(P.decreasing(8))) <= 6
        assert len(sort_layered(p("21"))) == 1

    def test_peg(self):
        assert len(sort_peg_ca(p("21"))) == 1
        assert len(sort_peg_ca(p("321"))) == 6
        assert len(sort_peg_ca(P.identity(4))) == 0

    def test_pbt_example_step(self):
        # one exchange of adjacent blocks applied on the right
        sigma = Perm((3, 1, 2, 4, 5, 9, 6, 7, 8))
        assert class_handle("PBT").member(sigma)
        assert P.compose(Perm((3, 8, 1, 6, 2, 5, 9, 4, 7)), sigma) == (1, 3, 8, 6, 2, 7, 5, 9, 4)


@pytest.mark.parametrize("name", sorted(SORTERS))
def test_exhaustive_certificates(name):
    func, spec = SORTERS[name]
    cls = class_handle(spec)
    for n in range(0, 8):
        for q in P.all_perms(n):
            cert = func(q)
            assert cert.spec == spec
            assert verify_certificate(cert), (name, q, certificate_failure(cert))
            assert len(cert) <= step_bound(name, q)
            assert all(cls.member(s) and s != P.identity(n) for s in cert.steps)
            assert product_left_to_right(cert.steps, n) == P.inverse(q)


@pytest.mark.parametrize("name", sorted(SORTERS))
@pytest.mark.parametrize("n", [16, 32])
def test_random_certificates(name, n):
    rng = random.Random(n)
    func, _ = SORTERS[name]
    for _ in range(60):
        q = Perm(rng.sample(range(1, n + 1), n))
        cert = func(q)
        assert verify_certificate(cert)
        assert len(cert) <= step_bound(name, q)


def test_bubble_count_is_inversions():
    for q in P.all_perms(6):
        assert len(sort_bubble(q)) == P.count_inversions(q)


def test_layered_at_most_twice_pbt():
    for q in P.all_perms(7):
        assert len(sort_layered(q)) <= 2 * len(sort_pbt(q))


def test_pbt_bound_shape():
    for n in range(2, 8):
        lg = math.ceil(math.log2(n))
        assert max(len(sort_pbt(q)) for q in P.all_perms(n)) <= (lg + 2) ** 2


@pytest.mark.parametrize("name", sorted(SORTERS))
def test_never_beats_optimum(name):
    func, spec = SORTERS[name]
    table = sorting_time_table(spec, 6)
    for q in P.all_perms(6):
        assert table.sorting_time(q) <= len(func(q))
