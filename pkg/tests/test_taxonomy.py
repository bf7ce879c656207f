import itertools

import pytest

from permsort import perm as P
from permsort.classes import class_handle
from permsort.engine import rin_of_class, rin_table, wst
from permsort.perm import Perm
from permsort.taxonomy import (CANONICAL_SUITE, SUITE_CONFIDENCE, X_SET, Band, cannot_sort_check, classify,
                               rin_bounded_check, rin_trend, shown_proper, x_containment, x_image)


def test_x_set_has_twelve_distinct_classes():
    assert len(X_SET) == len(set(X_SET)) == 12
    levels = {x: tuple(class_handle(x).level(5)) for x in X_SET}
    assert len(set(levels.values())) == 12


@pytest.mark.parametrize("op", ["reverse", "complement", "inverse", "flip"])
def test_x_images(op):
    f = {"reverse": P.reverse, "complement": P.complement, "inverse": P.inverse, "flip": P.flip}[op]
    for x in X_SET:
        image = x_image(x, op)
        assert image in X_SET
        for n in range(0, 8):
            assert sorted(f(q) for q in class_handle(x).level(n)) == class_handle(image).level(n)


class TestXContainment:
    def test_examples(self):
        res = x_containment("Av(321)")
        assert res.contained and res.confidence.exact
        assert res.witness["subclass"] == "grid([inc,inc])"
        assert not class_handle("grid([inc,inc])").member(Perm.parse("321"))

        bub = x_containment("Bub", 6)
        assert not bub.contained and bub.confidence.exact
        assert set(bub.witness) == set(X_SET)
        for x, w in bub.witness.items():
            assert len(w) <= 4 and class_handle(x).member(w) and not class_handle("Bub").member(w)

        assert x_containment("L").contained

    def test_symmetric_images(self):
        for spec in ("rev(L)", "inv(PBT)", "comp(grid([inc,inc]))", "union(Pan,L)"):
            res = x_containment(spec)
            assert res.contained and res.confidence.exact, spec

    def test_semi_decision(self):
        # a union with no structural handle still finds its X-subclass by members
        res = x_containment("sumcl(union(R,Av(12,321)))")
        assert res.contained and not res.confidence.exact and res.confidence.size == 6

    @pytest.mark.parametrize("spec", ["Bub", "T", "F", "Pan", "Ins", "R", "RR", "fringe(2)"])
    def test_slow_classes_contain_none(self, spec):
        assert not x_containment(spec).contained

    def test_depth_separates_suite(self):
        # non-containment witnesses never need more than size 6
        for spec in ("Bub", "T", "F", "Pan", "Ins"):
            res = x_containment(spec, 6)
            assert max(len(w) for w in res.witness.values()) <= 6


class TestCannotSort:
    def test_examples(self):
        res = cannot_sort_check("RR", 6)
        assert (res.status, res.witness) == ("CannotSort", 4) and res.signals["subgroup_order"] == 8
        assert res.confidence.exact
        res = cannot_sort_check("Av(21)", 6)
        assert (res.status, res.witness) == ("CannotSort", 2)
        res = cannot_sort_check("Bub", 6)
        assert res.status == "CanSortUpTo" and str(res.confidence) == "UpToSize(6)"
        assert res.signals["within_RR"] is False

    def test_signals_for_fringe_like(self):
        res = cannot_sort_check("union(Bub,rfringe(1))", 6)
        assert res.status == "CanSortUpTo"
        assert not res.signals["within_rfringe3"]

    def test_cap(self):
        from permsort.errors import LimitExceeded
        with pytest.raises(LimitExceeded):
            cannot_sort_check("Bub", 12)


class TestRinCheck:
    def test_examples(self):
        res = rin_bounded_check("Bub", 7)
        assert res.status == "BoundedSuspected" and res.sequence[-1] == 1
        res = rin_bounded_check("F", 7)
        assert res.status == "UnboundedSuspected" and res.sequence == [0, 1, 2, 3, 3]
        res = rin_bounded_check("RR", 7)
        assert res.status == "BoundedSuspected" and set(res.sequence) == {0}

    def test_trend_rule(self):
        assert rin_trend([1, 1, 1]) == "BoundedSuspected"
        assert rin_trend([0, 1, 2]) == "UnboundedSuspected"
        assert rin_trend([2, 3, 3]) == "UnboundedSuspected"
        assert rin_trend([2, 2, 3]) == "UnboundedSuspected"
        assert rin_trend([3, 2, 3]) == "Inconclusive"
        assert rin_trend([1, 2]) == "Inconclusive"


class TestClassify:
    def test_examples(self):
        v = classify("all")
        assert v.band is Band.OneStep and v.confidence.exact
        assert classify("Bub").band is Band.Quadratic
        v = classify("L")
        assert v.band is Band.Polylog and v.confidence.exact

    @pytest.mark.parametrize("spec", sorted(CANONICAL_SUITE))
    def test_canonical_suite(self, spec):
        v = classify(spec, 7)
        assert v.band is CANONICAL_SUITE[spec]
        assert v.confidence == SUITE_CONFIDENCE[spec]
        if v.band is Band.CannotSort:
            assert v.confidence.exact
            n = v.evidence[-1][2]
            assert wst(spec, n) == float("inf")

    def test_json_shape(self):
        data = classify("Pan", 6).to_json()
        assert data["band"] == "Linear" and data["confidence"] == "UpToSize(6)"
        assert [e["check"] for e in data["evidence"]] == ["cannot_sort_check", "proper", "x_containment",
                                                          "rin_bounded_check"]

    def test_bands_ordered(self):
        assert Band.CannotSort < Band.Quadratic < Band.Linear < Band.Polylog < Band.OneStep

    def test_proper(self):
        assert shown_proper(class_handle("grid([inc,inc])")) == 3
        assert shown_proper(class_handle("Av(123456)")) is None


def test_quadratic_rin_bound():
    for spec, band in CANONICAL_SUITE.items():
        if band is not Band.Quadratic:
            continue
        for n in range(3, 8):
            worst = int(rin_table(n).distances.max())
            assert wst(spec, n) * rin_of_class(spec, n) >= worst


def test_inversions_bounded_on_avoider():
    c = class_handle("Av(321,456123)")
    for n in range(1, 10):
        for q in c.level(n):
            assert P.count_inversions(q) <= 8 * n
    for n in range(1, 10):
        assert P.count_inversions(P.decreasing(n)) == n * (n - 1) // 2
