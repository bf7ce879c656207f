"""
Placing a class into one of the five worst-case sorting-time bands.

Every verdict carries its evidence and a confidence: ``Exact`` when a finite
witness settles the question, ``UpToSize(N)`` when the conclusion rests on
checks through size ``N`` only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any

from . import engine
from .classes import (ClassSpec, PermClass, Sym, Union, canonical, class_handle, class_symmetry,
                      denotes_all, known_basis, parse_class_spec)
from .errors import EmptyGeneratorSet, LimitExceeded
from .perm import Perm

DEFAULT_DEPTH = 6
PROPER_CHECK_MAX = 5


class Band(enum.IntEnum):
    """Ordered from slowest to fastest."""

    CannotSort = 0
    Quadratic = 1
    Linear = 2
    Polylog = 3
    OneStep = 4


def _x_set() -> list[str]:
    juxt = []
    for a in ("inc", "dec"):
        for b in ("inc", "dec"):
            juxt.append(f"grid([{a},{b}])")
            juxt.append(f"grid([{a}],[{b}])")
    return [canonical(parse_class_spec(s)) for s in juxt + ["L", "rev(L)", "PBT", "rev(PBT)"]]


X_SET: list[str] = _x_set()

# images of the non-grid X-classes under each symmetry; L and PBT are fixed
# by inverse (hence by flip), and complement agrees with reverse on both
_LAYERED_IMAGES = {"reverse": 1, "complement": 1, "inverse": 0, "flip": 0}


def x_image(x: str, op: str) -> str:
    """The X-class ``{pi^op : pi in x}``, as an element of ``X_SET``."""
    for base in ("L", "PBT"):
        if x in (base, f"rev({base})"):
            flipped = (x != base) ^ bool(_LAYERED_IMAGES[op])
            return f"rev({base})" if flipped else base
    return canonical(class_symmetry(parse_class_spec(x), op))


@dataclass(frozen=True)
class Confidence:
    exact: bool
    size: int | None = None

    def __str__(self) -> str:
        return "Exact" if self.exact else f"UpToSize({self.size})"


EXACT = Confidence(True)


def up_to(n: int) -> Confidence:
    return Confidence(False, n)


@dataclass
class Verdict:
    band: Band | None
    confidence: Confidence
    evidence: list[tuple[str, Any, Any]] = field(default_factory=list)

    @property
    def label(self) -> str:
        return self.band.name if self.band is not None else "Inconclusive(Quadratic-or-Linear)"

    def to_json(self) -> dict:
        return {
            "band": self.label,
            "confidence": str(self.confidence),
            "evidence": [{"check": name, "result": _plain(res), "witness": _plain(wit)}
                         for name, res, wit in self.evidence],
        }


def _plain(x: Any) -> Any:
    if isinstance(x, Perm):
        return x.compact()
    if isinstance(x, (Band, Confidence)):
        return str(x) if isinstance(x, Confidence) else x.name
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


# --------------------------------------------------------------------------
# X-set containment


@dataclass
class XContainment:
    contained: bool
    confidence: Confidence
    witness: Any

    def __iter__(self):
        return iter((self.contained, self.witness))


def _contains_x_exact(spec: ClassSpec, x: str) -> bool:
    """A sufficient structural proof that X-class ``x`` is a subclass of ``spec``."""
    if canonical(spec) == x:
        return True
    basis = known_basis(spec)
    if basis is not None:
        xc = class_handle(x)
        return not any(xc.member(b) for b in basis)
    if isinstance(spec, Union):
        return _contains_x_exact(spec.left, x) or _contains_x_exact(spec.right, x)
    if isinstance(spec, Sym):
        # X_i <= op(A) iff op(X_i) <= A since every op is an involution
        return _contains_x_exact(spec.inner, x_image(x, spec.op))
    return False


def x_containment(c: "PermClass | str", depth: int = DEFAULT_DEPTH) -> XContainment:
    """Does the class contain one of the twelve X-classes?

    A structural proof makes a positive answer Exact. Otherwise each X-class
    is compared member by member up to ``depth``; a negative answer is then
    still Exact because every X-class has a concrete non-member witness.
    """
    c = class_handle(c)
    for x in X_SET:
        if _contains_x_exact(c.spec, x):
            return XContainment(True, EXACT, {"subclass": x, "proof": "structural"})
    counter: dict[str, Perm] = {}
    survivor = None
    for x in X_SET:
        xc = class_handle(x)
        bad = None
        for m in range(1, depth + 1):
            bad = next((p for p in xc.level(m) if not c.member(p)), None)
            if bad is not None:
                break
        if bad is None:
            survivor = survivor or x
        else:
            counter[x] = bad
    if survivor is not None:
        return XContainment(True, up_to(depth), {"subclass": survivor, "proof": f"members up to {depth}"})
    return XContainment(False, EXACT, counter)


# --------------------------------------------------------------------------
# can-sort and rin checks


@dataclass
class CannotSortResult:
    status: str                 # "CannotSort" | "CanSortUpTo"
    witness: int | None         # first n with a proper generated subgroup
    confidence: Confidence
    signals: dict = field(default_factory=dict)

    def __iter__(self):
        return iter((self.status, self.witness))


def cannot_sort_check(c: "PermClass | str", n_max: int, allow_large: bool = False,
                      cache=None) -> CannotSortResult:
    c = class_handle(c)
    if n_max > (engine.LARGE_CAP if allow_large else engine.BFS_CAP):
        raise LimitExceeded(f"n_max={n_max} exceeds the BFS cap")
    for n in range(2, n_max + 1):
        try:
            order = engine.generated_subgroup_order(c, n, allow_large=allow_large, cache=cache)
        except EmptyGeneratorSet:
            order = 0
        if order != math.factorial(n):
            return CannotSortResult("CannotSort", n, EXACT, {"subgroup_order": order, "n": n})
    top = range(max(2, n_max - 2), n_max + 1)
    rr = class_handle("RR")
    signals = {"within_RR": all(all(rr.member(p) for p in c.level(n)) for n in top)}
    for k in (1, 2, 3):
        rf = class_handle(f"rfringe({k})")
        signals[f"within_rfringe{k}"] = all(all(rf.member(p) for p in c.level(n)) for n in top)
    return CannotSortResult("CanSortUpTo", None, up_to(n_max), signals)


@dataclass
class RinResult:
    status: str                 # "BoundedSuspected" | "UnboundedSuspected" | "Inconclusive"
    sequence: list[int]
    confidence: Confidence

    def __iter__(self):
        return iter((self.status, self.sequence))


def rin_trend(seq: list[int]) -> str:
    """Read the tail of the rin sequence.

    Flat over the last three values reads as bounded. Non-decreasing with a
    net rise over the last three reads as unbounded. Anything else is
    inconclusive.
    """
    if len(seq) < 3:
        return "Inconclusive"
    a, b, c = seq[-3:]
    if a == b == c:
        return "BoundedSuspected"
    if a <= b <= c and c > a:
        return "UnboundedSuspected"
    return "Inconclusive"


def rin_bounded_check(c: "PermClass | str", n_max: int, allow_large: bool = False,
                      cache=None) -> RinResult:
    c = class_handle(c)
    seq = [engine.rin_of_class(c, n, allow_large=allow_large, cache=cache)
           for n in range(3, n_max + 1)]
    return RinResult(rin_trend(seq), seq, up_to(n_max))


# --------------------------------------------------------------------------
# the ladder


def shown_proper(c: PermClass, upto: int = PROPER_CHECK_MAX) -> int | None:
    """Least ``m <= upto`` with ``|C_m| != m!``, if any."""
    for m in range(1, upto + 1):
        if len(c.level(m)) != math.factorial(m):
            return m
    return None


def classify(c: "PermClass | str", n_max: int = 7, depth: int = DEFAULT_DEPTH,
             allow_large: bool = False, cache=None) -> Verdict:
    c = class_handle(c)
    evidence: list[tuple[str, Any, Any]] = []
    if denotes_all(c.spec):
        evidence.append(("denotes_all", True, c.canonical))
        return Verdict(Band.OneStep, EXACT, evidence)

    cs = cannot_sort_check(c, n_max, allow_large=allow_large, cache=cache)
    evidence.append(("cannot_sort_check", cs.status, cs.witness if cs.witness else cs.signals))
    if cs.status == "CannotSort":
        return Verdict(Band.CannotSort, EXACT, evidence)

    m = shown_proper(c)
    evidence.append(("proper", m is not None, m))
    if m is not None:
        xc = x_containment(c, depth)
        evidence.append(("x_containment", xc.contained, xc.witness))
        if xc.contained:
            return Verdict(Band.Polylog, xc.confidence, evidence)

    rb = rin_bounded_check(c, n_max, allow_large=allow_large, cache=cache)
    evidence.append(("rin_bounded_check", rb.status, rb.sequence))
    if rb.status == "UnboundedSuspected":
        return Verdict(Band.Linear, up_to(n_max), evidence)
    if rb.status == "BoundedSuspected":
        return Verdict(Band.Quadratic, up_to(n_max), evidence)
    return Verdict(None, up_to(n_max), evidence)


CANONICAL_SUITE: dict[str, Band] = {
    "R": Band.CannotSort,
    "RR": Band.CannotSort,
    "fringe(2)": Band.CannotSort,
    "Av(21)": Band.CannotSort,
    "Bub": Band.Quadratic,
    "T": Band.Quadratic,
    "F": Band.Linear,
    "Pan": Band.Linear,
    "Ins": Band.Linear,
    "L": Band.Polylog,
    "PBT": Band.Polylog,
    "grid([inc,inc])": Band.Polylog,
    "all": Band.OneStep,
}

# confidence each suite member is expected to reach at n_max = 7
SUITE_CONFIDENCE: dict[str, Confidence] = {
    spec: (EXACT if band in (Band.CannotSort, Band.Polylog, Band.OneStep) else up_to(7))
    for spec, band in CANONICAL_SUITE.items()
}
