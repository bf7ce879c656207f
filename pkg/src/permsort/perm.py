"""
Permutations in one-line notation and their elementary operations.

A :class:`Perm` is an immutable tuple of the values ``pi(1), ..., pi(n)``.
Indexing the tuple is 0-based as usual; calling the permutation is 1-based,
so ``p(i)`` is the mathematical ``pi(i)``.

>>> p = Perm.parse("2413")
>>> p(1), p.inverse()
(2, Perm(3142))
>>> compose(Perm.parse("231"), Perm.parse("312"))
Perm(123)
"""

from __future__ import annotations

import enum
import re
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError, SizeMismatch

__all__ = [
    "Perm", "PointSet", "Alternation",
    "identity", "decreasing", "compose", "inverse", "reverse", "complement", "flip",
    "direct_sum", "skew_sum", "contains_pattern", "count_inversions",
    "sum_decompose", "skew_decompose", "cyclic_distance", "total_cyclic_distance",
    "intervalicity", "is_alternation", "normalize", "delete_point", "all_perms",
]


class Perm(tuple):
    """A permutation of ``{1, ..., n}``; the empty permutation is allowed."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        self = super().__new__(cls, values)
        n = len(self)
        seen = [False] * (n + 1)
        for v in self:
            if not isinstance(v, int) or v < 1 or v > n or seen[v]:
                raise DomainError(f"not a permutation of 1..{n}: {tuple(self)}")
            seen[v] = True
        return self

    @classmethod
    def trusted(cls, values: Iterable[int]) -> "Perm":
        """Wrap ``values`` without validation; callers guarantee correctness."""
        return tuple.__new__(cls, values)

    @classmethod
    def parse(cls, text: str) -> "Perm":
        """Parse ``"2 4 1 3"``, ``"2,4,1,3"`` or the compact ``"2413"`` (n <= 9)."""
        text = text.strip().strip("()[]")
        if not text:
            return cls()
        if re.fullmatch(r"\d+", text):
            return cls(int(c) for c in text)
        parts = [t for t in re.split(r"[\s,]+", text) if t]
        if not all(t.isdigit() for t in parts):
            raise DomainError(f"cannot parse permutation from {text!r}")
        return cls(int(t) for t in parts)

    @property
    def size(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def __repr__(self) -> str:
        return f"Perm({self.compact()})"

    def __str__(self) -> str:
        return " ".join(map(str, self))

    def compact(self) -> str:
        if len(self) <= 9:
            return "".join(map(str, self)) or "()"
        return " ".join(map(str, self))

    def inverse(self) -> "Perm":
        return inverse(self)

    def points(self) -> list[tuple[int, int]]:
        """The diagram ``{(i, pi(i))}``."""
        return [(i + 1, v) for i, v in enumerate(self)]


def identity(n: int) -> Perm:
    return Perm.trusted(range(1, n + 1))


def decreasing(n: int) -> Perm:
    return Perm.trusted(range(n, 0, -1))


def normalize(values: Sequence[int]) -> Perm:
    """The permutation order-isomorphic to a sequence of distinct numbers."""
    ranks = {v: r for r, v in enumerate(sorted(values), start=1)}
    return Perm.trusted(ranks[v] for v in values)


def delete_point(pi: Sequence[int], index: int) -> Perm:
    """Remove the entry at 0-based ``index`` and renormalize."""
    removed = pi[index]
    return Perm.trusted(v - (v > removed) for j, v in enumerate(pi) if j != index)


def compose(sigma: Sequence[int], pi: Sequence[int]) -> Perm:
    """``sigma o pi``, i.e. ``i -> sigma(pi(i))``."""
    if len(sigma) != len(pi):
        raise SizeMismatch(f"cannot compose sizes {len(sigma)} and {len(pi)}")
    return Perm.trusted(sigma[v - 1] for v in pi)


def inverse(pi: Sequence[int]) -> Perm:
    out = [0] * len(pi)
    for i, v in enumerate(pi, start=1):
        out[v - 1] = i
    return Perm.trusted(out)


def reverse(pi: Sequence[int]) -> Perm:
    return Perm.trusted(reversed(pi))


def complement(pi: Sequence[int]) -> Perm:
    n1 = len(pi) + 1
    return Perm.trusted(n1 - v for v in pi)


def flip(pi: Sequence[int]) -> Perm:
    """Reflection over the anti-diagonal: ``((pi^r)^-1)^r``."""
    return reverse(inverse(reverse(pi)))


def direct_sum(alpha: Sequence[int], beta: Sequence[int]) -> Perm:
    k = len(alpha)
    return Perm.trusted((*alpha, *(k + v for v in beta)))


def skew_sum(alpha: Sequence[int], beta: Sequence[int]) -> Perm:
    ell = len(beta)
    return Perm.trusted((*(ell + v for v in alpha), *beta))


def contains_pattern(pi: Sequence[int], sigma: Sequence[int]) -> bool:
    """True iff ``pi`` has a subsequence order-isomorphic to ``sigma``.

    Backtracking over index embeddings. A partial embedding of
    ``sigma[:j]`` fixes, for the next pattern entry, an open window of
    admissible values (between its nearest already-placed neighbours in
    value order), which prunes most branches.
    """
    k, n = len(sigma), len(pi)
    if k == 0:
        return True
    if k > n:
        return False
    # for each pattern position j, the earlier positions holding the nearest
    # smaller and larger pattern values
    below: list[int] = []
    above: list[int] = []
    for j in range(k):
        lo = hi = -1
        for i in range(j):
            if sigma[i] < sigma[j] and (lo < 0 or sigma[i] > sigma[lo]):
                lo = i
            if sigma[i] > sigma[j] and (hi < 0 or sigma[i] < sigma[hi]):
                hi = i
        below.append(lo)
        above.append(hi)

    chosen = [0] * k

    def extend(j: int, start: int) -> bool:
        if j == k:
            return True
        lo = chosen[below[j]] if below[j] >= 0 else 0
        hi = chosen[above[j]] if above[j] >= 0 else n + 1
        for i in range(start, n - (k - j) + 1):
            v = pi[i]
            if lo < v < hi:
                chosen[j] = v
                if extend(j + 1, i + 1):
                    return True
        return False

    return extend(0, 0)


def count_inversions(pi: Sequence[int]) -> int:
    n = len(pi)
    return sum(1 for i in range(n) for j in range(i + 1, n) if pi[i] > pi[j])


def sum_decompose(pi: Sequence[int]) -> list[Perm]:
    """Finest decomposition into sum-indecomposable blocks."""
    blocks = []
    start = top = 0
    for i, v in enumerate(pi):
        top = max(top, v)
        if top == i + 1:
            blocks.append(Perm.trusted(x - start for x in pi[start:i + 1]))
            start = i + 1
    return blocks


def skew_decompose(pi: Sequence[int]) -> list[Perm]:
    """Finest decomposition into skew-indecomposable blocks."""
    n = len(pi)
    blocks = []
    start = 0
    low = n + 1
    for i, v in enumerate(pi):
        low = min(low, v)
        if low == n - i:
            base = low - 1
            blocks.append(Perm.trusted(x - base for x in pi[start:i + 1]))
            start = i + 1
    return blocks


def cyclic_distance(i: int, j: int, n: int) -> int:
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"cyclic_distance needs 1 <= i, j <= n, got {i}, {j}, {n}")
    d = abs(i - j)
    return min(d, n - d)


def total_cyclic_distance(pi: Sequence[int]) -> int:
    n = len(pi)
    if n == 0:
        return 0
    total = cyclic_distance(pi[0], pi[-1], n)
    for a, b in zip(pi, pi[1:]):
        d = abs(a - b)
        total += min(d, n - d)
    return total


class PointSet(frozenset):
    """A finite set of integer points in general position."""

    def __new__(cls, points: Iterable[tuple[int, int]] = ()):
        self = super().__new__(cls, (tuple(p) for p in points))
        xs = [x for x, _ in self]
        ys = [y for _, y in self]
        if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
            raise DomainError("point set is not in general position")
        return self


def _runs(values: Iterable[int]) -> int:
    vs = sorted(values)
    return sum(1 for i, v in enumerate(vs) if i == 0 or v != vs[i - 1] + 1)


def intervalicity(points: Iterable[tuple[int, int]]) -> int:
    """Max over both axis projections of the number of maximal integer runs."""
    p = points if isinstance(points, PointSet) else PointSet(points)
    return max(_runs(x for x, _ in p), _runs(y for _, y in p)) if p else 0


class Alternation(enum.Enum):
    HORIZONTAL = "Horizontal"
    VERTICAL = "Vertical"
    NEITHER = "Neither"


def _odd_even_split(pi: Sequence[int]) -> bool:
    parities = [v % 2 for v in pi]
    changes = sum(1 for a, b in zip(parities, parities[1:]) if a != b)
    return changes <= 1


def is_alternation(pi: Sequence[int]) -> Alternation:
    if _odd_even_split(pi):
        return Alternation.HORIZONTAL
    if _odd_even_split(inverse(pi)):
        return Alternation.VERTICAL
    return Alternation.NEITHER


def all_perms(n: int) -> Iterable[Perm]:
    """All of S_n in lexicographic order."""
    from itertools import permutations

    return (Perm.trusted(p) for p in permutations(range(1, n + 1)))


def subpatterns(pi: Sequence[int], k: int) -> set[Perm]:
    return {normalize([pi[i] for i in idx]) for idx in combinations(range(len(pi)), k)}
