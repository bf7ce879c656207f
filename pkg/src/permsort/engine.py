"""
Exact breadth-first computations over S_n.

States are permutations indexed by their Lehmer rank. A breadth-first
search from the identity that expands ``x -> g o x`` for every generator
``g`` in ``C_n`` reaches exactly ``C^{ok}`` at depth ``k``; the sorting time
of ``pi`` is then the depth of ``pi^-1``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from . import perm as P
from .classes import PermClass, class_handle, denotes_all
from .errors import DomainError, EmptyGeneratorSet, EmptyLevel, LimitExceeded
from .perm import Perm

if TYPE_CHECKING:
    from .cache import ResultCache

log = logging.getLogger(__name__)

BFS_CAP = 10
LARGE_CAP = 11
UNREACHABLE = 255
INFINITE = math.inf
RIN_KEY = "rin[T;RR]"

_CHUNK_ROWS = 1 << 20


class RankCodec:
    """Lehmer-code ranking of S_n; ``rank(identity) == 0``."""

    def __init__(self, n: int):
        self.n = n
        self.size = math.factorial(n)
        self.weights = np.array([math.factorial(n - 1 - i) for i in range(n)], dtype=np.int64)

    def rank(self, pi: Sequence[int]) -> int:
        r = 0
        n = self.n
        for i in range(n):
            smaller = sum(1 for j in range(i + 1, n) if pi[j] < pi[i])
            r += smaller * math.factorial(n - 1 - i)
        return r

    def unrank(self, r: int) -> Perm:
        items = list(range(1, self.n + 1))
        out = []
        for i in range(self.n):
            f = math.factorial(self.n - 1 - i)
            out.append(items.pop(r // f))
            r %= f
        return Perm.trusted(out)

    def rank_many(self, arr: np.ndarray) -> np.ndarray:
        """Ranks of the rows of ``arr`` (0-based values)."""
        m, n = arr.shape
        ranks = np.zeros(m, dtype=np.int64)
        for i in range(n - 1):
            smaller = (arr[:, i + 1:] < arr[:, i:i + 1]).sum(axis=1)
            ranks += smaller * self.weights[i]
        return ranks

    def unrank_many(self, ranks: np.ndarray) -> np.ndarray:
        """Rows of 0-based values for the given ranks."""
        m, n = len(ranks), self.n
        out = np.empty((m, n), dtype=np.uint8)
        avail = np.ones((m, n), dtype=bool)
        rest = ranks.astype(np.int64, copy=True)
        rows = np.arange(m)
        for i in range(n):
            digit, rest = np.divmod(rest, self.weights[i])
            counts = np.cumsum(avail, axis=1)
            pos = (counts <= digit[:, None]).sum(axis=1)
            out[:, i] = pos
            avail[rows, pos] = False
        return out


@dataclass
class DistanceTable:
    """Per-(spec, n) BFS distances indexed by rank; 255 marks unreachable."""

    spec: str
    n: int
    distances: np.ndarray

    def __post_init__(self):
        self.codec = RankCodec(self.n)

    def distance(self, pi: Sequence[int]) -> float:
        d = int(self.distances[self.codec.rank(pi)])
        return INFINITE if d == UNREACHABLE else d

    def sorting_time(self, pi: Sequence[int]) -> float:
        """``st(C, pi)``, read off at the rank of ``pi^-1``."""
        return self.distance(P.inverse(pi))

    @property
    def reachable(self) -> int:
        return int(np.count_nonzero(self.distances != UNREACHABLE))

    def maximum(self) -> float:
        if self.reachable < len(self.distances):
            return INFINITE
        return int(self.distances.max())

    def argmax(self, limit: int = 5) -> list[Perm]:
        """Permutations attaining the worst-case sorting time (reachable or not)."""
        worst = self.maximum()
        target = UNREACHABLE if worst == INFINITE else worst
        ranks = np.flatnonzero(self.distances == target)[:limit]
        return [P.inverse(self.codec.unrank(int(r))) for r in ranks]


def _check_cap(n: int, allow_large: bool) -> None:
    cap = LARGE_CAP if allow_large else BFS_CAP
    if n > cap:
        raise LimitExceeded(f"n={n} exceeds the BFS cap {cap}"
                            + ("" if allow_large else " (use --allow-large for 11)"))
    if n < 0:
        raise DomainError("n must be non-negative")


def _bfs(codec: RankCodec, generators: np.ndarray, seeds: np.ndarray) -> np.ndarray:
    dist = np.full(codec.size, UNREACHABLE, dtype=np.uint8)
    dist[seeds] = 0
    visited = len(seeds)
    frontier = seeds
    depth = 0
    k = len(generators)
    chunk = max(1, _CHUNK_ROWS // max(k, 1))
    while len(frontier) and visited < codec.size:
        depth += 1
        if depth >= UNREACHABLE:
            raise LimitExceeded("BFS depth exceeds the one-byte distance range")
        found = []
        for start in range(0, len(frontier), chunk):
            states = codec.unrank_many(frontier[start:start + chunk])
            # (g o x)(i) = g(x(i)) for every generator g and state x
            products = generators[:, states].reshape(-1, codec.n)
            ranks = np.unique(codec.rank_many(products))
            fresh = ranks[dist[ranks] == UNREACHABLE]
            dist[fresh] = depth
            visited += len(fresh)
            found.append(fresh)
        frontier = np.concatenate(found) if found else np.empty(0, dtype=np.int64)
    return dist


def _as_array(perms: Sequence[Sequence[int]], n: int) -> np.ndarray:
    arr = np.array([list(p) for p in perms], dtype=np.uint8).reshape(len(perms), n)
    return arr - 1 if n else arr


_TABLES: dict[tuple[str, int], DistanceTable] = {}


def sorting_time_table(c: "PermClass | str", n: int, allow_large: bool = False,
                       cache: "ResultCache | None" = None) -> DistanceTable:
    c = class_handle(c)
    _check_cap(n, allow_large)
    key = (c.canonical, n)
    table = _TABLES.get(key)
    if table is None and cache is not None:
        table = cache.load_table(c.canonical, n)
    if table is None:
        table = _build_table(c, n)
        if cache is not None:
            cache.store_table(table)
    _TABLES[key] = table
    return table


def _build_table(c: PermClass, n: int) -> DistanceTable:
    codec = RankCodec(n)
    if denotes_all(c.spec):
        dist = np.ones(codec.size, dtype=np.uint8)
        dist[0] = 0
        return DistanceTable(c.canonical, n, dist)
    gens = c.level(n, cap=LARGE_CAP)
    if not gens:
        raise EmptyGeneratorSet(f"{c.canonical} has no members of size {n}")
    log.debug("BFS %s n=%d with %d generators", c.canonical, n, len(gens))
    dist = _bfs(codec, _as_array(gens, n), np.zeros(1, dtype=np.int64))
    return DistanceTable(c.canonical, n, dist)


def st(c: "PermClass | str", pi: Sequence[int], **kw) -> float:
    return sorting_time_table(c, len(pi), **kw).sorting_time(pi)


def wst(c: "PermClass | str", n: int, **kw) -> float:
    """Worst-case sorting time; ``INFINITE`` iff some permutation is unreachable."""
    return sorting_time_table(c, n, **kw).maximum()


def generated_subgroup_order(c: "PermClass | str", n: int, **kw) -> int:
    return sorting_time_table(c, n, **kw).reachable


def can_sort_at(c: "PermClass | str", n: int, **kw) -> bool:
    return generated_subgroup_order(c, n, **kw) == math.factorial(n)


def optimal_steps(c: "PermClass | str", pi: Sequence[int], **kw) -> list[Perm]:
    """A shortest list of class members whose product equals ``pi^-1``."""
    c = class_handle(c)
    n = len(pi)
    table = sorting_time_table(c, n, **kw)
    x = P.inverse(pi)
    d = table.distance(x)
    if d == INFINITE:
        raise DomainError(f"{c.canonical} cannot sort {pi}")
    if denotes_all(c.spec):
        return [] if d == 0 else [x]
    gens = c.level(n, cap=LARGE_CAP)
    steps = []
    while d > 0:
        # x = g o y with y one level closer to the identity
        for g in gens:
            y = P.compose(P.inverse(g), x)
            if table.distance(y) == d - 1:
                steps.append(g)
                x, d = y, d - 1
                break
        else:  # pragma: no cover - BFS invariant
            raise AssertionError("distance table lacks a predecessor")
    return steps


# --------------------------------------------------------------------------
# reduced inversion number


def rin_table(n: int, allow_large: bool = False,
              cache: "ResultCache | None" = None) -> DistanceTable:
    """Distances from RR_n under left composition with T_n (multi-source BFS)."""
    _check_cap(n, allow_large)
    key = (RIN_KEY, n)
    table = _TABLES.get(key)
    if table is None and cache is not None:
        table = cache.load_table(RIN_KEY, n)
    if table is None:
        codec = RankCodec(n)
        seeds = np.unique(np.array([codec.rank(p) for p in class_handle("RR").level(n, cap=LARGE_CAP)],
                                   dtype=np.int64))
        gens = class_handle("T").level(n, cap=LARGE_CAP)
        table = DistanceTable(RIN_KEY, n, _bfs(codec, _as_array(gens, n), seeds))
        if cache is not None:
            cache.store_table(table)
    _TABLES[key] = table
    return table


def rin(pi: Sequence[int], **kw) -> int:
    return int(rin_table(len(pi), **kw).distance(pi))


def rin_of_class(c: "PermClass | str", n: int, **kw) -> int:
    c = class_handle(c)
    members = c.level(n, cap=LARGE_CAP)
    if not members:
        raise EmptyLevel(f"{c.canonical} has no members of size {n}")
    table = rin_table(n, **kw)
    return max(int(table.distance(p)) for p in members)


def counting_lower_bound(n: int, level_size: int) -> int:
    """Least ``k >= 1`` with ``k * level_size**k >= n!``."""
    if level_size < 1:
        raise DomainError("level_size must be at least 1")
    target = math.factorial(n)
    if level_size == 1:
        return max(1, target)
    k = 1
    while k * level_size ** k < target:
        k += 1
    return k
