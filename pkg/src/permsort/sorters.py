"""
Constructive sorters that emit checkable certificates.

Every step is applied on the right: ``current <- current o step``, which
rearranges positions. A certificate for ``pi`` is a list of class members
``s_1, ..., s_t`` with ``pi o s_1 o ... o s_t == identity``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import perm as P
from .classes import class_handle
from .errors import DomainError
from .perm import Perm

JUXTAPOSITION_SPEC = "grid([inc,inc])"
PEG_CA_SPEC = "grid([pt,.,.],[.,pt,.],[.,.,inc])"


@dataclass
class SortCertificate:
    input: Perm
    spec: str
    steps: list[Perm] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def to_text(self) -> str:
        lines = [str(self.input), self.spec, *map(str, self.steps)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SortCertificate":
        lines = [ln.strip() for ln in text.splitlines()]
        while lines and not lines[-1]:
            lines.pop()
        if len(lines) < 2:
            raise DomainError("certificate needs an input line and a spec line")
        pi = Perm.parse(lines[0])
        steps = [Perm.parse(ln) for ln in lines[2:]]
        return cls(pi, lines[1], steps)


def certificate_failure(cert: SortCertificate) -> str | None:
    """Why ``cert`` is invalid, or None when it checks out."""
    n = len(cert.input)
    try:
        cls = class_handle(cert.spec)
    except ValueError as exc:
        return f"bad spec: {exc}"
    current = cert.input
    checked: set = set()  # sorters repeat steps; test each distinct one once
    for i, step in enumerate(cert.steps, start=1):
        if len(step) != n:
            return f"step {i} has size {len(step)}, expected {n}"
        if step not in checked:
            if not cls.member(step):
                return f"step {i} not a member of {cert.spec}"
            checked.add(step)
        current = P.compose(current, step)
    if current != P.identity(n):
        return f"composition mismatch: steps leave {current} instead of the identity"
    return None


def verify_certificate(cert: SortCertificate) -> bool:
    return certificate_failure(cert) is None


class _Run:
    """Accumulates steps while tracking the current arrangement."""

    def __init__(self, pi: Sequence[int], spec: str):
        self.cert = SortCertificate(Perm(pi), spec)
        self.current = list(pi)

    def apply(self, step: Sequence[int]) -> None:
        step = Perm.trusted(step)
        if step == P.identity(len(step)):
            return
        self.current = [self.current[v - 1] for v in step]
        self.cert.steps.append(step)

    def done(self) -> bool:
        return all(v == i for i, v in enumerate(self.current, start=1))


def _swaps(n: int, pairs: Sequence[int]) -> list[int]:
    """Product of disjoint adjacent transpositions (i, i+1), 0-based ``i``."""
    step = list(range(1, n + 1))
    for i in pairs:
        step[i], step[i + 1] = step[i + 1], step[i]
    return step


def sort_bubble(pi: Sequence[int]) -> SortCertificate:
    run = _Run(pi, "Bub")
    n = len(pi)
    while not run.done():
        i = next(i for i in range(n - 1) if run.current[i] > run.current[i + 1])
        run.apply(_swaps(n, [i]))
    return run.cert


def sort_insertion(pi: Sequence[int]) -> SortCertificate:
    """Move values ``m, m-1, ..., 1`` to the front, where ``m+1..n`` already
    appear in increasing order; a step ``(m', 1, .., m'-1, m'+1, .., n)``
    brings position ``m'`` to the front."""
    run = _Run(pi, "Ins")
    n = len(pi)
    where = {v: i for i, v in enumerate(pi)}
    m = n - 1
    while m >= 1 and where[m] < where[m + 1]:
        m -= 1
    for v in range(m, 0, -1):
        pos = run.current.index(v) + 1
        run.apply([pos] + [x for x in range(1, n + 1) if x != pos])
    return run.cert


def _odd_even_rounds(pi: Sequence[int]):
    """Yield the swap pairs of each non-trivial odd-even transposition round."""
    current = list(pi)
    n = len(current)
    parity = 0
    while any(current[i] > current[i + 1] for i in range(n - 1)):
        pairs = [i for i in range(parity, n - 1, 2) if current[i] > current[i + 1]]
        for i in pairs:
            current[i], current[i + 1] = current[i + 1], current[i]
        if pairs:
            yield pairs
        parity ^= 1


def sort_odd_even(pi: Sequence[int]) -> SortCertificate:
    run = _Run(pi, "F")
    for pairs in _odd_even_rounds(pi):
        run.apply(_swaps(len(pi), pairs))
    return run.cert


def sort_pancake(pi: Sequence[int]) -> SortCertificate:
    run = _Run(pi, "Pan")
    n = len(pi)

    def prefix_flip(a: int) -> list[int]:
        return list(range(a, 0, -1)) + list(range(a + 1, n + 1))

    for k in range(n, 1, -1):
        top = run.current[:k]
        p = top.index(max(top)) + 1
        if p == k:
            continue
        if p != 1:
            run.apply(prefix_flip(p))
        run.apply(prefix_flip(k))
    return run.cert


def sort_radix_juxtaposition(pi: Sequence[int]) -> SortCertificate:
    """LSD radix sort; each pass is a stable partition by one bit of value-1.

    Stops as soon as the arrangement is sorted, so sorted inputs take no steps.
    """
    run = _Run(pi, JUXTAPOSITION_SPEC)
    n = len(pi)
    for bit in range(math.ceil(math.log2(n)) if n > 1 else 0):
        if run.done():
            break
        zeros = [i + 1 for i, v in enumerate(run.current) if not (v - 1) >> bit & 1]
        ones = [i + 1 for i, v in enumerate(run.current) if (v - 1) >> bit & 1]
        run.apply(zeros + ones)
    return run.cert


def _block_swap_step(n: int, swaps: Sequence[tuple[int, int, int]]) -> list[int]:
    """Step exchanging blocks ``[p, p+a)`` and ``[p+a, p+a+b)`` for each ``(p, a, b)``."""
    step = list(range(1, n + 1))
    for p, a, b in swaps:
        for i in range(b):
            step[p + i] = p + a + i + 1
        for i in range(a):
            step[p + b + i] = p + i + 1
    return step


def _pbt_steps(pi: Sequence[int]) -> list[tuple[list[int], list[tuple[int, int, int]]]]:
    """Block-swap schedule for the divide-and-conquer PBT sorter.

    Returns ``(step, swaps)`` pairs; ``swaps`` lists the ``(p, a, b)`` block
    exchanges that make up the step.
    """
    current = list(pi)
    n = len(current)
    out = []
    # segments: (start, length, lowest value); all values lie in [low, low+length)
    segments = [(0, n, 1)] if n > 1 else []
    while segments:
        while True:
            swaps = []
            for start, length, low in segments:
                threshold = low + length // 2  # values below are "small"
                runs = []  # (position, length, is_small)
                for i in range(start, start + length):
                    small = current[i] < threshold
                    if runs and runs[-1][2] == small:
                        runs[-1][1] += 1
                    else:
                        runs.append([i, 1, small])
                # large run followed by small run: take every other such boundary
                boundaries = [j for j in range(len(runs) - 1) if not runs[j][2] and runs[j + 1][2]]
                for j in boundaries[::2]:
                    swaps.append((runs[j][0], runs[j][1], runs[j + 1][1]))
            if not swaps:
                break
            step = _block_swap_step(n, swaps)
            current = [current[v - 1] for v in step]
            out.append((step, swaps))
        nxt = []
        for start, length, low in segments:
            half = length // 2
            for seg in ((start, half, low), (start + half, length - half, low + half)):
                if seg[1] > 1:
                    nxt.append(seg)
        segments = nxt
    return out


def sort_pbt(pi: Sequence[int]) -> SortCertificate:
    run = _Run(pi, "PBT")
    for step, _ in _pbt_steps(pi):
        run.apply(step)
    return run.cert


def _layered_factors(n: int, swaps: Sequence[tuple[int, int, int]]) -> tuple[list[int], list[int]]:
    """Split a block-swap step into two layered steps ``lam1 o lam2``.

    Per summand ``iota_b (-) iota_a`` the factors are ``delta_{a+b}`` and
    ``delta_b (+) delta_a``.
    """
    lam1 = list(range(1, n + 1))
    lam2 = list(range(1, n + 1))
    for p, a, b in swaps:
        for i in range(a + b):
            lam1[p + i] = p + a + b - i
        for i in range(b):
            lam2[p + i] = p + b - i
        for i in range(a):
            lam2[p + b + i] = p + b + a - i
    return lam1, lam2


def sort_layered(pi: Sequence[int]) -> SortCertificate:
    run = _Run(pi, "L")
    n = len(pi)
    for _, swaps in _pbt_steps(pi):
        lam1, lam2 = _layered_factors(n, swaps)
        run.apply(lam1)
        run.apply(lam2)
    return run.cert


def sort_peg_ca(pi: Sequence[int]) -> SortCertificate:
    """Simulate each odd-even round by one cyclic pass of the peg class C_a.

    Under right composition the two members ``(n, 1, .., n-1)`` and
    ``(n, n-1, 1, .., n-2)`` move the last one or two entries to the front,
    the latter swapping them. A pass works from the back, so after ``n``
    moved entries the rotation cancels and only the round's swaps remain.
    """
    run = _Run(pi, PEG_CA_SPEC)
    n = len(pi)
    single = [n] + list(range(1, n))
    double = [n, n - 1] + list(range(1, n - 1))
    for pairs in _odd_even_rounds(pi):
        swapped = set(pairs)
        j = n - 1  # 0-based original position now at the back
        while j >= 0:
            if j >= 1 and (j - 1) in swapped:
                run.apply(double)
                j -= 2
            else:
                run.apply(single)
                j -= 1
    return run.cert


SORTERS: dict[str, tuple[Callable[[Sequence[int]], SortCertificate], str]] = {
    "bubble": (sort_bubble, "Bub"),
    "insertion": (sort_insertion, "Ins"),
    "oddeven": (sort_odd_even, "F"),
    "pancake": (sort_pancake, "Pan"),
    "radix": (sort_radix_juxtaposition, JUXTAPOSITION_SPEC),
    "pbt": (sort_pbt, "PBT"),
    "layered": (sort_layered, "L"),
    "pegca": (sort_peg_ca, PEG_CA_SPEC),
}


def step_bound(name: str, pi: Sequence[int]) -> int:
    """The step-count contract of each sorter."""
    n = len(pi)
    lg = math.ceil(math.log2(n)) if n > 1 else 0
    return {
        "bubble": P.count_inversions(pi),
        "insertion": max(n - 1, 0),
        "oddeven": n,
        "pancake": max(2 * n - 3, 0),
        "radix": lg,
        "pbt": (lg + 2) ** 2,
        "layered": 2 * (lg + 2) ** 2,
        "pegca": n * n,
    }[name]
