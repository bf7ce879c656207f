"""
Hereditary permutation classes: a small expression language, its parser,
and compiled membership oracles with level enumeration.

Grammar (rows of a ``grid`` are written top to bottom)::

    expr := NAME | Av(perm, ...) | grid(row, ...) | union(expr, expr)
          | rev(expr) | comp(expr) | inv(expr) | flip(expr)
          | sumcl(expr) | skewcl(expr) | fringe(INT) | rfringe(INT)
    row  := [cell, ...]
    cell := . | pt | inc | dec | expr

>>> c = class_handle("union(R, rev(R))")
>>> len(c.level(4))
8
>>> class_handle("Av(312, 231)").canonical
'Av(231,312)'
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Sequence, Union as TUnion

from . import perm as P
from .errors import LimitExceeded, SpecSyntaxError
from .perm import Perm

NAMED_TAGS = ("all", "inc", "dec", "L", "F", "R", "RR", "PBT", "Bub", "T", "Pan", "Ins")
SYMMETRIES = ("reverse", "complement", "inverse", "flip")
_SYM_WORD = {"rev": "reverse", "comp": "complement", "inv": "inverse", "flip": "flip"}
_WORD_OF_SYM = {v: k for k, v in _SYM_WORD.items()}
_PERM_SYM: dict[str, Callable[[Sequence[int]], Perm]] = {
    "reverse": P.reverse,
    "complement": P.complement,
    "inverse": P.inverse,
    "flip": P.flip,
}

DEFAULT_ENUM_CAP = 10

# Av bases of the named classes for which one is known
NAMED_BASES = {
    "inc": ("21",),
    "dec": ("12",),
    "L": ("231", "312"),
    "F": ("231", "312", "321"),
}


# --------------------------------------------------------------------------
# expression tree


@dataclass(frozen=True)
class Named:
    tag: str


@dataclass(frozen=True)
class Av:
    basis: tuple[Perm, ...]


@dataclass(frozen=True)
class Point:
    """The cell class {empty, 1}."""


@dataclass(frozen=True)
class Empty:
    """The cell class containing only the empty permutation."""


@dataclass(frozen=True)
class Grid:
    # rows[j][i] is the entry in column i+1, row j+1; row 1 is the bottom row
    rows: tuple[tuple["ClassSpec", ...], ...]

    @property
    def width(self) -> int:
        return len(self.rows[0])

    @property
    def height(self) -> int:
        return len(self.rows)

    def entry(self, col: int, row: int) -> "ClassSpec":
        """Entry ``M_{col,row}``, 1-indexed, rows counted from the bottom."""
        return self.rows[row - 1][col - 1]

    @classmethod
    def from_columns(cls, entries: dict[tuple[int, int], "ClassSpec"], width: int,
                     height: int) -> "Grid":
        return cls(tuple(
            tuple(entries.get((i, j), Empty()) for i in range(1, width + 1))
            for j in range(1, height + 1)
        ))


@dataclass(frozen=True)
class Union:
    left: "ClassSpec"
    right: "ClassSpec"


@dataclass(frozen=True)
class Sym:
    inner: "ClassSpec"
    op: str


@dataclass(frozen=True)
class SumClosure:
    inner: "ClassSpec"


@dataclass(frozen=True)
class SkewClosure:
    inner: "ClassSpec"


@dataclass(frozen=True)
class Fringe:
    k: int


@dataclass(frozen=True)
class RFringe:
    k: int


ClassSpec = TUnion[Named, Av, Point, Empty, Grid, Union, Sym, SumClosure, SkewClosure,
                   Fringe, RFringe]


def make_av(patterns: Sequence[Sequence[int]]) -> Av:
    """Av node with a normalized basis: no redundant patterns, sorted."""
    basis = sorted({Perm(p) for p in patterns}, key=lambda p: (len(p), tuple(p)))
    if not basis:
        raise SpecSyntaxError("Av() needs at least one pattern")
    minimal = [b for b in basis
               if not any(o != b and len(o) <= len(b) and P.contains_pattern(b, o) for o in basis)]
    return Av(tuple(minimal))


def canonical(spec: ClassSpec) -> str:
    """Fully parenthesized canonical text; re-parses to the same tree."""
    if isinstance(spec, Named):
        return spec.tag
    if isinstance(spec, Av):
        return "Av(" + ",".join(p.compact() for p in spec.basis) + ")"
    if isinstance(spec, Point):
        return "pt"
    if isinstance(spec, Empty):
        return "."
    if isinstance(spec, Grid):
        rows = ["[" + ",".join(canonical(c) for c in row) + "]" for row in reversed(spec.rows)]
        return "grid(" + ",".join(rows) + ")"
    if isinstance(spec, Union):
        return f"union({canonical(spec.left)},{canonical(spec.right)})"
    if isinstance(spec, Sym):
        return f"{_WORD_OF_SYM[spec.op]}({canonical(spec.inner)})"
    if isinstance(spec, SumClosure):
        return f"sumcl({canonical(spec.inner)})"
    if isinstance(spec, SkewClosure):
        return f"skewcl({canonical(spec.inner)})"
    if isinstance(spec, Fringe):
        return f"fringe({spec.k})"
    if isinstance(spec, RFringe):
        return f"rfringe({spec.k})"
    raise TypeError(f"not a class spec: {spec!r}")


# --------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> SpecSyntaxError:
        return SpecSyntaxError(message, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def word(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a name")
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def perm(self) -> Perm:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in ",)":
            self.pos += 1
        token = self.text[start:self.pos].strip()
        if not token:
            raise SpecSyntaxError("expected a permutation", start)
        try:
            p = Perm.parse(token)
        except ValueError as exc:
            raise SpecSyntaxError(str(exc), start) from None
        if not p:
            raise SpecSyntaxError("empty pattern in Av()", start)
        return p

    def expr(self) -> ClassSpec:
        start = self.pos
        name = self.word()
        if name in NAMED_TAGS:
            return Named(name)
        if name == "Av":
            self.expect("(")
            patterns = [self.perm()]
            while self.peek() == ",":
                self.pos += 1
                patterns.append(self.perm())
            self.expect(")")
            return make_av(patterns)
        if name == "grid":
            self.expect("(")
            rows = [self.row()]
            while self.peek() == ",":
                self.pos += 1
                rows.append(self.row())
            self.expect(")")
            if len({len(r) for r in rows}) != 1:
                raise SpecSyntaxError("malformed matrix: rows of different lengths", start)
            if all(isinstance(c, Empty) for r in rows for c in r):
                raise SpecSyntaxError("malformed matrix: no nonempty cell", start)
            return Grid(tuple(reversed(rows)))
        if name == "union":
            self.expect("(")
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(")")
            return Union(left, right)
        if name in _SYM_WORD:
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Sym(inner, _SYM_WORD[name])
        if name in ("sumcl", "skewcl"):
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return SumClosure(inner) if name == "sumcl" else SkewClosure(inner)
        if name in ("fringe", "rfringe"):
            self.expect("(")
            k = self.integer()
            self.expect(")")
            return Fringe(k) if name == "fringe" else RFringe(k)
        raise SpecSyntaxError(f"unknown name {name!r}", start)

    def row(self) -> tuple[ClassSpec, ...]:
        self.expect("[")
        cells = [self.cell()]
        while self.peek() == ",":
            self.pos += 1
            cells.append(self.cell())
        self.expect("]")
        return tuple(cells)

    def cell(self) -> ClassSpec:
        ch = self.peek()
        if ch == ".":
            self.pos += 1
            return Empty()
        save = self.pos
        if self.word() == "pt":
            return Point()
        self.pos = save
        return self.expr()


def parse_class_spec(text: str) -> ClassSpec:
    parser = _Parser(text)
    spec = parser.expr()
    if parser.peek():
        raise parser.error("trailing input")
    return spec


# --------------------------------------------------------------------------
# symmetries of specs

_NAMED_SYM = {
    ("inc", "reverse"): "dec", ("inc", "complement"): "dec",
    ("inc", "inverse"): "inc", ("inc", "flip"): "inc",
    ("dec", "reverse"): "inc", ("dec", "complement"): "inc",
    ("dec", "inverse"): "dec", ("dec", "flip"): "dec",
}


def _grid_transform(m: Grid, op: str) -> Grid:
    k, ell = m.width, m.height
    out: dict[tuple[int, int], ClassSpec] = {}
    for i in range(1, k + 1):
        for j in range(1, ell + 1):
            e = m.entry(i, j)
            if isinstance(e, Empty):
                continue
            e = class_symmetry(e, op)
            if op == "reverse":
                out[(k - i + 1, j)] = e
            elif op == "complement":
                out[(i, ell - j + 1)] = e
            else:  # inverse
                out[(j, i)] = e
    if op == "inverse":
        return Grid.from_columns(out, ell, k)
    return Grid.from_columns(out, k, ell)


def class_symmetry(spec: ClassSpec, op: str) -> ClassSpec:
    """A spec denoting ``{pi^op : pi in spec}``."""
    if op not in SYMMETRIES:
        raise ValueError(f"unknown symmetry {op!r}")
    if isinstance(spec, (Point, Empty)) or spec == Named("all"):
        return spec
    if isinstance(spec, Named) and (spec.tag, op) in _NAMED_SYM:
        return Named(_NAMED_SYM[(spec.tag, op)])
    if isinstance(spec, Av):
        return make_av([_PERM_SYM[op](b) for b in spec.basis])
    if isinstance(spec, Grid):
        if op == "flip":
            return _grid_transform(_grid_transform(_grid_transform(spec, "reverse"), "inverse"),
                                   "reverse")
        return _grid_transform(spec, op)
    if isinstance(spec, Union):
        return Union(class_symmetry(spec.left, op), class_symmetry(spec.right, op))
    if isinstance(spec, Sym) and spec.op == op:
        return spec.inner
    return Sym(spec, op)


# --------------------------------------------------------------------------
# gridding


@dataclass(frozen=True)
class Gridding:
    """Cut positions: column c holds positions (v[c-1], v[c]], row r values (h[r-1], h[r]]."""

    col_cuts: tuple[int, ...]
    row_cuts: tuple[int, ...]


def _capacity(spec: ClassSpec) -> float:
    if isinstance(spec, Empty):
        return 0
    if isinstance(spec, Point):
        return 1
    return math.inf


def gridding_search(m: "Grid | GridClass", pi: Sequence[int]) -> Gridding | None:
    """Find an M-gridding of ``pi`` by exhaustive cut search, or None.

    Vertical cuts are enumerated first (bounded by column capacities), then
    horizontal cuts row by row. Raising a horizontal cut only adds points to
    that row's cells, so by heredity a failing cell ends the scan for that row.
    """
    g = m if isinstance(m, GridClass) else class_handle(m)
    spec: Grid = g.spec
    k, ell = spec.width, spec.height
    n = len(pi)
    col_cap = [sum(_capacity(spec.entry(i, j)) for j in range(1, ell + 1)) for i in range(1, k + 1)]
    row_cap = [sum(_capacity(spec.entry(i, j)) for i in range(1, k + 1)) for j in range(1, ell + 1)]

    def cell_ok(col: int, row: int, values: list[int]) -> bool:
        handle = g.cells[row - 1][col - 1]
        return handle.member(P.normalize(values))

    def rows_search(cols_of: list[int], col_cuts: tuple[int, ...]) -> Gridding | None:
        def check_row(row: int, lo: int, hi: int) -> bool:
            groups: dict[int, list[int]] = {}
            for pos, v in enumerate(pi):
                if lo < v <= hi:
                    groups.setdefault(cols_of[pos], []).append(v)
            for col in range(1, k + 1):
                if not cell_ok(col, row, groups.get(col, [])):
                    return False
            return True

        def rec(row: int, lo: int, cuts: tuple[int, ...]) -> Gridding | None:
            if row == ell:
                if n - lo > row_cap[row - 1] or not check_row(row, lo, n):
                    return None
                return Gridding(col_cuts, cuts)
            for hi in range(lo, n + 1):
                if hi - lo > row_cap[row - 1] or not check_row(row, lo, hi):
                    break
                found = rec(row + 1, hi, cuts + (hi,))
                if found:
                    return found
            return None

        return rec(1, 0, ())

    def cols_search(col: int, lo: int, cuts: tuple[int, ...]) -> Gridding | None:
        if col == k:
            if n - lo > col_cap[col - 1]:
                return None
            cols_of = [0] * n
            bounds = (0, *cuts, n)
            for c in range(1, k + 1):
                for pos in range(bounds[c - 1], bounds[c]):
                    cols_of[pos] = c
            return rows_search(cols_of, cuts)
        for hi in range(lo, n + 1):
            if hi - lo > col_cap[col - 1]:
                break
            found = cols_search(col + 1, hi, cuts + (hi,))
            if found:
                return found
        return None

    return cols_search(1, 0, ())


def is_peg_matrix(m: Grid) -> bool:
    allowed = (Point(), Named("inc"), Named("dec"))
    for j in range(1, m.height + 1):
        if sum(not isinstance(m.entry(i, j), Empty) for i in range(1, m.width + 1)) != 1:
            return False
    for i in range(1, m.width + 1):
        if sum(not isinstance(m.entry(i, j), Empty) for j in range(1, m.height + 1)) != 1:
            return False
    return all(e in allowed for row in m.rows for e in row if not isinstance(e, Empty))


# --------------------------------------------------------------------------
# compiled classes


class PermClass:
    """A compiled class: exact membership plus level enumeration.

    Membership answers are memoized per instance; instances are shared
    through :func:`class_handle`, keyed by canonical form.
    """

    _MEMO_LIMIT = 1 << 18

    def __init__(self, spec: ClassSpec):
        self.spec = spec
        self.canonical = canonical(spec)
        self._memo: dict[tuple, bool] = {}
        self._levels: dict[int, list[Perm]] = {}

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.canonical}>"

    def member(self, pi: Sequence[int]) -> bool:
        key = tuple(pi)
        hit = self._memo.get(key)
        if hit is None:
            if len(self._memo) >= self._MEMO_LIMIT:
                self._memo.clear()
            hit = self._memo[key] = self._member(key)
        return hit

    __contains__ = member

    def _member(self, pi: tuple[int, ...]) -> bool:
        raise NotImplementedError

    def level(self, n: int, cap: int = DEFAULT_ENUM_CAP) -> list[Perm]:
        """All members of size ``n``, lexicographically sorted."""
        if n > cap:
            raise LimitExceeded(f"enumeration of size {n} exceeds cap {cap}")
        if n not in self._levels:
            self._levels[n] = self._level(n)
        return self._levels[n]

    def _level(self, n: int) -> list[Perm]:
        # every member of size n minus its entry n is a member of size n-1
        if n == 0:
            return [Perm()] if self.member(()) else []
        out = []
        for tau in self._levels.get(n - 1) or self.level(n - 1, cap=n - 1):
            for pos in range(n):
                cand = Perm.trusted((*tau[:pos], n, *tau[pos:]))
                if self.member(cand):
                    out.append(cand)
        out.sort()
        return out


def _is_identity(pi: Sequence[int]) -> bool:
    return all(v == i for i, v in enumerate(pi, start=1))


def _is_rotation(pi: Sequence[int]) -> bool:
    n = len(pi)
    return all(pi[i + 1] == pi[i] % n + 1 for i in range(n - 1))


def _is_adjacent_swap(pi: Sequence[int]) -> bool:
    """Identity, or iota_a + 21 + iota_b."""
    moved = [i for i, v in enumerate(pi, start=1) if v != i]
    if not moved:
        return True
    return (len(moved) == 2 and moved[1] == moved[0] + 1
            and pi[moved[0] - 1] == moved[1] and pi[moved[1] - 1] == moved[0])


def _is_pancake(pi: Sequence[int]) -> bool:
    if not pi:
        return True
    a = pi[0]
    return (all(pi[i] == a - i for i in range(a))
            and all(pi[i] == i + 1 for i in range(a, len(pi))))


def _is_insertion(pi: Sequence[int]) -> bool:
    if not pi:
        return True
    m = pi[0]
    rest = [v for v in range(1, len(pi) + 1) if v != m]
    return list(pi[1:]) == rest


def _is_cyclic_shape(pi: Sequence[int]) -> bool:
    """Members of Grid(pt / inc / pt) on the anti-diagonal corners."""
    n = len(pi)
    if n < 2:
        return True
    ident = list(range(1, n + 1))
    shapes = (
        [n] + ident[1:-1] + [1],        # 1 (-) iota (-) 1
        [n] + ident[:-1],               # 1 (-) iota
        ident[1:] + [1],                # iota (-) 1
    )
    return _is_identity(pi) or any(list(pi) == s for s in shapes)


def _is_fringe(pi: Sequence[int], k: int) -> bool:
    n = len(pi)
    for p in range(0, min(k, n) + 1):
        if p and max(pi[:p]) != p:
            continue
        for s in range(0, min(k, n - p) + 1):
            if s and min(pi[n - s:]) != n - s + 1:
                continue
            if all(pi[i] == i + 1 for i in range(p, n - s)):
                return True
    return False


def sum_closure_member(inner: "PermClass", pi: Sequence[int]) -> bool:
    """Is ``pi`` a direct sum of members of ``inner``?

    DP over the finest sum decomposition ``a_1 ... a_m``: ``ok[i]`` holds when
    the first ``i`` components can be grouped into members of ``inner``.
    """
    comps = P.sum_decompose(pi)
    return _closure_dp(inner, comps, P.direct_sum)


def skew_closure_member(inner: "PermClass", pi: Sequence[int]) -> bool:
    return _closure_dp(inner, P.skew_decompose(pi), P.skew_sum)


def _closure_dp(inner: "PermClass", comps: list[Perm], join) -> bool:
    m = len(comps)
    ok = [False] * (m + 1)
    ok[0] = True
    for i in range(1, m + 1):
        block: Perm = Perm()
        for j in range(i - 1, -1, -1):
            block = join(comps[j], block)
            if ok[j] and inner.member(block):
                ok[i] = True
                break
    return ok[m]


class NamedClass(PermClass):
    def __init__(self, spec: Named):
        super().__init__(spec)
        self.tag = spec.tag
        if self.tag == "PBT":
            self._rotations = class_handle(Named("R"))

    def _member(self, pi):
        t = self.tag
        if t == "all":
            return True
        if t == "inc":
            return _is_identity(pi)
        if t == "dec":
            return all(v == len(pi) - i for i, v in enumerate(pi))
        if t == "L":
            return all(_is_decreasing(c) for c in P.sum_decompose(pi))
        if t == "F":
            return all(len(c) <= 2 for c in P.sum_decompose(pi))
        if t == "R":
            return _is_rotation(pi)
        if t == "RR":
            return _is_rotation(pi) or _is_rotation(pi[::-1])
        if t == "PBT":
            return sum_closure_member(self._rotations, pi)
        if t == "Bub":
            return _is_adjacent_swap(pi)
        if t == "T":
            return _is_adjacent_swap(pi) or _is_cyclic_shape(pi)
        if t == "Pan":
            return _is_pancake(pi)
        if t == "Ins":
            return _is_insertion(pi)
        raise AssertionError(t)

    def _level(self, n):
        if self.tag == "all":
            return [Perm.trusted(p) for p in permutations(range(1, n + 1))]
        return super()._level(n)


def _is_decreasing(pi: Sequence[int]) -> bool:
    return all(a > b for a, b in zip(pi, pi[1:]))


class AvClass(PermClass):
    def _member(self, pi):
        return not any(P.contains_pattern(pi, b) for b in self.spec.basis)


class PointClass(PermClass):
    def _member(self, pi):
        return len(pi) <= 1


class EmptyClass(PermClass):
    def _member(self, pi):
        return len(pi) == 0


class GridClass(PermClass):
    def __init__(self, spec: Grid):
        super().__init__(spec)
        self.cells = [[class_handle(e) for e in row] for row in spec.rows]

    def _member(self, pi):
        return gridding_search(self, pi) is not None


class UnionClass(PermClass):
    def __init__(self, spec: Union):
        super().__init__(spec)
        self.left = class_handle(spec.left)
        self.right = class_handle(spec.right)

    def _member(self, pi):
        return self.left.member(pi) or self.right.member(pi)

    def _level(self, n):
        return sorted(set(self.left.level(n, cap=n)) | set(self.right.level(n, cap=n)))


class SymClass(PermClass):
    def __init__(self, spec: Sym):
        super().__init__(spec)
        self.inner = class_handle(spec.inner)
        self.op = _PERM_SYM[spec.op]

    def _member(self, pi):
        return self.inner.member(self.op(pi))

    def _level(self, n):
        return sorted(self.op(p) for p in self.inner.level(n, cap=n))


class SumClosureClass(PermClass):
    def __init__(self, spec: SumClosure):
        super().__init__(spec)
        self.inner = class_handle(spec.inner)

    def _member(self, pi):
        return sum_closure_member(self.inner, pi)


class SkewClosureClass(PermClass):
    def __init__(self, spec: SkewClosure):
        super().__init__(spec)
        self.inner = class_handle(spec.inner)

    def _member(self, pi):
        return skew_closure_member(self.inner, pi)


class FringeClass(PermClass):
    def _member(self, pi):
        return _is_fringe(pi, self.spec.k)


class RFringeClass(PermClass):
    def _member(self, pi):
        k = self.spec.k
        return _is_fringe(pi, k) or _is_fringe(pi[::-1], k)


_COMPILERS = {
    Named: NamedClass, Av: AvClass, Point: PointClass, Empty: EmptyClass, Grid: GridClass,
    Union: UnionClass, Sym: SymClass, SumClosure: SumClosureClass,
    SkewClosure: SkewClosureClass, Fringe: FringeClass, RFringe: RFringeClass,
}
_HANDLES: dict[str, PermClass] = {}


def class_handle(spec: "ClassSpec | str | PermClass") -> PermClass:
    """Compile (or fetch the shared compiled instance of) a class spec."""
    if isinstance(spec, PermClass):
        return spec
    if isinstance(spec, str):
        spec = parse_class_spec(spec)
    key = canonical(spec)
    handle = _HANDLES.get(key)
    if handle is None:
        handle = _HANDLES[key] = _COMPILERS[type(spec)](spec)
    return handle


def member(c: "PermClass | ClassSpec | str", pi: Sequence[int]) -> bool:
    return class_handle(c).member(pi)


def enumerate_level(c: "PermClass | ClassSpec | str", n: int,
                    cap: int = DEFAULT_ENUM_CAP) -> list[Perm]:
    return class_handle(c).level(n, cap=cap)


def denotes_all(spec: ClassSpec) -> bool:
    """Structural test for specs that certainly denote every permutation."""
    if spec == Named("all"):
        return True
    if isinstance(spec, Union):
        return denotes_all(spec.left) or denotes_all(spec.right)
    if isinstance(spec, (Sym, SumClosure, SkewClosure)):
        return denotes_all(spec.inner)
    if isinstance(spec, Grid):
        return any(denotes_all(e) for row in spec.rows for e in row)
    return False


def known_basis(spec: ClassSpec) -> tuple[Perm, ...] | None:
    """An Av basis for the class when one is known exactly."""
    if isinstance(spec, Av):
        return spec.basis
    if isinstance(spec, Named) and spec.tag in NAMED_BASES:
        return make_av([Perm.parse(b) for b in NAMED_BASES[spec.tag]]).basis
    if isinstance(spec, Sym):
        inner = known_basis(spec.inner)
        if inner is not None:
            return make_av([_PERM_SYM[spec.op](b) for b in inner]).basis
    return None
