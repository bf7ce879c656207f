"""
Adjacency graphs, sorting diagrams and treewidth.

Vertices are 0-based integers. The adjacency graph ``G(pi)`` labels vertex
``i`` by position ``i + 1``. A sorting diagram keeps the integer coordinates
of its straight-line drawing so the drawing is reproducible exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_degree, treewidth_min_fill_in

from . import perm as P
from .errors import LimitExceeded, SizeMismatch

EXACT_TW_CAP = 14


@dataclass
class Graph:
    n: int
    edges: frozenset = frozenset()
    coords: list[tuple[int, int]] | None = None
    labels: list[str] | None = None
    edge_roles: dict = field(default_factory=dict)

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            norm.add((min(u, v), max(u, v)))
        self.edges = frozenset(norm)

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def to_json(self) -> dict:
        out = {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}
        out["coords"] = [list(c) for c in self.coords] if self.coords else None
        out["roles"] = ({f"{u}-{v}": r for (u, v), r in sorted(self.edge_roles.items())}
                        if self.edge_roles else None)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        roles = {}
        for key, role in (data.get("roles") or {}).items():
            u, v = map(int, key.split("-"))
            roles[(u, v)] = role
        coords = [tuple(c) for c in data["coords"]] if data.get("coords") else None
        return cls(data["n"], frozenset(tuple(e) for e in data["edges"]), coords, None, roles)


def adjacency_graph(pi: Sequence[int]) -> Graph:
    """Edges join entries at adjacent positions or with adjacent values."""
    n = len(pi)
    where = P.inverse(pi)
    edges = {(i, i + 1) for i in range(n - 1)}
    for v in range(1, n):
        a, b = where[v - 1] - 1, where[v] - 1
        edges.add((min(a, b), max(a, b)))
    return Graph(n, frozenset(edges))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


@dataclass
class SortingDiagram:
    graph: Graph
    n: int
    steps: list = field(default_factory=list)
    roles: list[str] = field(default_factory=list)    # "start" | "terminal" | "internal"
    blocks: list[str] = field(default_factory=list)   # "D1", "S1", ..., "D{t+1}"
    path_of: list[int] = field(default_factory=list)  # 0-based path index per vertex

    @property
    def t(self) -> int:
        return len(self.steps)

    def composed(self):
        """``sigma^t o ... o sigma^1``."""
        return reduce(lambda acc, s: P.compose(s, acc), self.steps, P.identity(self.n))


def build_sorting_diagram(steps: Sequence[Sequence[int]], n: int | None = None) -> SortingDiagram:
    """Build ``SD(sigma^1, ..., sigma^t)``.

    Block ``D_i = P[t+2-i, i]`` holds a copy of the identity and
    ``S_i = P[t+2-i, i+1]`` a copy of ``sigma^i``; any two vertices on a common
    horizontal or vertical line are joined, plus the diagonal edges
    ``s_i s_{i+1}`` and ``t_i t_{i+1}``.
    """
    steps = [P.Perm(s) for s in steps]
    if n is None:
        if not steps:
            raise ValueError("n is required when no steps are given")
        n = len(steps[0])
    for s in steps:
        if len(s) != n:
            raise SizeMismatch(f"step {s} has size {len(s)}, expected {n}")
    t = len(steps)

    coords: list[tuple[int, int]] = []
    blocks: list[str] = []

    def place(a: int, b: int, sigma: Sequence[int], name: str) -> None:
        for i in range(1, n + 1):
            coords.append(((a - 1) * n + i, (b - 1) * n + sigma[i - 1]))
            blocks.append(name)

    ident = P.identity(n)
    for i in range(1, t + 2):
        place(t + 2 - i, i, ident, f"D{i}")
        if i <= t:
            place(t + 2 - i, i + 1, steps[i - 1], f"S{i}")

    edges: dict[tuple[int, int], str] = {}
    for axis, role in ((1, "horizontal"), (0, "vertical")):
        lines: dict[int, list[int]] = {}
        for v, c in enumerate(coords):
            lines.setdefault(c[axis], []).append(v)
        for members in lines.values():
            for x in range(len(members)):
                for y in range(x + 1, len(members)):
                    edges[(members[x], members[y])] = role
    start = list(range(n))                      # D_1 is placed first
    terminal = list(range(2 * t * n, (2 * t + 1) * n))
    for group in (start, terminal):
        for a, b in zip(group, group[1:]):
            edges[(a, b)] = "diagonal"

    roles = ["internal"] * len(coords)
    for v in start:
        roles[v] = "start"
    for v in terminal:
        roles[v] = "terminal"
    if t == 0:
        roles = ["start"] * n

    g = Graph(len(coords), frozenset(edges), coords, [f"{b}:{r}" for b, r in zip(blocks, roles)],
              {(min(u, v), max(u, v)): r for (u, v), r in edges.items()})
    path_of = _trace_paths(g, n)
    return SortingDiagram(g, n, steps, roles, blocks, path_of)


def _trace_paths(g: Graph, n: int) -> list[int]:
    """Label each vertex by the horizontal/vertical path it lies on."""
    adj = [set() for _ in range(g.n)]
    for (u, v), role in g.edge_roles.items():
        if role != "diagonal":
            adj[u].add(v)
            adj[v].add(u)
    path_of = [-1] * g.n
    for s in range(n):
        stack = [s]
        while stack:
            v = stack.pop()
            if path_of[v] >= 0:
                continue
            path_of[v] = s
            stack.extend(adj[v])
    return path_of


def contract_to_adjacency(sd: SortingDiagram) -> Graph:
    """Contract all horizontal and vertical edges; vertex ``i`` is the path from ``s_{i+1}``."""
    edges = set()
    for (u, v), role in sd.graph.edge_roles.items():
        if role == "diagonal":
            a, b = sd.path_of[u], sd.path_of[v]
            if a != b:
                edges.add((min(a, b), max(a, b)))
    return Graph(sd.n, frozenset(edges))


def terminal_of_path(sd: SortingDiagram) -> list[int]:
    """1-based terminal index reached by each path (``s_i -> t_{pi(i)}``)."""
    base = 2 * sd.t * sd.n
    out = [0] * sd.n
    for v in range(base, base + sd.n):
        out[sd.path_of[v]] = v - base + 1
    return out


def straight_line_crossings(sd: SortingDiagram) -> int:
    """Crossings of the straight-line drawing: one per inversion of each step."""
    return sum(P.count_inversions(s) for s in sd.steps)


# --------------------------------------------------------------------------
# treewidth


def _degeneracy(adj: dict[int, set[int]]) -> int:
    adj = {v: set(ns) for v, ns in adj.items()}
    best = 0
    while adj:
        v = min(adj, key=lambda x: len(adj[x]))
        best = max(best, len(adj[v]))
        for w in adj.pop(v):
            adj[w].discard(v)
    return best


def _eliminate(adj: dict[int, set[int]], v: int) -> None:
    ns = adj.pop(v)
    for w in ns:
        adj[w].discard(v)
        adj[w] |= ns - {w}


def _is_clique(adj: dict[int, set[int]], vs: Iterable[int]) -> bool:
    vs = list(vs)
    return all(vs[j] in adj[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))


def _reduce(adj: dict[int, set[int]]) -> int:
    """Apply the simplicial and almost-simplicial rules in place; returns the lower bound."""
    low = _degeneracy(adj)
    changed = True
    while changed and adj:
        changed = False
        for v in sorted(adj, key=lambda x: len(adj[x])):
            ns = adj[v]
            if _is_clique(adj, ns):
                low = max(low, len(ns))
                _eliminate(adj, v)
                changed = True
                break
            if len(ns) <= low and any(_is_clique(adj, ns - {w}) for w in ns):
                _eliminate(adj, v)
                changed = True
                break
    return low


def _component_tw(adj: dict[int, set[int]]) -> int:
    """Subset DP over elimination orders on a connected graph."""
    verts = sorted(adj)
    k = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    nbr = [0] * k
    for v in verts:
        for w in adj[v]:
            nbr[idx[v]] |= 1 << idx[w]

    def q(s: int, v: int) -> int:
        # vertices outside s and v reachable from v through s
        seen = 1 << v
        frontier = 1 << v
        outside = 0
        while frontier:
            i = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = nbr[i] & ~seen
            seen |= new
            outside |= new & ~s
            frontier |= new & s
        return bin(outside).count("1")

    full = (1 << k) - 1
    tw = [0] * (1 << k)
    tw[0] = -1
    for s in range(1, full + 1):
        best = k
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            prev = s ^ low
            cand = max(tw[prev], q(prev, v))
            if cand < best:
                best = cand
        tw[s] = best
    return tw[full]


def treewidth_exact(g: Graph) -> int:
    """Exact treewidth; the subset DP runs on whatever remains after safe reductions."""
    adj = {v: set(ns) for v, ns in enumerate(g.adjacency())}
    if not g.edges:
        return 0
    low = _reduce(adj)
    best = low
    seen: set[int] = set()
    for v in list(adj):
        if v in seen:
            continue
        comp = set(nx.node_connected_component(_nx(adj), v))
        seen |= comp
        if len(comp) > EXACT_TW_CAP:
            raise LimitExceeded(f"treewidth_exact: irreducible part has {len(comp)} vertices "
                                f"(cap {EXACT_TW_CAP})")
        if len(comp) > best + 1:
            best = max(best, _component_tw({u: adj[u] for u in comp}))
    return best


def _nx(adj: dict[int, set[int]]) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(adj)
    g.add_edges_from((u, w) for u, ns in adj.items() for w in ns)
    return g


def treewidth_upper(g: Graph) -> int:
    """Best of the min-degree and min-fill elimination heuristics."""
    if not g.edges:
        return 0
    h = g.to_networkx()
    return min(treewidth_min_degree(h)[0], treewidth_min_fill_in(h)[0])


# --------------------------------------------------------------------------
# export


def export_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        attrs = []
        if g.coords:
            x, y = g.coords[v]
            attrs.append(f'pos="{x},{y}!"')
        if g.labels:
            attrs.append(f'label="{g.labels[v]}"')
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for u, v in sorted(g.edges):
        role = g.edge_roles.get((u, v))
        lines.append(f"  {u} -- {v}" + (f' [role="{role}"]' if role else "") + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: Graph) -> str:
    return json.dumps(g.to_json(), sort_keys=True)
