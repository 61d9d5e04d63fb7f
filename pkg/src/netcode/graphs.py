"""Simple connected graphs with 1-based vertex labels, cuts, spanning
trees, Hamiltonian cycles and the coordinate-mixing operator on words.

Every operation is deterministic: neighbors are visited in index order and
enumerations are lexicographic, so downstream transcripts are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterator

from .codes import Word
from .errors import CapacityError, ParameterError

HAMILTONIAN_CAP = 12
SUBSET_BUDGET = 1 << 20


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]
    _adj: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError(f"graph needs n >= 2 vertices, got {self.n}")
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for (u, v) in self.edges:
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            if not (1 <= u < v <= self.n):
                raise ParameterError(f"edge ({u},{v}) out of range or not normalized")
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        object.__setattr__(self, "_adj", adj)
        # connectivity
        seen = {1}
        stack = [1]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != self.n:
            raise ParameterError("graph is not connected")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        return cls(n, frozenset(_norm_edge(u, v) for u, v in edges))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> list[int]:
        return self._adj[v]

    def adjacent(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ParameterError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(1, n + 1), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


_BUILTINS = {"cycle": cycle_graph, "complete": complete_graph, "path": path_graph}


def graph_from_spec(spec: str) -> Graph:
    """Resolve "cycle:n" / "complete:n" / "path:n" or a file path."""
    if ":" in spec:
        name, _, arg = spec.partition(":")
        if name in _BUILTINS:
            try:
                n = int(arg)
            except ValueError as exc:
                raise ParameterError(f"bad vertex count in {spec!r}") from exc
            return _BUILTINS[name](n)
        raise ParameterError(f"unknown builtin graph {name!r}")
    return load_graph(spec)


def load_graph(path) -> Graph:
    """Text format: first line "n", then one "u v" pair per line."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise ParameterError(f"empty graph file {path}")
    n = int(lines[0])
    edges = []
    for ln in lines[1:]:
        u, v = (int(tok) for tok in ln.split())
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def save_graph(g: Graph, path):
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.sorted_edges()]
    Path(path).write_text("\n".join(lines) + "\n")


def cut_set(g: Graph, s) -> list[tuple[int, int]]:
    """Edges crossing the cut (S, complement), sorted."""
    s = frozenset(s)
    if not s or not s < set(g.vertices):
        raise ParameterError("S must be a nonempty proper subset of the vertices")
    out = [e for e in g.edges if (e[0] in s) != (e[1] in s)]
    out.sort()
    return out


@dataclass(frozen=True)
class Cut:
    side: frozenset[int]
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, g: Graph, s) -> "Cut":
        return cls(frozenset(s), tuple(cut_set(g, s)))


def mix(x: Word, y: Word, s, allow_empty: bool = False) -> Word:
    """Word taking x's symbols on S and y's on the complement."""
    if x.n != y.n or x.m != y.m:
        raise ParameterError("mix over words of different shapes")
    s = frozenset(s)
    if not s and not allow_empty:
        raise ParameterError("S is empty; pass allow_empty=True to get y back")
    return Word(tuple(x.symbols[i - 1] if i in s else y.symbols[i - 1]
                      for i in range(1, x.n + 1)))


def spanning_tree(g: Graph, root: int) -> dict[int, int]:
    """BFS tree as a child -> parent map, neighbors visited in index order."""
    if root not in g.vertices:
        raise ParameterError(f"root {root} not a vertex")
    parent: dict[int, int] = {}
    seen = {root}
    queue = [root]
    while queue:
        u = queue.pop(0)
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                parent[w] = u
                queue.append(w)
    return parent


def tree_depths(parent: dict[int, int], root: int) -> dict[int, int]:
    depths = {root: 0}
    def depth(v: int) -> int:
        if v not in depths:
            depths[v] = depth(parent[v]) + 1
        return depths[v]
    for v in parent:
        depth(v)
    return depths


def hamiltonian_cycle(g: Graph, cap: int = HAMILTONIAN_CAP) -> tuple[int, ...] | None:
    """Lexicographically least Hamiltonian cycle starting at vertex 1, or None.

    Exhaustive backtracking; refuses graphs larger than the cap.
    """
    if g.n > cap:
        raise CapacityError(f"Hamiltonian search capped at n <= {cap}, got {g.n}")
    path = [1]
    used = {1}

    def extend() -> bool:
        if len(path) == g.n:
            return g.adjacent(path[-1], 1)
        for w in g.neighbors(path[-1]):
            if w not in used:
                path.append(w)
                used.add(w)
                if extend():
                    return True
                used.remove(w)
                path.pop()
        return False

    return tuple(path) if extend() else None


def cuts_of_size(g: Graph, s: int, budget: int = SUBSET_BUDGET) -> Iterator[Cut]:
    """All cuts whose chosen side has exactly s vertices, in lexicographic order."""
    if not 1 <= s <= g.n - 1:
        raise ParameterError(f"cut side size {s} out of range for n={g.n}")
    total = comb(g.n, s)
    if total > budget:
        raise CapacityError(f"{total} cuts of size {s} exceed budget {budget}")
    for side in combinations(g.vertices, s):
        yield Cut.of(g, side)
