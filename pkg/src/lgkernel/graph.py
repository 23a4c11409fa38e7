"""Immutable simple undirected graphs on dense vertex ids ``0..n-1``."""

from __future__ import annotations

import os
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple[int, int]


class MalformedInputError(ValueError):
    """Raised for graphs or edge sets that violate the input contract."""


def edge(u: int, v: int) -> Edge:
    """Canonical form of the undirected edge ``uv``."""
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph with sorted adjacency.

    Instances are never mutated after construction; every operation returns
    a fresh graph.
    """

    __slots__ = ("_n", "_adj", "_nbrs", "_m")

    def __init__(self, n: int, adjacency: Sequence[Iterable[int]]):
        # trusted constructor: adjacency must already be symmetric and loop-free
        self._n = n
        self._adj = tuple(frozenset(a) for a in adjacency)
        self._nbrs = tuple(tuple(sorted(a)) for a in self._adj)
        self._m = sum(len(a) for a in self._adj) // 2

    @classmethod
    def from_edge_list(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        if n < 0:
            raise MalformedInputError(f"negative vertex count {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        for pair in edges:
            if len(pair) != 2:
                raise MalformedInputError(f"edge {pair!r} is not a pair")
            u, v = int(pair[0]), int(pair[1])
            if not (0 <= u < n and 0 <= v < n):
                raise MalformedInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise MalformedInputError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, adj)

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        return cls(n, [()] * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edge_list(n, combinations(range(n), 2))

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._adj[v]

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[Edge]:
        """All edges in canonical lexicographic order."""
        return [(u, v) for u in range(self._n) for v in self._nbrs[u] if u < v]

    def _check_vertices(self, vs: Iterable[int]) -> list[int]:
        out = sorted(set(vs))
        if out and (out[0] < 0 or out[-1] >= self._n):
            raise MalformedInputError(f"vertex set {out} not contained in 0..{self._n - 1}")
        return out

    def induced_subgraph(self, vs: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Subgraph induced by ``vs``, relabeled densely in ascending order.

        Returns the graph and ``labels`` where ``labels[i]`` is the original id
        of new vertex ``i``.
        """
        labels = self._check_vertices(vs)
        index = {v: i for i, v in enumerate(labels)}
        adj = [[index[w] for w in self._nbrs[v] if w in index] for v in labels]
        return Graph(len(labels), adj), tuple(labels)

    def remove_vertices(self, vs: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        drop = set(self._check_vertices(vs))
        return self.induced_subgraph(v for v in range(self._n) if v not in drop)

    def delete_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = [set(a) for a in self._adj]
        for pair in edges:
            u, v = pair
            if not (0 <= u < self._n and 0 <= v < self._n) or v not in adj[u]:
                raise MalformedInputError(f"({u}, {v}) is not an edge of the graph")
            adj[u].discard(v)
            adj[v].discard(u)
        return Graph(self._n, adj)

    def is_clique(self, vs: Iterable[int]) -> bool:
        vs = self._check_vertices(vs)
        return all(vs[j] in self._adj[vs[i]] for i in range(len(vs)) for j in range(i + 1, len(vs)))

    def components(self) -> list[list[int]]:
        """Connected components, each in BFS order from its smallest vertex."""
        seen = [False] * self._n
        comps = []
        for s in range(self._n):
            if seen[s]:
                continue
            seen[s] = True
            order = [s]
            i = 0
            while i < len(order):
                for w in self._nbrs[order[i]]:
                    if not seen[w]:
                        seen[w] = True
                        order.append(w)
                i += 1
            comps.append(order)
        return comps

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._nbrs == other._nbrs

    def __hash__(self) -> int:
        return hash((self._n, self._nbrs))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"


def line_graph_of(h: Graph) -> tuple[Graph, list[Edge]]:
    """Line graph of ``h``; vertex ``i`` of the result is ``h.edges()[i]``."""
    h_edges = h.edges()
    at: list[list[int]] = [[] for _ in range(h.n)]
    for i, (u, v) in enumerate(h_edges):
        at[u].append(i)
        at[v].append(i)
    adj: list[set[int]] = [set() for _ in h_edges]
    for inc in at:
        for a, b in combinations(inc, 2):
            adj[a].add(b)
            adj[b].add(a)
    return Graph(len(h_edges), adj), h_edges


# --- edge-list text format ---------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format; ``#`` lines are comments."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedInputError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise MalformedInputError(f"line {lineno}: non-integer token in {raw!r}") from None
    if not rows:
        raise MalformedInputError("missing 'n m' header")
    (n, m), body = rows[0], rows[1:]
    if n < 0 or m < 0:
        raise MalformedInputError(f"invalid header 'n={n} m={m}'")
    if len(body) != m:
        raise MalformedInputError(f"header announces {m} edges, found {len(body)}")
    return Graph.from_edge_list(n, body)


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | os.PathLike) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path: str | os.PathLike, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g, comment))
