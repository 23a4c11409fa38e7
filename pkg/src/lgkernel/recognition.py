"""Line-graph recognition through clique partition (Krausz) witnesses.

A witness for ``G`` is a multiset of cliques such that every vertex lies in
exactly two of them, every edge in exactly one, and two cliques share at most
one vertex.  ``recognize`` builds one by adding the vertices of each
component in BFS order and extending every partition of the prefix that is
still consistent.  Past a handful of vertices a connected line graph has a
single partition, so the candidate list collapses to one entry almost
immediately; for the tiny ambiguous components (``K3`` and friends) keeping
all candidates makes the search exhaustive and the final choice is the
lexicographically smallest one.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .graph import Graph

Cliques = tuple[tuple[int, ...], ...]


class InvalidWitnessError(ValueError):
    pass


@dataclass(frozen=True)
class CliquePartitionWitness:
    """Multiset of cliques; stored sorted so equal witnesses compare equal."""

    cliques: Cliques

    def __post_init__(self):
        canon = tuple(sorted(tuple(sorted(c)) for c in self.cliques))
        object.__setattr__(self, "cliques", canon)

    def __len__(self) -> int:
        return len(self.cliques)

    def membership(self, n: int) -> list[list[int]]:
        """``membership(n)[v]`` lists the ids of the cliques containing ``v``."""
        out: list[list[int]] = [[] for _ in range(n)]
        for i, c in enumerate(self.cliques):
            for v in c:
                out[v].append(i)
        return out

    def relabel(self, labels: Sequence[int]) -> "CliquePartitionWitness":
        return CliquePartitionWitness(tuple(tuple(labels[v] for v in c) for c in self.cliques))

    def to_json(self) -> str:
        return json.dumps({"cliques": [list(c) for c in self.cliques]})

    @classmethod
    def from_json(cls, text: str) -> "CliquePartitionWitness":
        return cls(tuple(tuple(c) for c in json.loads(text)["cliques"]))


@dataclass(frozen=True)
class WitnessCheck:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class RootGraph:
    """Root ``H`` with ``ends[v]`` = the two H-vertices joined by G-vertex ``v``."""

    graph: Graph
    ends: tuple[tuple[int, int], ...]

    def reproduces(self, g: Graph) -> bool:
        """True iff ``L(H)`` under ``ends`` is exactly ``g``."""
        if len(self.ends) != g.n:
            return False
        at: dict[int, list[int]] = {}
        for v, (a, b) in enumerate(self.ends):
            if not self.graph.has_edge(a, b):
                return False
            at.setdefault(a, []).append(v)
            at.setdefault(b, []).append(v)
        adj: list[set[int]] = [set() for _ in range(g.n)]
        for vs in at.values():
            for u, v in combinations(vs, 2):
                adj[u].add(v)
                adj[v].add(u)
        return all(adj[v] == g.neighbor_set(v) for v in range(g.n))


@dataclass(frozen=True)
class RecognitionFailure:
    """Where the incremental build got stuck.

    ``prefix`` induces a non-line graph while ``prefix`` minus ``vertex``
    induces a line graph (both restricted to the failing component).
    """

    vertex: int
    prefix: tuple[int, ...]


# --- core incremental builder ------------------------------------------------

def _canonical(cliques: list[set[int]]) -> Cliques:
    return tuple(sorted(tuple(sorted(c)) for c in cliques))


def _extensions(cliques: list[set[int]], member: dict[int, list[int]], nb: set[int]):
    """Ways to place a new vertex whose earlier neighbours are ``nb``.

    Each option is ``(c1, c2)`` with ``nb == cliques[c1] | cliques[c2]`` and the
    two cliques disjoint, or ``(c1, None)`` when ``nb == cliques[c1]`` and the
    vertex opens a fresh singleton.
    """
    opts = []
    u0 = min(nb)
    tried1: list[set[int]] = []
    for c1 in member[u0]:
        first = cliques[c1]
        if first in tried1:
            continue
        tried1.append(first)
        if len(first) > len(nb) or not first <= nb:
            continue
        if len(first) == len(nb):
            opts.append((c1, None))
            continue
        rest = nb - first
        tried2: list[set[int]] = []
        for c2 in member[min(rest)]:
            second = cliques[c2]
            if second == rest and second not in tried2:
                tried2.append(second)
                opts.append((c1, c2))
    return opts


def _component_partitions(adj: Sequence, order: Sequence[int]):
    start = order[0]
    cands = [([{start}, {start}], {start: [0, 1]})]
    added = {start}
    for idx in range(1, len(order)):
        v = order[idx]
        nb = {w for w in adj[v] if w in added}
        nxt = []
        for cliques, member in cands:
            opts = _extensions(cliques, member, nb)
            for j, (c1, c2) in enumerate(opts):
                if j < len(opts) - 1:
                    cl = [set(c) for c in cliques]
                    mb = {u: list(ids) for u, ids in member.items()}
                else:
                    cl, mb = cliques, member
                cl[c1].add(v)
                if c2 is None:
                    c2 = len(cl)
                    cl.append({v})
                else:
                    cl[c2].add(v)
                mb[v] = [c1, c2]
                nxt.append((cl, mb))
        if not nxt:
            return None, RecognitionFailure(v, tuple(order[: idx + 1]))
        if len(nxt) > 1:
            uniq = {}
            for cand in nxt:
                uniq.setdefault(_canonical(cand[0]), cand)
            nxt = list(uniq.values())
        cands = nxt
        added.add(v)
    return min(_canonical(c[0]) for c in cands), None


def component_orders(adj: Sequence, allowed, start: int | None = None,
                     only_start: bool = False) -> list[list[int]]:
    """BFS orders of the components of the subgraph induced by ``allowed``.

    The component of ``start`` comes first and is explored from ``start``;
    the others follow from their smallest vertex.
    """
    seen = set()
    comps = []
    sources = [] if start is None else [start]
    if not only_start:
        sources = sources + sorted(allowed)
    for s in sources:
        if s in seen:
            continue
        seen.add(s)
        order = [s]
        i = 0
        while i < len(order):
            for w in sorted(adj[order[i]]):
                if w not in seen and w in allowed:
                    seen.add(w)
                    order.append(w)
            i += 1
        comps.append(order)
    return comps


def partition_on(adj: Sequence, allowed, start: int | None = None,
                 only_start: bool = False) -> tuple[Cliques | None, RecognitionFailure | None]:
    """Witness cliques of the subgraph induced by ``allowed`` (original ids).

    ``adj`` may be any indexable sequence or mapping of neighbour sets; only
    vertices in ``allowed`` are ever visited.  With ``only_start`` just the
    component of ``start`` is processed.
    """
    out: list[tuple[int, ...]] = []
    for order in component_orders(adj, allowed, start, only_start):
        cliques, failure = _component_partitions(adj, order)
        if failure is not None:
            return None, failure
        out.extend(cliques)
    return tuple(sorted(out)), None


def krausz_partition(n: int, adj: Sequence) -> tuple[Cliques | None, RecognitionFailure | None]:
    """Witness cliques of the whole graph given by adjacency sets, or a failure record."""
    return partition_on(adj, range(n))


# --- public API ----------------------------------------------------------------

def recognize(g: Graph) -> CliquePartitionWitness | None:
    """A clique partition witness of ``g``, or ``None`` if ``g`` is not a line graph."""
    cliques, _ = krausz_partition(g.n, g.adjacency)
    return None if cliques is None else CliquePartitionWitness(cliques)


def recognize_with_failure(g: Graph) -> tuple[CliquePartitionWitness | None, RecognitionFailure | None]:
    cliques, failure = krausz_partition(g.n, g.adjacency)
    return (None if cliques is None else CliquePartitionWitness(cliques)), failure


def is_line_graph(g: Graph) -> bool:
    return krausz_partition(g.n, g.adjacency)[0] is not None


def validate_witness(g: Graph, w: CliquePartitionWitness) -> WitnessCheck:
    """Check the five witness conditions in order; report the first violated one."""
    for c in w.cliques:
        if any(not 0 <= v < g.n for v in c) or len(set(c)) != len(c):
            return WitnessCheck(False, f"clique {list(c)} is not a subset of V(G)")
    for c in w.cliques:
        if not g.is_clique(c):
            return WitnessCheck(False, f"clique {list(c)} does not induce a complete subgraph")
    member = w.membership(g.n)
    shared: Counter = Counter()
    for ids in member:
        shared.update(combinations(ids, 2))
    for (a, b), cnt in shared.items():
        if cnt > 1:
            return WitnessCheck(
                False, f"cliques {list(w.cliques[a])} and {list(w.cliques[b])} share {cnt} vertices"
            )
    for v, ids in enumerate(member):
        if len(ids) != 2:
            return WitnessCheck(False, f"vertex {v} lies in {len(ids)} cliques, expected 2")
    covered = set()
    for c in w.cliques:
        covered.update(combinations(c, 2))
    for e in g.edges():
        if e not in covered:
            return WitnessCheck(False, f"edge {e} is not covered by any clique")
    return WitnessCheck(True)


def root_graph(g: Graph, w: CliquePartitionWitness) -> RootGraph:
    """Root graph ``H`` with one vertex per witness clique and one edge per vertex of ``g``."""
    check = validate_witness(g, w)
    if not check:
        raise InvalidWitnessError(check.reason)
    member = w.membership(g.n)
    ends = tuple((ids[0], ids[1]) for ids in member)
    h = Graph.from_edge_list(len(w.cliques), ends)
    root = RootGraph(h, ends)
    if not root.reproduces(g):
        raise InvalidWitnessError("root graph does not reproduce the input")
    return root


# --- independent recognizer (claw + odd triangles) ---------------------------

def has_induced_claw(g: Graph) -> bool:
    adj = g.adjacency
    for c in g.vertices:
        nb = g.neighbors(c)
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                if b in adj[a]:
                    continue
                for x in nb:
                    if x != a and x != b and x not in adj[a] and x not in adj[b]:
                        return True
    return False


def odd_triangles(g: Graph) -> list[tuple[int, int, int]]:
    """Triangles having some outside vertex adjacent to one or three of their corners."""
    adj = g.adjacency
    out = []
    for u in g.vertices:
        for v in g.neighbors(u):
            if v <= u:
                continue
            for w in g.neighbors(v):
                if w <= v or w not in adj[u]:
                    continue
                tri = (u, v, w)
                near = (adj[u] | adj[v] | adj[w]) - set(tri)
                if any(((u in adj[x]) + (v in adj[x]) + (w in adj[x])) % 2 == 1 for x in near):
                    out.append(tri)
    return out


def recognize_via_odd_triangles(g: Graph) -> bool:
    """Line-graph test from the claw / odd-triangle characterization."""
    if has_induced_claw(g):
        return False
    apexes: dict[tuple[int, int], list[int]] = {}
    for u, v, w in odd_triangles(g):
        apexes.setdefault((u, v), []).append(w)
        apexes.setdefault((u, w), []).append(v)
        apexes.setdefault((v, w), []).append(u)
    for tops in apexes.values():
        for a, b in combinations(tops, 2):
            if not g.has_edge(a, b):
                return False
    return True
