"""Polynomial kernel for Line-Graph Edge Deletion.

Pipeline: modulator ``S`` -> witness of ``G - S`` -> anchor cliques of every
``v`` in ``S`` -> level structure over the witness cliques -> three reduction
rules.  The budget ``k`` is never changed.

All rule functions take and return a :class:`KernelState`, which keeps the
current graph together with ``S``, the witness of ``graph - S`` and the level
of every witness clique, all in the state's own dense vertex ids.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .graph import Graph
from .patterns import TooManyPacked, build_modulator
from .recognition import CliquePartitionWitness, is_line_graph, partition_on

FAR = math.inf
MAX_KEPT_LEVEL = 4
MAX_RESIDUAL = 6


class KernelInvariantError(RuntimeError):
    """An internal guarantee of the construction failed; signals a bug upstream."""

    def __init__(self, message: str, stats: dict | None = None):
        super().__init__(message)
        self.stats = stats or {}


def large_threshold(k: int) -> int:
    return k + 7


def level_bound(s_size: int, k: int, d: int) -> int:
    """Maximum number of witness cliques at level ``d``."""
    return 14 * s_size * (k + 6) ** (d - 1)


def kernel_bound(k: int, s_size: int | None = None) -> int:
    """Vertex bound ``|S| + (k+7) * sum_{d<=4} 14|S|(k+6)^(d-1)``; ``|S| = 6k`` by default."""
    s = 6 * k if s_size is None else s_size
    return s + large_threshold(k) * sum(level_bound(s, k, d) for d in range(1, MAX_KEPT_LEVEL + 1))


@dataclass(frozen=True)
class Anchor:
    """Up to two witness cliques fully adjacent to ``v`` plus its few other neighbours."""

    first: int | None
    second: int | None
    residual: tuple[int, ...]


@dataclass
class LevelStructure:
    s: frozenset[int]
    cliques: tuple[tuple[int, ...], ...]
    k: int
    levels: list[float]
    anchors: dict[int, Anchor]

    @property
    def threshold(self) -> int:
        return large_threshold(self.k)

    def is_small(self, i: int) -> bool:
        return len(self.cliques[i]) < self.threshold

    def level_sizes(self) -> list[int]:
        finite = [int(d) for d in self.levels if d != FAR]
        return [finite.count(d) for d in range(1, max(finite, default=0) + 1)]


@dataclass(frozen=True)
class KernelState:
    graph: Graph
    labels: tuple[int, ...]  # state vertex -> vertex id of the kernelize() input
    s: frozenset[int]
    cliques: tuple[tuple[int, ...], ...]
    levels: tuple[float, ...]

    def witness_of_rest(self) -> tuple[Graph, CliquePartitionWitness]:
        """``graph - s`` with the witness relabeled to that subgraph's dense ids."""
        rest, labels = self.graph.remove_vertices(self.s)
        index = {v: i for i, v in enumerate(labels)}
        return rest, CliquePartitionWitness(tuple(tuple(index[v] for v in c) for c in self.cliques))


@dataclass
class KernelOutcome:
    verdict: str  # "reduced", "yes" or "no"
    k: int
    graph: Graph | None = None
    labels: tuple[int, ...] = ()
    stats: dict = field(default_factory=dict)
    stages: dict[str, KernelState] = field(default_factory=dict)

    def as_instance(self) -> tuple[Graph, int]:
        """Kernel as a plain instance; trivial verdicts become constant instances."""
        if self.verdict == "yes":
            return Graph.empty(0), self.k
        if self.verdict == "no":
            return Graph.from_edge_list(4, [(0, 1), (0, 2), (0, 3)]), 0
        return self.graph, self.k

    def to_json(self) -> str:
        return json.dumps(self.stats)


# --- anchors and levels --------------------------------------------------------

def _clique_index(cliques: Sequence[tuple[int, ...]]) -> dict[tuple[int, ...], int]:
    return {c: i for i, c in enumerate(cliques)}


def anchor_cliques(g: Graph, s: frozenset[int], cliques: Sequence[tuple[int, ...]], v: int,
                   index: dict | None = None) -> Anchor:
    """Anchor cliques of ``v`` from a witness of ``G - (S - {v})``.

    Only the component of ``v`` is rebuilt; cliques of that witness through
    ``v`` with at least five vertices lose ``v`` and are looked up in the
    witness of ``G - S``.
    """
    index = _clique_index(cliques) if index is None else index
    adj = g.adjacency
    allowed = set(range(g.n)) - s
    allowed.add(v)
    part, _ = partition_on(adj, allowed, start=v, only_start=True)
    if part is None:
        raise KernelInvariantError(f"G - (S - {{{v}}}) is not a line graph")
    mapped = []
    for c in part:
        if v in c and len(c) >= 5:
            rest = tuple(x for x in c if x != v)
            if rest not in index:
                raise KernelInvariantError(f"clique {list(rest)} of vertex {v} is not in the witness of G - S")
            mapped.append(index[rest])
    covered = set()
    for i in mapped:
        covered.update(cliques[i])
    residual = tuple(w for w in g.neighbors(v) if w not in s and w not in covered)
    if len(residual) > MAX_RESIDUAL:
        raise KernelInvariantError(f"vertex {v} has {len(residual)} residual neighbours")
    mapped += [None] * (2 - len(mapped))
    return Anchor(mapped[0], mapped[1], residual)


def build_levels(g: Graph, s: frozenset[int], cliques: Sequence[tuple[int, ...]], k: int,
                 anchors: dict[int, Anchor] | None = None) -> LevelStructure:
    """Assign every witness clique of ``G - S`` its level, or ``FAR`` if unreachable.

    Level 1 holds the anchor cliques of the vertices of ``S`` and the cliques
    through their residual neighbours; level ``d+1`` holds the unlevelled
    cliques meeting a small clique of level ``d``.
    """
    cliques = tuple(cliques)
    if anchors is None:
        index = _clique_index(cliques)
        anchors = {v: anchor_cliques(g, s, cliques, v, index) for v in sorted(s)}
    member: dict[int, list[int]] = {}
    for i, c in enumerate(cliques):
        for w in c:
            member.setdefault(w, []).append(i)
    t = large_threshold(k)
    small = [len(c) < t for c in cliques]
    levels: list[float] = [FAR] * len(cliques)

    first: set[int] = set()
    for v in sorted(s):
        a = anchors[v]
        first.update(i for i in (a.first, a.second) if i is not None)
        for w in a.residual:
            first.update(member[w])
    current = sorted(first)
    d = 1
    while current:
        if len(current) > level_bound(len(s), k, d):
            raise KernelInvariantError(
                f"level {d} holds {len(current)} cliques, bound is {level_bound(len(s), k, d)}"
            )
        for i in current:
            levels[i] = d
        nxt = set()
        for i in current:
            if small[i]:
                for w in cliques[i]:
                    nxt.update(j for j in member[w] if levels[j] == FAR)
        current = sorted(nxt)
        d += 1

    # a vertex with a neighbour in S sits in a level <= 2 clique or a large clique
    touches_s = {w for v in s for w in g.neighbors(v) if w not in s}
    for i, c in enumerate(cliques):
        if small[i] and levels[i] >= 3:
            for w in c:
                if w in touches_s and all(small[j] for j in member[w]):
                    raise KernelInvariantError(f"vertex {w} of level-{levels[i]} clique has a neighbour in S")
    return LevelStructure(frozenset(s), cliques, k, levels, anchors)


# --- reduction rules -------------------------------------------------------------

def _restrict(state: KernelState, keep: set[int], graph: Graph | None,
              cliques: list[tuple[tuple[int, ...], float]]) -> KernelState:
    """Induce ``graph`` (default: the state's graph) on ``keep`` and relabel everything."""
    base = state.graph if graph is None else graph
    sub, labels = base.induced_subgraph(keep)
    index = {v: i for i, v in enumerate(labels)}
    out_c, out_l = [], []
    for c, lvl in cliques:
        kept = tuple(index[w] for w in c if w in index)
        if kept:
            out_c.append(kept)
            out_l.append(lvl)
    return KernelState(
        graph=sub,
        labels=tuple(state.labels[v] for v in labels),
        s=frozenset(index[v] for v in state.s if v in index),
        cliques=tuple(out_c),
        levels=tuple(out_l),
    )


def initial_state(g: Graph, ls: LevelStructure) -> KernelState:
    return KernelState(g, tuple(range(g.n)), ls.s, ls.cliques, tuple(ls.levels))


def rr1_trim_unleveled(state: KernelState) -> KernelState:
    """Drop the vertices outside ``S`` that lie in no levelled clique."""
    keep = set(state.s)
    for c, lvl in zip(state.cliques, state.levels):
        if lvl != FAR:
            keep.update(c)
    return _restrict(state, keep, None, list(zip(state.cliques, state.levels)))


def rr2_cut_far_edges(state: KernelState) -> KernelState:
    """Delete the edges inside cliques at level 5 or beyond, then isolated vertices.

    The far cliques leave the witness; a vertex that also lies in a near
    clique gets a singleton that inherits the far level.
    """
    far = [i for i, lvl in enumerate(state.levels) if lvl > MAX_KEPT_LEVEL]
    cut = set()
    for i in far:
        cut.update(combinations(state.cliques[i], 2))
    g2 = state.graph.delete_edges(sorted(cut))

    near_vertices = set()
    for c, lvl in zip(state.cliques, state.levels):
        if lvl <= MAX_KEPT_LEVEL:
            near_vertices.update(c)
    cliques = [(c, lvl) for c, lvl in zip(state.cliques, state.levels) if lvl <= MAX_KEPT_LEVEL]
    singles: dict[int, float] = {}
    for i in far:
        for w in state.cliques[i]:
            if w in near_vertices:
                singles[w] = min(singles.get(w, FAR), state.levels[i])
    cliques += [((w,), lvl) for w, lvl in sorted(singles.items())]

    keep = {v for v in range(g2.n) if g2.degree(v) > 0}
    out = _restrict(state, keep, g2, cliques)
    _check_two_cliques(out, "rule 2")
    return out


def mark_vertices(state: KernelState, k: int) -> set[int]:
    """Inclusion-minimal ``M`` meeting each level <= 4 clique in ``min(|C|, k+7)`` vertices."""
    t = large_threshold(k)
    near = [i for i, lvl in enumerate(state.levels) if lvl <= MAX_KEPT_LEVEL]
    need = {i: min(len(state.cliques[i]), t) for i in near}
    marked: set[int] = set()
    for i in near:
        marked.update(sorted(state.cliques[i])[: need[i]])
    count = {i: sum(1 for w in state.cliques[i] if w in marked) for i in near}
    near_of: dict[int, list[int]] = {}
    for i in near:
        for w in state.cliques[i]:
            near_of.setdefault(w, []).append(i)
    for w in sorted(marked):
        if all(count[i] > need[i] for i in near_of.get(w, ())):
            marked.discard(w)
            for i in near_of.get(w, ()):
                count[i] -= 1
    return marked


def rr3_mark_and_shrink(state: KernelState, k: int) -> KernelState:
    """Keep ``S`` and the marked vertices ``M``; remove everything else."""
    for c, lvl in zip(state.cliques, state.levels):
        if len(c) > 1 and lvl > MAX_KEPT_LEVEL:
            raise KernelInvariantError(f"non-singleton clique {list(c)} left at level {lvl}")
    keep = mark_vertices(state, k) | set(state.s)
    return _restrict(state, keep, None, list(zip(state.cliques, state.levels)))


def _check_two_cliques(state: KernelState, where: str) -> None:
    seen: dict[int, int] = {}
    for c in state.cliques:
        for w in c:
            seen[w] = seen.get(w, 0) + 1
    for v in range(state.graph.n):
        if v not in state.s and seen.get(v, 0) != 2:
            raise KernelInvariantError(f"after {where}: vertex {v} lies in {seen.get(v, 0)} witness cliques")


# --- driver ----------------------------------------------------------------------

def kernelize(g: Graph, k: int) -> KernelOutcome:
    """Reduce ``(g, k)`` to an equivalent instance with ``O(k^5)`` vertices."""
    if k < 0:
        raise ValueError("budget must be non-negative")
    ms: dict[str, float] = {}
    stats: dict = {"n": g.n, "m": g.m, "k": k}

    def tick(name: str, t0: float) -> float:
        now = time.perf_counter()
        ms[name] = round((now - t0) * 1000.0, 3)
        return now

    t = time.perf_counter()
    line = is_line_graph(g)
    t = tick("recognize", t)
    if line:
        stats.update(verdict="yes", ms=ms)
        return KernelOutcome("yes", k, stats=stats)

    mod = build_modulator(g, k)
    t = tick("modulator", t)
    if isinstance(mod, TooManyPacked):
        stats.update(verdict="no", packed=len(mod.packing), ms=ms)
        return KernelOutcome("no", k, stats=stats)
    s = mod.s
    stats.update(s_size=len(s), packed=len(mod.packing))

    rest = set(range(g.n)) - s
    cliques, _ = partition_on(g.adjacency, rest)
    if cliques is None:
        raise KernelInvariantError("G - S is not a line graph", stats)
    t = tick("witness", t)

    index = _clique_index(cliques)
    anchors = {v: anchor_cliques(g, s, cliques, v, index) for v in sorted(s)}
    ls = build_levels(g, s, cliques, k, anchors)
    t = tick("levels", t)
    stats["levels"] = ls.level_sizes()
    stats["unleveled"] = sum(1 for d in ls.levels if d == FAR)

    s0 = initial_state(g, ls)
    s1 = rr1_trim_unleveled(s0)
    t = tick("rr1", t)
    s2 = rr2_cut_far_edges(s1)
    t = tick("rr2", t)
    s3 = rr3_mark_and_shrink(s2, k)
    t = tick("rr3", t)

    removed = {}
    removed_edges = {}
    for name, before, after in (("rr1", s0, s1), ("rr2", s1, s2), ("rr3", s2, s3)):
        removed[name] = before.graph.n - after.graph.n
        removed_edges[name] = before.graph.m - after.graph.m
    bound = kernel_bound(k)
    own_bound = kernel_bound(k, len(s))
    stats.update(
        verdict="reduced",
        removed=removed,
        removed_edges=removed_edges,
        kernel_n=s3.graph.n,
        kernel_m=s3.graph.m,
        bound=bound,
        instance_bound=own_bound,
        ms=ms,
    )
    if s3.graph.n > own_bound or s3.graph.n > bound:
        raise KernelInvariantError(f"kernel has {s3.graph.n} vertices, bound {min(bound, own_bound)}", stats)
    return KernelOutcome(
        "reduced", k, s3.graph, s3.labels, stats,
        stages={"input": s0, "rr1": s1, "rr2": s2, "rr3": s3},
    )
