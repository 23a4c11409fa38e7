"""The nine minimal non-line graphs and what is built from them.

Besides shipping the patterns, this module extracts a forbidden induced
subgraph from a non-line graph and packs edge-disjoint forbidden subgraphs
into the modulator ``S`` used by the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations, permutations
from typing import Sequence

from .graph import Graph, parse_edge_list
from .recognition import RecognitionFailure, partition_on

MAX_PATTERN_SIZE = 6


@dataclass(frozen=True)
class Pattern:
    id: int
    name: str
    graph: Graph


@dataclass(frozen=True)
class Modulator:
    """Vertex set ``s`` with ``G - (s - {v})`` a line graph for every ``v`` in ``s``."""

    s: frozenset[int]
    packing: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class TooManyPacked:
    """More than ``k`` pairwise edge-disjoint forbidden subgraphs: a certified NO."""

    packing: tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def beineke_patterns() -> tuple[Pattern, ...]:
    """Pattern 1 is the claw; the rest follow by vertex count then edge count."""
    out = []
    folder = resources.files("lgkernel") / "data" / "beineke"
    for pid in range(1, 10):
        text = (folder / f"{pid:02d}.txt").read_text(encoding="utf-8")
        name = text.splitlines()[0].split(":", 1)[1].strip()
        out.append(Pattern(pid, name, parse_edge_list(text)))
    return tuple(out)


def _pair_bits(p: int) -> dict[tuple[int, int], int]:
    return {pair: 1 << i for i, pair in enumerate(combinations(range(p), 2))}


@lru_cache(maxsize=None)
def _labelled_masks() -> dict[int, dict[int, int]]:
    # every labelling of every pattern, keyed by vertex count then edge mask
    table: dict[int, dict[int, int]] = {}
    for pat in beineke_patterns():
        p = pat.graph.n
        bits = _pair_bits(p)
        masks = table.setdefault(p, {})
        for perm in permutations(range(p)):
            mask = 0
            for u, v in pat.graph.edges():
                a, b = perm[u], perm[v]
                mask |= bits[(a, b) if a < b else (b, a)]
            masks.setdefault(mask, pat.id)
    return table


def match_pattern(adj: Sequence, vs: Sequence[int]) -> int | None:
    """Id of the pattern isomorphic to the subgraph induced by ``vs``, if any."""
    vs = sorted(vs)
    masks = _labelled_masks().get(len(vs))
    if masks is None:
        return None
    bits = _pair_bits(len(vs))
    mask = 0
    for i, j in combinations(range(len(vs)), 2):
        if vs[j] in adj[vs[i]]:
            mask |= bits[(i, j)]
    return masks.get(mask)


# --- extraction ----------------------------------------------------------------

def _focus(adj: Sequence, failure: RecognitionFailure) -> set[int]:
    """Shrink a failing prefix by rebuilding it outward from the failing vertex."""
    vs = set(failure.prefix)
    while True:
        _, again = partition_on(adj, vs, start=failure.vertex, only_start=True)
        if again is None:
            raise AssertionError("focused prefix unexpectedly became a line graph")
        if len(again.prefix) >= len(vs):
            return vs
        vs, failure = set(again.prefix), again


def _shrink(adj: Sequence, vs: set[int]) -> set[int]:
    """Delete vertices while the induced subgraph stays non-line.

    Halving chunks first, then single vertices in ascending id order; the
    last pass makes the result inclusion-minimal.
    """
    size = max(1, len(vs) // 2)
    while True:
        snapshot = sorted(vs)
        for i in range(0, len(snapshot), size):
            chunk = set(snapshot[i:i + size]) & vs
            rest = vs - chunk
            if not chunk or not rest:
                continue
            _, failure = partition_on(adj, rest)
            if failure is not None:
                vs = _focus(adj, failure)
        if size == 1:
            return vs
        size = max(1, min(size // 2, len(vs) // 2))


def forbidden_from_failure(adj: Sequence, failure: RecognitionFailure) -> tuple[int, ...]:
    found = _shrink(adj, _focus(adj, failure))
    if len(found) > MAX_PATTERN_SIZE or match_pattern(adj, found) is None:
        raise AssertionError(f"minimal non-line set {sorted(found)} matches no pattern")
    return tuple(sorted(found))


def forbidden_on(adj: Sequence, allowed, start: int | None = None,
                 only_start: bool = False) -> tuple[int, ...] | None:
    _, failure = partition_on(adj, allowed, start, only_start)
    return None if failure is None else forbidden_from_failure(adj, failure)


def find_forbidden_subgraph(g: Graph) -> tuple[int, ...] | None:
    """Vertex set inducing one of the nine patterns, or ``None`` for a line graph."""
    return forbidden_on(g.adjacency, range(g.n))


# --- modulator -----------------------------------------------------------------

def build_modulator(g: Graph, k: int) -> Modulator | TooManyPacked:
    """Greedy packing of forbidden subgraphs that meet the current ``S`` in at most one vertex.

    Each round looks in ``G - S`` first and then in ``G - (S - {v})`` for
    ``v`` in ascending order.  A vertex that passed once keeps passing because
    ``S`` only grows, so it is not re-examined.
    """
    if k < 0:
        raise ValueError("budget must be non-negative")
    adj = g.adjacency
    s: set[int] = set()
    packing: list[tuple[int, ...]] = []
    cleared: set[int] = set()
    while True:
        outside = set(range(g.n)) - s
        found = forbidden_on(adj, outside)
        if found is None:
            for v in sorted(s - cleared):
                # G - S is a line graph, so any obstruction contains v
                found = forbidden_on(adj, outside | {v}, start=v, only_start=True)
                if found is not None:
                    break
                cleared.add(v)
        if found is None:
            return Modulator(frozenset(s), tuple(packing))
        packing.append(found)
        s.update(found)
        if len(packing) > k:
            return TooManyPacked(tuple(packing))
