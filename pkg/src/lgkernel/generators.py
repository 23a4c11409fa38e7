"""Seeded instance generators.

Randomness comes from SplitMix64 (Steele, Lea and Flood; the seeding
generator of Java's ``SplittableRandom`` and of the xoshiro family), chosen
because it is five lines in any language, so a corpus can be regenerated
bit-for-bit elsewhere.  Reference vector: seeded with 0 the first outputs are
``0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F``.

Derived quantities:

* ``random()``: ``(next_u64() >> 11) * 2**-53``, a double in ``[0, 1)``.
* ``below(n)``: rejection sampling on ``next_u64()`` against the largest
  multiple of ``n`` not exceeding ``2**64``, then ``% n``.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import asdict, dataclass
from itertools import accumulate

from .graph import Edge, Graph, line_graph_of

MASK64 = (1 << 64) - 1


class GenerationError(ValueError):
    pass


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        limit = ((1 << 64) // n) * n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n


@dataclass(frozen=True)
class GenSpec:
    n: int  # root vertex count
    p: float  # root edge probability
    r: int  # planted noise edges
    seed: int

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def random_root(n: int, p: float, seed: int) -> Graph:
    """G(n, p): one uniform draw per vertex pair in lexicographic order."""
    if n < 1 or not 0.0 <= p <= 1.0:
        raise GenerationError(f"need n >= 1 and 0 <= p <= 1, got n={n}, p={p}")
    rng = SplitMix64(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edge_list(n, edges)


def _sample_indices(rng: SplitMix64, population: int, r: int) -> list[int]:
    # Floyd's algorithm: exactly r draws, no retries
    chosen: set[int] = set()
    for j in range(population - r, population):
        t = rng.below(j + 1)
        chosen.add(j if t in chosen else t)
    return sorted(chosen)


def _non_edge_at(g: Graph, rows: list[int], index: int) -> Edge:
    """``index``-th non-edge ``(u, w)``, ``u < w``, in lexicographic order."""
    u = bisect_right(rows, index)
    offset = index - (rows[u - 1] if u else 0)
    w = u + 1 + offset
    for x in g.neighbors(u):
        if x <= u:
            continue
        if x <= w:
            w += 1
        else:
            break
    return (u, w)


def non_edges_sample(g: Graph, r: int, rng: SplitMix64) -> list[Edge]:
    counts = [(g.n - 1 - u) - sum(1 for x in g.neighbors(u) if x > u) for u in range(g.n)]
    rows = list(accumulate(counts))
    total = rows[-1] if rows else 0
    if r > total:
        raise GenerationError(f"cannot plant {r} edges: only {total} non-edges")
    return [_non_edge_at(g, rows, i) for i in _sample_indices(rng, total, r)]


def planted_with_noise(spec: GenSpec) -> tuple[Graph, list[Edge]]:
    """``L(random_root)`` plus ``r`` uniformly chosen non-edges, and those edges."""
    root = random_root(spec.n, spec.p, spec.seed)
    line, _ = line_graph_of(root)
    # the root consumed its own stream; noise uses a second, derived stream
    rng = SplitMix64(SplitMix64(spec.seed ^ 0x5DEECE66D).next_u64())
    noise = non_edges_sample(line, spec.r, rng)
    return Graph.from_edge_list(line.n, line.edges() + noise), noise


def planted_instance(spec: GenSpec) -> tuple[Graph, int]:
    """A YES-instance ``(G, r)``: deleting the planted edges restores a line graph."""
    g, _ = planted_with_noise(spec)
    return g, spec.r


def chain_instance(levels: int, k: int, seed: int) -> Graph:
    """A claw whose leaf 1 is fully joined to the first clique of a clique chain.

    Vertices 0..3 form the claw (centre 0).  The chain starts with the
    triangle 4, 5, 6; each further clique has 3 or 4 vertices (drawn from the
    seed, always below ``k + 7``) and shares its first vertex with the last
    vertex of its predecessor.  ``levels`` is the number of chain cliques.
    """
    if levels < 1:
        raise GenerationError("levels must be >= 1")
    rng = SplitMix64(seed)
    edges: list[Edge] = [(0, 1), (0, 2), (0, 3)]
    chain = [[4, 5, 6]]
    nxt = 7
    for _ in range(levels - 1):
        size = 3 + rng.below(min(2, k + 4))
        clique = [chain[-1][-1]] + list(range(nxt, nxt + size - 1))
        nxt += size - 1
        chain.append(clique)
    edges += [(1, v) for v in chain[0]]
    for clique in chain:
        edges += [(clique[i], clique[j]) for i in range(len(clique)) for j in range(i + 1, len(clique))]
    return Graph.from_edge_list(nxt, edges)
