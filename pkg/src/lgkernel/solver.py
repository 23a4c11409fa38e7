"""Exact solvers for Line-Graph Edge Deletion, used as correctness oracles."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .graph import Edge, Graph
from .patterns import forbidden_from_failure
from .recognition import CliquePartitionWitness, krausz_partition

BRUTE_MAX_EDGES = 40
BRUTE_MAX_K = 5


class InstanceTooLargeError(RuntimeError):
    pass


@dataclass(frozen=True)
class Solution:
    """Deleted edges plus a witness certifying that what is left is a line graph."""

    deleted: tuple[Edge, ...]
    certificate: CliquePartitionWitness

    def __len__(self) -> int:
        return len(self.deleted)


def _delete(adj: list[set[int]], es) -> None:
    for u, v in es:
        adj[u].discard(v)
        adj[v].discard(u)


def _restore(adj: list[set[int]], es) -> None:
    for u, v in es:
        adj[u].add(v)
        adj[v].add(u)


def solve_branching(g: Graph, k: int) -> Solution | None:
    """Bounded search tree: branch on the edges of one forbidden induced subgraph.

    Every solution deletes an edge inside any forbidden induced subgraph, and
    each pattern has at most 15 edges, so the tree has at most ``15^k`` leaves.
    """
    if k < 0:
        raise ValueError("budget must be non-negative")
    adj = [set(a) for a in g.adjacency]
    deleted: list[Edge] = []

    def search(budget: int) -> Solution | None:
        cliques, failure = krausz_partition(g.n, adj)
        if cliques is not None:
            return Solution(tuple(sorted(deleted)), CliquePartitionWitness(cliques))
        if budget == 0:
            return None
        found = forbidden_from_failure(adj, failure)
        branch = [(u, v) for u, v in combinations(found, 2) if v in adj[u]]
        for e in branch:
            _delete(adj, [e])
            deleted.append(e)
            sol = search(budget - 1)
            deleted.pop()
            _restore(adj, [e])
            if sol is not None:
                return sol
        return None

    return search(k)


def solve_bruteforce(g: Graph, k: int) -> Solution | None:
    """First edge set of size ``0..k`` (in lexicographic order) whose removal leaves a line graph."""
    if k < 0:
        raise ValueError("budget must be non-negative")
    if g.m > BRUTE_MAX_EDGES or k > BRUTE_MAX_K:
        raise InstanceTooLargeError(
            f"brute force limited to m <= {BRUTE_MAX_EDGES} and k <= {BRUTE_MAX_K} (got m={g.m}, k={k})"
        )
    edges = g.edges()
    adj = [set(a) for a in g.adjacency]
    for size in range(k + 1):
        for fs in combinations(edges, size):
            _delete(adj, fs)
            cliques, _ = krausz_partition(g.n, adj)
            _restore(adj, fs)
            if cliques is not None:
                return Solution(fs, CliquePartitionWitness(cliques))
    return None


def min_deletion(g: Graph, cap: int) -> int | None:
    """Smallest ``k <= cap`` admitting a solution, or ``None`` when it exceeds ``cap``."""
    for k in range(cap + 1):
        if solve_branching(g, k) is not None:
            return k
    return None


def all_optimal_solutions(g: Graph, cap: int, max_subsets: int = 2_000_000) -> list[tuple[Edge, ...]]:
    """Every minimum-size solution, provided the optimum is at most ``cap``.

    Enumerates edge subsets size by size, so the cost is
    ``sum_{i <= opt} C(m, i)`` recognitions; refuses beyond ``max_subsets``.
    """
    if sum(comb(g.m, i) for i in range(cap + 1)) > max_subsets:
        raise InstanceTooLargeError(f"too many subsets for m={g.m}, cap={cap}")
    edges = g.edges()
    adj = [set(a) for a in g.adjacency]
    for size in range(cap + 1):
        found = []
        for fs in combinations(edges, size):
            _delete(adj, fs)
            if krausz_partition(g.n, adj)[0] is not None:
                found.append(fs)
            _restore(adj, fs)
        if found:
            return found
    return []
