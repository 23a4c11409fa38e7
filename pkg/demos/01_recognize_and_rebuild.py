"""Recognizing line graphs and getting the root graph back."""

# %%
from lgkernel import Graph, line_graph_of, recognize, root_graph, validate_witness
from lgkernel import find_forbidden_subgraph, random_root

# A random root H and its line graph: every vertex of L(H) is an edge of H.
h = random_root(12, 0.3, seed=7)
g, edge_of = line_graph_of(h)
print(f"H: {h.n} vertices, {h.m} edges   L(H): {g.n} vertices, {g.m} edges")

# %%
# The witness is a clique partition: each vertex in two cliques, each edge in one.
w = recognize(g)
print(len(w), "cliques, valid:", bool(validate_witness(g, w)))
print("first few:", w.cliques[:5])

# %%
# One root vertex per clique, one root edge per vertex of g.
root = root_graph(g, w)
print("rebuilt root:", root.graph, "reproduces g:", root.reproduces(g))
# isolated vertices of H leave no trace, so compare edge counts
assert root.graph.m == h.m

# %%
# Triangles are the classic ambiguity: K3 = L(K3) = L(K_{1,3}).
# The recognizer picks the lexicographically smallest witness, the star.
print(recognize(Graph.complete(3)).cliques)

# %%
# Non-line graphs come with a small obstruction.
# a 5-wheel (one of the nine patterns) with a tail; the tail adds a claw at 0,
# and an inclusion-minimal obstruction is reported
wheel = [(5, i) for i in range(5)] + [(i, (i + 1) % 5) for i in range(5)] + [(0, 6)]
bad = Graph.from_edge_list(7, wheel)
print("line graph?", recognize(bad) is not None)
print("obstruction on vertices", find_forbidden_subgraph(bad))
