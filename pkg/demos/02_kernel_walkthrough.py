"""Stage by stage through the kernel on a long chain of small cliques."""

# %%
from lgkernel import build_modulator, chain_instance, kernelize, solve_branching

k = 1
g = chain_instance(levels=7, k=k, seed=3)
print(g, "edges:", g.edges()[:8], "...")

# %%
# The modulator packs edge-disjoint obstructions; here a single claw.
mod = build_modulator(g, k)
print("S =", sorted(mod.s), "packed:", mod.packing)

# %%
out = kernelize(g, k)
st = out.stats
print("verdict:", out.verdict)
print("cliques per level:", st["levels"])  # levels 5+ are "far"
print("vertices removed per rule:", st["removed"])
print("edges removed per rule:  ", st["removed_edges"])
print(f"kernel: {st['kernel_n']} vertices (bound {st['bound']})")

# %%
# Each stage is a full instance, so the oracle can check every step.
for name, stage in out.stages.items():
    ans = solve_branching(stage.graph, k) is not None
    print(f"{name:>5}: n={stage.graph.n:2d} m={stage.graph.m:2d}  yes={ans}")
