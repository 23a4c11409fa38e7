"""Kernel size and time on planted instances of growing size."""

# %%
import time

from lgkernel import GenSpec, kernel_bound, kernelize, planted_instance

# L(G(n, p)) with r extra edges; deleting them restores a line graph,
# so (G, r) is always a yes-instance.
rows = []
for n in (100, 300, 600, 1000):
    g, r = planted_instance(GenSpec(n, 10 / n, 3, seed=n))
    t0 = time.perf_counter()
    out = kernelize(g, r)
    dt = time.perf_counter() - t0
    rows.append((g.n, g.m, r, out.verdict, out.stats.get("kernel_n"), dt))

# %%
print(f"{'n':>6} {'m':>7} {'k':>2} {'verdict':>8} {'kernel_n':>8} {'sec':>6}")
for n, m, k, v, kn, dt in rows:
    print(f"{n:6d} {m:7d} {k:2d} {v:>8} {str(kn):>8} {dt:6.2f}")

# %%
# The guarantee is a function of k alone; at k=3 it is generous.
print("bound at k=3:", kernel_bound(3))
