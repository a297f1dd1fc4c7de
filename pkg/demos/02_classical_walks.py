"""
Classical baselines: restart walk, coin tosses, diffusion
=========================================================

Walks the same 6-node graph with the three classical walkers and shows
the behaviors the quantum walkers are later compared against: restart
mass pinned near the seed, diffusive spreading toward the uniform
distribution, and the exact closed forms on tiny graphs.
"""

import numpy as np

from netqwalk.classical import (
    ctrw_evolve,
    dtrw_evolve,
    rwr_iterate,
    rwr_steady_state,
)
from netqwalk.graphs import graph_from_edges
from netqwalk.states import delta_distribution

g = graph_from_edges(
    [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c"), ("d", "e"), ("e", "f")]
)
n = g.n
seed = delta_distribution(n, g.index("a"))

# ----------------------------------------------------------------------
# restart walk: the steady state solves p = alpha*M p + (1-alpha)*p0
# ----------------------------------------------------------------------
print("restart walk from 'a' (alpha sweeps the locality/diffusion trade-off)")
for alpha in (0.3, 0.6, 0.85, 0.95):
    p = rwr_steady_state(g, seed, alpha)
    top = sorted(zip(g.labels, p), key=lambda lp: -lp[1])[:3]
    print(f"  alpha={alpha:4.2f}  top: " + ", ".join(f"{l}={v:.3f}" for l, v in top))

# truncated iteration converges geometrically to the same fixed point
steady = rwr_steady_state(g, seed, 0.85)
for n_iter in (1, 5, 20, 80):
    gap = np.max(np.abs(rwr_iterate(g, seed, 0.85, n_iter) - steady))
    print(f"  after {n_iter:3d} iterations: max gap to steady state {gap:.2e}")

# the 2-node closed form: alpha = 1/2 gives exactly (2/3, 1/3)
k2 = graph_from_edges([("u", "v")])
p = rwr_steady_state(k2, delta_distribution(2, 0), 0.5)
print(f"\ntwo-node closed form: p = ({p[0]:.6f}, {p[1]:.6f})  [exact: 2/3, 1/3]")

# ----------------------------------------------------------------------
# discrete-time walk: mass hops to neighbors in lockstep
# ----------------------------------------------------------------------
print("\ncoin-toss walk from 'a':")
for steps in (0, 1, 2, 3, 10):
    p = dtrw_evolve(g, seed, steps)
    with np.printoptions(precision=3, suppress=True):
        print(f"  {steps:2d} steps: {p}")

# ----------------------------------------------------------------------
# continuous-time diffusion: exp(-Lt) flows to the uniform distribution
# ----------------------------------------------------------------------
print("\ndiffusion from 'a' (distance to uniform):")
for t in (0.0, 0.5, 1.0, 2.0, 5.0, 20.0):
    p = ctrw_evolve(g, seed, t)
    print(f"  t={t:5.1f}: max|p - 1/n| = {np.max(np.abs(p - 1 / n)):.2e}")

# the 2-node diffusion closed form: (1 +- exp(-2t)) / 2
t = 0.7
p = ctrw_evolve(k2, delta_distribution(2, 0), t)
print(f"\ntwo-node diffusion at t={t}: {p[0]:.8f} vs {(1 + np.exp(-2 * t)) / 2:.8f}")
