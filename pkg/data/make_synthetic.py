"""Regenerate the committed synthetic prioritization fixture.

The network is a 500-node Erdos-Renyi background with a planted
60-gene community wired at much higher density, plus three small
detached fragments (nodes 490..499) so component extraction has real
work to do.  Twelve community genes act as seeds (p < 0.01), thirty
held-out community genes act as targets (p = 1e-9), and both tables
carry decoys that fail their thresholds plus two deliberate edge
cases: one gene present in both tables (exercising intersection
removal) and one seed label absent from the graph (exercising the
dropped-seed path).

The committed TSVs are canonical; this script documents how they were
produced and regenerates them byte-for-byte under the pinned seeds.
"""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

N_NODES = 500
BLOCK = 60          # planted community: nodes 0..59
MAIN = 490          # nodes 490.. form detached fragments instead
P_IN = 0.30         # intra-community edge probability
P_OUT = 0.009       # background edge probability
GRAPH_SEED = 11
TABLE_SEED = 101

# fragments detached from the main component: a triangle, a path, a square
FRAGMENT_EDGES = (
    (490, 491), (491, 492), (490, 492),
    (493, 494), (494, 495),
    (496, 497), (497, 498), (498, 499), (496, 499),
)

N_SEEDS = 12        # community genes 0..11
N_TARGETS = 30      # community genes 12..41
N_SCORE_DECOYS = 80
N_TARGET_DECOYS = 40


def _label(i: int) -> str:
    return f"G{i:03d}"


def write_graph(path: Path) -> None:
    rng = np.random.default_rng(GRAPH_SEED)
    iu, ju = np.triu_indices(MAIN, k=1)
    r = rng.random(iu.size)
    in_block = (iu < BLOCK) & (ju < BLOCK)
    keep = np.where(in_block, r < P_IN, r < P_OUT)
    pairs = list(zip(iu[keep].tolist(), ju[keep].tolist()))
    # an edge list cannot declare edgeless nodes, so stitch them in
    touched = {a for pair in pairs for a in pair}
    for i in range(MAIN):
        if i not in touched:
            pairs.append(tuple(sorted((i, (i + 7) % MAIN))))
    with path.open("w") as fh:
        fh.write("# synthetic interactome: planted 60-gene community on 500 nodes\n")
        for a, b in sorted(pairs):
            fh.write(f"{_label(a)}\t{_label(b)}\n")
        for a, b in FRAGMENT_EDGES:
            fh.write(f"{_label(a)}\t{_label(b)}\n")


def write_tables(scores_path: Path, targets_path: Path) -> None:
    rng = np.random.default_rng(TABLE_SEED)
    with scores_path.open("w") as fh:
        fh.write("# seed study p-values (seeds pass p < 0.01)\n")
        for i in range(N_SEEDS):
            fh.write(f"{_label(i)}\t{0.0005 * (i + 1)}\n")
        decoys = rng.choice(np.arange(BLOCK, MAIN), N_SCORE_DECOYS, replace=False)
        for i in sorted(decoys):
            fh.write(f"{_label(i)}\t{round(float(rng.uniform(0.02, 1.0)), 6)}\n")
        fh.write("GX999\t0.003\n")
    with targets_path.open("w") as fh:
        fh.write("# target study p-values (targets pass p < 5e-8)\n")
        for i in range(N_SEEDS, N_SEEDS + N_TARGETS):
            fh.write(f"{_label(i)}\t1e-09\n")
        fh.write(f"{_label(5)}\t1e-09\n")
        decoys = rng.choice(np.arange(BLOCK, MAIN), N_TARGET_DECOYS, replace=False)
        for i in sorted(decoys):
            fh.write(f"{_label(i)}\t{round(float(rng.uniform(0.01, 0.9)), 6)}\n")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--out", default=str(Path(__file__).parent),
        help="directory for the generated TSVs (default: alongside this script)",
    )
    args = parser.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_graph(out / "synthetic_ppi.tsv")
    write_tables(out / "synthetic_scores.tsv", out / "synthetic_targets.tsv")
    print(f"wrote synthetic_ppi.tsv, synthetic_scores.tsv, synthetic_targets.tsv to {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
