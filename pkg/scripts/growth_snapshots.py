"""Iterative growth on a 100-node graph; writes one GEXF per outer step.

    python scripts/growth_snapshots.py --out growth/ --steps 5
"""

import argparse
from pathlib import Path

from evograph.engine import EvolutionParams, GrowthConfig, iterative_evolve
from evograph.generate import GeneratorConfig, generate_initial
from evograph.io import export_gexf, write_atomic
from evograph.metrics import compute_metrics


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path, default=Path("growth"))
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--pool", type=int, default=20)
    ap.add_argument("--steps", type=int, default=5)
    ap.add_argument("--threshold", type=float, default=6.0)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--mean", default="arithmetic")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    g0 = generate_initial(GeneratorConfig(n=args.n, seed=args.seed))
    growth = GrowthConfig(pool_size=args.pool, outer_steps=args.steps, attr_source=GeneratorConfig(n=0))
    trace = iterative_evolve(g0, EvolutionParams(threshold=args.threshold, accept_prob=args.p, mean=args.mean, seed=args.seed), growth)

    args.out.mkdir(parents=True, exist_ok=True)
    for step in range(args.steps + 1):
        snap = trace.snapshot_at(step)
        write_atomic(args.out / f"step_{step:02d}.gexf", export_gexf(snap))
        m = compute_metrics(snap)
        print(f"step {step}: nodes={m.node_count} edges={m.edge_count} Q={m.modularity:.3f} C={m.avg_clustering:.3f}")
    write_atomic(args.out / "trace.gexf", export_gexf(trace))


if __name__ == "__main__":
    main()
