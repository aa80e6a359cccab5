#!/usr/bin/env python3
"""Sparse low-rank tensor benchmark across spectral-gap strengths.

Runs the rank sweep for each gap strength gamma, optionally with additive
Gaussian noise, and writes one CSV per gamma:

    python scripts/sparse_experiment.py --n 100 --gammas 2,10,200 \
        --ranks 20,40,60 --delta 1e-3 --out-prefix sparse
"""

import argparse

from tucksketch.bench import ExperimentConfig, run_bench, write_csv


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=100, help="cubic side length")
    parser.add_argument("--gammas", default="2,10,200")
    parser.add_argument("--ranks", default="20,40,60,80,100")
    parser.add_argument("--delta", type=float, default=None, help="noise scale")
    parser.add_argument("--trials", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-prefix", default="sparse")
    args = parser.parse_args()

    rank_sets = tuple(
        (int(r),) * 3 for r in args.ranks.split(",") if int(r) <= args.n
    )
    for gamma_text in args.gammas.split(","):
        gamma = float(gamma_text)
        cfg = ExperimentConfig(
            experiment=f"sparse-n{args.n}-gamma{gamma_text}",
            source="sparse",
            dims=(args.n,) * 3,
            gamma=gamma,
            delta=args.delta,
            algorithms=("thosvd", "sthosvd", "rsthosvd", "sketch", "subsketch"),
            rank_sets=rank_sets,
            trials=args.trials,
            base_seed=args.seed,
            aggregate="mean",
        )
        out = f"{args.out_prefix}-gamma{gamma_text}.csv"
        report = run_bench(cfg)
        write_csv(report, out)
        print(f"gamma={gamma_text}: wrote {len(report.rows)} rows to {out}")


if __name__ == "__main__":
    main()
