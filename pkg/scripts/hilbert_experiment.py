#!/usr/bin/env python3
"""Hilbert tensor rank sweep: error and CPU time for all five algorithms.

Desk-scale version of the cubic Hilbert benchmark; the full 500^3 run fits
in roughly 2 GB if you have it:

    python scripts/hilbert_experiment.py --side 100 --ranks 10,20,30 \
        --trials 3 --out hilbert.csv
"""

import argparse

from tucksketch.bench import ExperimentConfig, run_bench, write_csv


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--side", type=int, default=100, help="cubic side length")
    parser.add_argument(
        "--ranks", default="10,20,30,40,50", help="comma list of cubic ranks"
    )
    parser.add_argument("--trials", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--aggregate", choices=["none", "mean"], default="mean")
    parser.add_argument("--out", default="hilbert.csv")
    args = parser.parse_args()

    rank_sets = tuple((int(r),) * 3 for r in args.ranks.split(","))
    cfg = ExperimentConfig(
        experiment=f"hilbert-{args.side}",
        source="hilbert",
        dims=(args.side,) * 3,
        algorithms=("thosvd", "sthosvd", "rsthosvd", "sketch", "subsketch"),
        rank_sets=rank_sets,
        trials=args.trials,
        base_seed=args.seed,
        aggregate=args.aggregate,
    )
    report = run_bench(cfg)
    write_csv(report, args.out)
    print(f"wrote {len(report.rows)} rows to {args.out}")
    for row in report.rows:
        print(
            f"{row.algorithm:>20s} ranks={'x'.join(map(str, row.ranks))} "
            f"err={row.rel_error:.4e} time={row.wall_ms:.1f} ms"
        )


if __name__ == "__main__":
    main()
