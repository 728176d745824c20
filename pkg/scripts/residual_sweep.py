"""Residual of catalog identities along the real segment [x_min, x_max].

    python3 scripts/residual_sweep.py [case_id ...] [--x-min 0.05] [--x-max 0.95] [--steps 18]

Prints one row per x with the residual for each requested case (default: all cases).
Points outside a case's domain show as '-'.
"""
import argparse

from quintsect.catalog import CASES, verify_case
from quintsect.identities import Verdict


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("cases", nargs="*", help="case ids (default: all)")
    ap.add_argument("--x-min", type=float, default=0.05)
    ap.add_argument("--x-max", type=float, default=0.95)
    ap.add_argument("--steps", type=int, default=18)
    args = ap.parse_args()

    ids = args.cases or sorted(CASES)
    print("x," + ",".join(ids))
    for i in range(args.steps + 1):
        x = args.x_min + (args.x_max - args.x_min) * i / args.steps
        row = []
        for case_id in ids:
            res = verify_case(case_id, x)
            row.append("-" if res.verdict is Verdict.NOT_EVALUABLE else f"{res.residual:.3e}")
        print(f"{x:.4f}," + ",".join(row))


if __name__ == "__main__":
    main()
