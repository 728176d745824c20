"""Verify every catalog case and print a per-case summary.

    python3 scripts/catalog_report.py [--tol 1e-9] [--dump catalog.jsonl]

With --dump, the catalog is written as JSON lines with the measured statuses.
"""
import argparse
import dataclasses

from quintsect.catalog import DEFAULT_IDENTITY_TOL, dump_catalog, verify_all


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tol", type=float, default=DEFAULT_IDENTITY_TOL, help="identity residual threshold")
    ap.add_argument("--dump", help="write the catalog with measured statuses to this JSON-lines file")
    args = ap.parse_args()

    reports = verify_all(identity_tol=args.tol)
    print(f"{'case':24s} {'function':24s} {'status':11s} max residual  |lhs/rhs|")
    for rep in reports:
        ratios = " ".join(f"{abs(r):.6g}" for r in rep.ratios() if r is not None)
        print(f"{rep.case.case_id:24s} {rep.case.function:24s} {rep.status.value:11s} "
              f"{rep.max_residual:.3e}  {ratios if rep.status.value == 'discrepant' else ''}")
    counts = {}
    for rep in reports:
        counts[rep.status.value] = counts.get(rep.status.value, 0) + 1
    print(", ".join(f"{n} {s}" for s, n in sorted(counts.items())))

    if args.dump:
        measured = [dataclasses.replace(rep.case, status=rep.status, sample_points=rep.points) for rep in reports]
        dump_catalog(args.dump, measured)
        print(f"wrote {len(measured)} records to {args.dump}")


if __name__ == "__main__":
    main()
