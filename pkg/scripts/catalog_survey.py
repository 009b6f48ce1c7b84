"""Survey the fixture catalog end to end.

For every catalog map this prints the second Taylor coefficient, the
convexity certificate, the boundedness hint, the weighted Schwarzian
supremum, and the omitted-value distance, then writes the same table
as CSV when asked.  A quick way to eyeball the whole package after a
change to the jet or evaluation layers.

Usage:
    python3 scripts/catalog_survey.py [--csv PATH] [--passes N]
"""

import argparse
import csv
import sys

from awr.catalog import catalog_fixtures
from awr.nehari import certify_nehari
from awr.parser import format_complex, format_expr
from awr.quasidisk import delta_f


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--csv", default=None, help="write the table to PATH")
    ap.add_argument("--passes", type=int, default=3,
                    help="refinement passes for the omitted-value scan")
    args = ap.parse_args(argv)

    rows = []
    for name, spec in catalog_fixtures():
        cert = certify_nehari(spec.expr)
        delta = delta_f(spec.expr, passes=args.passes)
        rows.append({
            "name": name,
            "expr": format_expr(spec.expr),
            "a2": format_complex(spec.a2),
            "convex": spec.convexity_certified,
            "bounded": spec.bounded_hint,
            "nehari_sup": cert.sup_estimate,
            "nehari_passed": cert.passed,
            "delta": delta.value,
            "delta_metric": delta.metric,
        })

    widths = {k: max(len(k), max(len(str(r[k])) for r in rows))
              for k in rows[0]}
    header = "  ".join(k.ljust(widths[k]) for k in rows[0])
    print(header)
    print("-" * len(header))
    for r in rows:
        print("  ".join(str(r[k]).ljust(widths[k]) for k in r))

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
        print(f"wrote {args.csv}", file=sys.stderr)

    return 0 if all(r["nehari_passed"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
