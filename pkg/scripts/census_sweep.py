"""Exact census for every tractable (q, r) with the default movesets; writes JSON lines."""

import argparse
import json
import sys

from rider_types.geometry import default_moveset
from rider_types.oracle import census, sandwich_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q-max", type=int, default=4)
    ap.add_argument("--r-max", type=int, default=4)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=argparse.FileType("w"), default=sys.stdout)
    args = ap.parse_args()
    for q in range(1, args.q_max + 1):
        for r in range(1, args.r_max + 1):
            moves = default_moveset(r)
            res = census(q, moves, workers=args.workers)
            rep = sandwich_check(q, moves, res)
            row = res.to_json()
            row["slack_lower"] = str(rep.slack_lower)
            row["slack_upper"] = str(rep.slack_upper)
            args.out.write(json.dumps(row) + "\n")
            args.out.flush()


if __name__ == "__main__":
    main()
