"""Do four riders with the same number of moves but different angles have
different type counts?  Runs the exact census for several movesets per r."""

import argparse
import json

from rider_types.bounds import t_lower, t_upper
from rider_types.geometry import MoveSet
from rider_types.oracle import census

MOVESETS = {
    3: [
        [(0, 1), (1, 1), (1, 0)],
        [(0, 1), (1, 2), (2, -1)],
        [(0, 1), (1, 3), (-1, 3)],
        [(0, 1), (3, 1), (1, -4)],
        [(0, 1), (1, 1), (1, -1)],
    ],
    4: [
        [(0, 1), (1, 1), (1, 0), (1, -1)],
        [(0, 1), (1, 2), (2, -1), (1, -3)],
        [(0, 1), (1, 0), (1, 2), (1, 3)],
    ],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, default=4)
    ap.add_argument("--r", type=int, nargs="*", default=[3, 4])
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    for r in args.r:
        for dirs in MOVESETS[r]:
            moves = MoveSet.of(*dirs)
            res = census(args.q, moves, workers=args.workers)
            print(json.dumps({
                "q": args.q, "r": r, "moveset": moves.to_text(),
                "type_count": res.type_count, "chamber_count": res.chamber_count,
                "t_lower": str(t_lower(args.q, r)), "t_upper": str(t_upper(args.q, r)),
                "runtime": round(res.runtime, 1),
            }), flush=True)


if __name__ == "__main__":
    main()
