"""Print the closed-form bounds next to the published table, cell by cell."""

import csv
from fractions import Fraction
from pathlib import Path

from rider_types.bounds import decimal_text, generate_table

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden" / "bounds_table.csv"


def main():
    golden = {(int(g["q"]), int(g["r"])): g for g in csv.DictReader(GOLDEN.open())}
    print(f"{'q':>2} {'r':>2} {'lower':>12} {'upper':>12} {'published':>24}  match")
    for row in generate_table(6, 6):
        for cell in row:
            g = golden[(cell.q, cell.r)]
            ok = Fraction(g["t_lower"]) == cell.t_lower and Fraction(g["t_upper"]) == cell.t_upper
            pub = f"{g['t_lower']}..{g['t_upper']}" + (f" [{g['reference']}]" if g["reference"] else "")
            print(f"{cell.q:>2} {cell.r:>2} {decimal_text(cell.t_lower):>12} "
                  f"{decimal_text(cell.t_upper):>12} {pub:>24}  {'yes' if ok else 'NO'}")


if __name__ == "__main__":
    main()
