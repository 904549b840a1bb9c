#!/usr/bin/env python3
"""Write the bound-constant comparison table (projective vs harmonic) as CSV."""

import argparse

from pensemble import emit_figure1_data
from pensemble.pointset import format_float


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--d-max", type=int, default=400)
    parser.add_argument("--out", type=str, default="figure1.csv")
    args = parser.parse_args()

    rows = emit_figure1_data(args.d_max)
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write("d,projective_bound,harmonic_bound\n")
        for d, pb, hb in rows:
            handle.write(f"{d},{format_float(pb)},{format_float(hb)}\n")
    last = rows[-1]
    print(f"wrote {args.out}: {len(rows)} rows, last = {last}")


if __name__ == "__main__":
    main()
