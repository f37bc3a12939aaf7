"""Regenerate a zeros table in Odlyzko's ``zeros1`` layout with mpmath.

One ordinate per line, rounded to 9 decimals, ascending. Used when the
public table cannot be fetched; the loader cannot tell the difference.

    python tools/make_zero_table.py data/zeros_to_H.txt --gamma-max 3236.36
"""
import argparse
import sys

import mpmath


def format_ordinate(gamma, digits=9):
    scaled = int(mpmath.nint(gamma * 10**digits))
    whole, frac = divmod(scaled, 10**digits)
    return f"{whole}.{frac:0{digits}d}"


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out")
    parser.add_argument("--gamma-max", type=float, default=3236.36)
    args = parser.parse_args(argv)

    mpmath.mp.dps = 25
    with open(args.out, "w") as fh:
        n = 1
        while True:
            gamma = mpmath.zetazero(n).imag
            if gamma > args.gamma_max:
                break
            fh.write(format_ordinate(gamma) + "\n")
            n += 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
