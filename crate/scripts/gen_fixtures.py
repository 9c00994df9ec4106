#!/usr/bin/env python3
"""Writes the vendored b-files under crates/cli/fixtures.

Terms come from plain integer recurrences and path-counting tables, kept
independent of the Rust code so the comparison means something.
"""
import math
import os
import sys

LAST = 300
OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "cli", "fixtures")


def a001405(last):
    return [(i, math.comb(i, i // 2)) for i in range(last + 1)]


def left_factors(last, widths):
    """Nonnegative paths of length i from height 0, ending anywhere.

    widths: level steps allowed ({1} for Motzkin, {2} for Schroeder).
    Returns counts indexed by length.
    """
    out = []
    # table[x] maps height -> number of prefixes of length x
    table = [{0: 1}]
    for x in range(1, last + 1):
        row = {}
        for dx, moves in ((1, (1, -1)), (1, (0,) if 1 in widths else ()), (2, (0,) if 2 in widths else ())):
            if x - dx < 0:
                continue
            for h, c in table[x - dx].items():
                for dh in moves:
                    if h + dh >= 0:
                        row[h + dh] = row.get(h + dh, 0) + c
        table.append(row)
    for x in range(last + 1):
        out.append(sum(table[x].values()))
    return out


def a005773(last):
    # a(0) = 1, a(n) = Motzkin left factors of length n-1
    lf = left_factors(last, {1})
    return [(0, 1)] + [(i, lf[i - 1]) for i in range(1, last + 1)]


def a026003(last):
    # Schroeder left factors where a level step spans two units of length
    lf = left_factors(last, {2})
    return [(i, lf[i]) for i in range(last + 1)]


def linear(a0, a1, p, last):
    terms = [a0, a1]
    while len(terms) <= last:
        terms.append(p * terms[-1] + terms[-2])
    return list(enumerate(terms[: last + 1]))


FIXTURES = {
    "A001405": ("binomial(n, floor(n/2))", a001405),
    "A005773": ("directed animals of size n; a(0) = 1", a005773),
    "A026003": ("Schroeder left factors", a026003),
    "A000129": ("Pell numbers", lambda last: linear(0, 1, 2, last)),
    "A006190": ("a(n) = 3a(n-1) + a(n-2)", lambda last: linear(0, 1, 3, last)),
}


def main():
    os.makedirs(OUT, exist_ok=True)
    for oeis_id, (title, gen) in FIXTURES.items():
        path = os.path.join(OUT, "b" + oeis_id[1:] + ".txt")
        with open(path, "w") as fh:
            fh.write(f"# {oeis_id} {title}\n")
            fh.write(f"# n = 0..{LAST}, generated by scripts/gen_fixtures.py\n")
            for i, v in gen(LAST):
                fh.write(f"{i} {v}\n")
        print(path, file=sys.stderr)


if __name__ == "__main__":
    main()
