#!/usr/bin/env python3
"""Writes data/theta_placeholder.tsv.

The constants here are NOT the published ones. They only have the right
shape: every required modulus is present, x_theta respects the caps, the
square sum stays under 0.95 and the eight q=3 moduli sum under 0.00592.
Good enough to exercise the checks; useless as proof input.
"""
import sys

Q3 = [3, 9, 12, 36, 75, 225, 300, 900]


def primes_upto(n):
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for i in range(2, int(n ** 0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i in range(n + 1) if flags[i]]


def main(path):
    rows = {}
    for a in range(2, 317):
        rows[a * a] = (0.003, 4_800_000_000)
    for q in Q3:
        x = 4_800_000_000 if q in rows else 8_000_000_000
        rows[q] = (0.0007, x)
    for p in primes_upto(100_000):
        if p > 3:
            rows.setdefault(p, (0.01, 8_000_000_000))
    with open(path, "w") as out:
        out.write("# status: placeholder\n")
        out.write("# synthetic constants, generated by tools/make_placeholder_table.py\n")
        out.write("# q\tc_theta\tx_theta\n")
        for q in sorted(rows):
            c, x = rows[q]
            out.write(f"{q}\t{c}\t{x}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/theta_placeholder.tsv")
