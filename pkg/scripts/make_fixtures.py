"""Regenerate the committed b-file fixtures from the brute-force computations.

    python scripts/make_fixtures.py [--entries 200]
"""

import argparse
from pathlib import Path

from narayana.identities import self_convolution
from narayana.oeis import BFile, serialize_bfile
from narayana.sequences import fibonacci_spec, narayana_spec, terms

ROOT = Path(__file__).resolve().parent.parent / "fixtures"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--entries", type=int, default=200)
    n = ap.parse_args().entries - 1

    conv = self_convolution(fibonacci_spec(), n)
    fib_conv = BFile("A001629", tuple((c.n, c.value) for c in conv))
    # OEIS lists the Narayana cows sequence from 1, 1, 1, 2, ... i.e. R(i+1)
    r = terms(narayana_spec(3), n + 1).values
    cows = BFile("A000930", tuple((i, r[i + 1]) for i in range(n + 1)))

    for bfile, title in (
        (fib_conv, "Fibonacci self-convolution sum_{i=0..n} F(i) F(n-i)"),
        (cows, "Narayana cows sequence a(n) = a(n-1) + a(n-3), a(0)=a(1)=a(2)=1"),
    ):
        header = [f"{bfile.sequence_id} {title}", "generated by direct exact computation (scripts/make_fixtures.py)"]
        (ROOT / f"{bfile.sequence_id}.txt").write_text(serialize_bfile(bfile, header))


if __name__ == "__main__":
    main()
