"""Analyze random almost complete intersections and tabulate invariants."""
import argparse
import collections
import random

from rees_kit.families import random_aci
from rees_kit.rees import AnalyzeOptions, analyze


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--degree", type=int, default=2)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally = collections.Counter()
    for _ in range(args.count):
        _, J, a = random_aci(rng, args.dim, args.degree)
        rep = analyze(J + [a], J, AnalyzeOptions(with_sdeg=False))
        tally[(rep.red, tuple(rep.f_sequence), rep.e1, rep.huckaba_acm)] += 1
    print("red  f_sequence  e1  aCM  count")
    for (red, f, e1, acm), k in sorted(tally.items()):
        print(red, list(f), e1, acm, k)


if __name__ == "__main__":
    main()
