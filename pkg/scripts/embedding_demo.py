"""Embed a Boolean ample monoid into its Boolean inverse hull and print the fraction cover."""

import argparse

from boolample import fixtures
from boolample.formats import load_monoid
from boolample.pipeline import embed_pipeline


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("monoid", nargs="?", default="S5", help="fixture name or JSON path")
    args = ap.parse_args()
    S = fixtures.monoid(args.monoid) if args.monoid in fixtures.MONOIDS else load_monoid(args.monoid)
    res = embed_pipeline(S)
    T = res.target
    print(f"|S| = {len(S)}, |T| = {len(T)}; certificates {res.certificates}")
    for a, t in enumerate(res.map):
        print(f"  eps({S.label(a)}) = {T.label(t)}")
    print("joins of fractions eps(a)^-1 eps(b):")
    for t, fr in sorted(res.cover.items()):
        terms = " v ".join(f"eps({S.label(a)})^-1 eps({S.label(b)})" for a, b in fr)
        print(f"  {T.label(t)} = {terms}")


if __name__ == "__main__":
    main()
