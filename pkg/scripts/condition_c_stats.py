"""How often generated instances fail condition (C), split by instance kind and size."""

import argparse
from collections import Counter

from boolample.generate import instance_stream
from boolample.ore import mary_anne_check


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--fork-every", type=int, default=5)
    args = ap.parse_args()
    total, fails = Counter(), Counter()
    for inst in instance_stream(args.seed, args.count, fork_every=args.fork_every):
        key = (inst.kind, len(inst.monoid) // 16 * 16)
        rep = mary_anne_check(inst.monoid)  # raises if the two sides disagree
        total[key] += 1
        fails[key] += not rep.condition_c
    print(f"{'kind':>10} {'|S| bin':>8} {'count':>6} {'fails (C)':>10}")
    for key in sorted(total):
        print(f"{key[0]:>10} {key[1]:>8} {total[key]:>6} {fails[key]:>10}")
    print(f"all sides agreed on {sum(total.values())} instances")


if __name__ == "__main__":
    main()
