"""Random generator sets in small S(G, theta): do the checks stay coherent?

For each sample, records the condition verdicts and the quotient verdicts
and flags combinations that contradict the characterisation: a sample whose
conditions all pass but whose quotient has a failing sweep, or any stored
witness/counterexample that does not re-evaluate.

    python scripts/random_generators.py --samples 200 --window 6 --seed 1
"""
import argparse
import collections
import random

from iquot import Reilly, classes, close_generators, compare_to_reference, recheck, verdict
from iquot import cyclic_group, validate_endomorphism, verify_quotient
from iquot.quotient import lemma_suite
from iquot.verdicts import Status


def random_ambient(rng):
    n = rng.choice([1, 2, 3, 4])
    g = cyclic_group(n)
    k = rng.randrange(n)
    return Reilly(g, validate_endomorphism(g, [(k * x) % n for x in range(n)]))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--window", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally = collections.Counter()
    for _ in range(args.samples):
        R = random_ambient(rng)
        N = args.window
        gens = [(rng.randrange(3), rng.randrange(R.group.order), rng.randrange(N + 1))
                for _ in range(rng.randint(1, 4))]
        if rng.random() < 0.5:
            gens.append((0, R.group.identity, 0))
        S = close_generators(gens, R, N)
        rep = verdict(S, N // 2)
        bad = [p for v in rep.verdicts.values() for p in recheck(S, v)]
        key = tuple(f"{k}={v.status}" for k, v in rep.verdicts.items())
        tally[" ".join(key)] += 1
        if bad:
            print("RECHECK", gens, bad[:3])
        if rep.status is Status.PASS:
            QW = classes(S)
            items = verify_quotient(QW).items + lemma_suite(QW).items + compare_to_reference(QW).items
            failing = [v.name for v in items if v.status is Status.FAIL]
            tally["quotient-fail" if failing else "quotient-ok"] += 1
            if failing:
                print("QUOTIENT", R.group.order, R.theta.map, gens, failing)
    for key, n in tally.most_common():
        print(f"{n:5d}  {key}")


if __name__ == "__main__":
    main()
