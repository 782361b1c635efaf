"""How verdicts and quotient sizes move as the window N grows.

For each demo ambient and each N in the range, rebuild the window from the
demo generators, run the condition checks at N' = N // 2, build the
quotient, and compare it with the ambient window.

    python scripts/window_sweep.py --demo reilly-z2 --max-window 10
"""
import argparse
import dataclasses

from iquot import classes, compare_to_reference, verdict
from iquot.cli import demo_path
from iquot.config import read_config


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--demo", default="bicyclic-n0")
    ap.add_argument("--min-window", type=int, default=2)
    ap.add_argument("--max-window", type=int, default=12)
    args = ap.parse_args()
    base = read_config(demo_path(args.demo))
    print("N   N'  |S|  conditions  classes  image/window  bijective")
    for N in range(args.min_window, args.max_window + 1):
        gens = tuple(g for g in base.generators if g[0] <= N and g[2] <= N)
        cfg = dataclasses.replace(base, window=N, targets=N // 2, generators=gens)
        S = cfg.build_window()
        rep = verdict(S, N // 2)
        line = f"{N:<3} {N // 2:<3} {len(S):<4} {rep.status.value:<11}"
        if S.mode == "reference":
            QW = classes(S)
            cmp = compare_to_reference(QW)
            reached = cmp["surjective"].details["reached"]
            total = cmp["surjective"].details["window_elements"]
            line += f" {len(QW):<8} {reached}/{total:<10} {cmp.bijective}"
        print(line)


if __name__ == "__main__":
    main()
