"""Run every shipped demo end to end and print a one-line summary per demo.

    python scripts/run_demos.py [--out DIR]

With ``--out`` the full JSON reports are written as DIR/<demo>.json.
"""
import argparse
import pathlib
import time

from iquot.cli import demo_names, demo_path, dump_report, run, workers_from_env
from iquot.config import read_config


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=pathlib.Path)
    args = ap.parse_args()
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    for name in demo_names():
        t0 = time.perf_counter()
        rep = run("demo", read_config(demo_path(name)), workers=workers_from_env())
        dt = time.perf_counter() - t0
        conds = {c["name"]: c["status"] for c in rep["sections"]["conditions"]["checks"]}
        q = rep["sections"].get("quotient", {})
        print(f"{name:26s} {rep['status']:8s} classes={q.get('classes', '-'):>4} "
              f"{' '.join(f'{k}={v}' for k, v in conds.items())}  ({dt:.1f}s)")
        if args.out:
            (args.out / f"{name}.json").write_text(dump_report(rep), encoding="utf-8")


if __name__ == "__main__":
    main()
