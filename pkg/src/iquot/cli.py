"""Command-line front end.

Exit codes: 0 everything passed, 1 some check failed, 2 some check is
unknown and none failed, 3 bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from .config import ProblemConfig, read_config
from .errors import InputError
from .quotient import classes, compare_to_reference, idempotents, lemma_suite, verify_quotient
from .verdicts import Status, Verdict, worst
from .verifier import CONDITIONS, verdict
from .window import REFERENCE, element_json, window_invariants

REPORT_FORMAT = "iquot-report/1"
EXIT = {Status.PASS: 0, Status.FAIL: 1, Status.UNKNOWN: 2}
EXIT_INPUT = 3
CONDITION_ALIASES = {"A": ["A"], "B": ["B(i)", "B(ii)"], "B(i)": ["B(i)"], "B(ii)": ["B(ii)"],
                     "C": ["C"], "straight": ["straight"], "lclass": ["lclass"]}


def demo_names() -> list[str]:
    root = resources.files("iquot") / "demo"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".cfg"))


def demo_path(name: str):
    path = resources.files("iquot") / "demo" / f"{name}.cfg"
    if not path.is_file():
        raise InputError(f"unknown demo {name!r}; available: {', '.join(demo_names())}")
    return path


def workers_from_env() -> int:
    raw = os.environ.get("IQUOT_WORKERS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"IQUOT_WORKERS must be an integer, got {raw!r}") from None


def parse_conditions(text: str | None) -> tuple[str, ...]:
    if text is None:
        return CONDITIONS
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok not in CONDITION_ALIASES:
            raise InputError(f"unknown condition {tok!r}")
        out += CONDITION_ALIASES[tok]
    return tuple(c for c in CONDITIONS if c in out)


def problem_json(cfg: ProblemConfig, S) -> dict:
    amb = S.ambient
    return {
        "name": cfg.name,
        "mode": cfg.mode,
        "group_order": cfg.order,
        "endomorphism": list(cfg.endo) if cfg.endo is not None else list(range(cfg.order)),
        "window": cfg.window,
        "targets": cfg.targets,
        "generators": [element_json(tuple(g), amb) for g in cfg.generators],
        "elements": [element_json(e, amb) for e in S.ids],
        "overflow_pairs": len(S.overflow),
        "l_horizon": S.l_horizon,
    }


def run_validate(cfg: ProblemConfig, S) -> list[Verdict]:
    g = cfg.group()
    out = [Verdict("group", Status.PASS, details={"order": g.order}),
           Verdict("endomorphism", Status.PASS,
                   details={"map": list(cfg.endomorphism().map)})]
    problems = window_invariants(S)
    out.append(Verdict("subsemigroup", Status.FAIL if problems else Status.PASS,
                       counterexample={"problems": problems[:10]} if problems else None,
                       details={"elements": len(S)}))
    return out


def run(command: str, cfg: ProblemConfig, conditions=CONDITIONS, sample=None, seed=None,
        workers: int = 1) -> dict:
    """Execute ``command`` and return the machine-readable report."""
    S = cfg.build_window()
    sample = cfg.sample if sample is None else sample
    seed = cfg.seed if seed is None else seed
    sections: dict = {}
    statuses = []

    validation = run_validate(cfg, S)
    sections["validate"] = [v.to_json() for v in validation]
    statuses += [v.status for v in validation]

    if command in ("check", "demo"):
        rep = verdict(S, cfg.targets, conditions)
        sections["conditions"] = rep.to_json()
        statuses.append(rep.status)

    if command in ("build", "compare", "demo"):
        QW = classes(S)
        structure = verify_quotient(QW, sample=sample, seed=seed, workers=workers)
        lemmas = lemma_suite(QW)
        sections["quotient"] = {
            "classes": len(QW),
            "sigma_pairs": sum(len(c.members) for c in QW.classes),
            "idempotents": len(idempotents(QW)),
            "certified": QW.certified,
            "limitation": QW.limitation,
            "defined_products": sum(v >= 0 for row in QW.product for v in row),
        }
        sections["structure"] = structure.to_json()
        sections["lemmas"] = lemmas.to_json()
        statuses += [structure.status, lemmas.status]
        if command == "compare" or (command == "demo" and S.mode == REFERENCE):
            if S.mode != REFERENCE:
                raise InputError("compare needs a reference-mode problem")
            cmp = compare_to_reference(QW)
            sections["reference"] = cmp.to_json()
            statuses.append(cmp.status)

    status = worst(statuses)
    return {
        "format": REPORT_FORMAT,
        "command": command,
        "problem": problem_json(cfg, S),
        "status": status.value,
        "exit_code": EXIT[status],
        "sections": sections,
    }


def _line(v: dict) -> str:
    text = f"  {v['name']:<22} {v['status']:<8}"
    if v["witnesses"]:
        text += f" {len(v['witnesses'])} witnesses"
    if v["counterexample"] is not None:
        text += f" counterexample={json.dumps(v['counterexample'])}"
    if v["limitation"]:
        text += f" [{v['limitation']}]"
    return text


def render_text(report: dict) -> str:
    p = report["problem"]
    out = [f"{report['command']}: {p['name'] or '(unnamed)'}  mode={p['mode']} |G|={p['group_order']} "
           f"N={p['window']} N'={p['targets']} |S|={len(p['elements'])}"]
    sec = report["sections"]
    for title, key in (("validation", "validate"),):
        out.append(title)
        out += [_line(v) for v in sec[key]]
    if "conditions" in sec:
        out.append("conditions")
        out += [_line(v) for v in sec["conditions"]["checks"]]
        lc = next((v for v in sec["conditions"]["checks"] if v["name"] == "lclass"), None)
        if lc is not None:
            out.append(f"  L-class coverage: {lc['details']['coverage']}")
    if "quotient" in sec:
        q = sec["quotient"]
        out.append(f"quotient: {q['classes']} classes from {q['sigma_pairs']} pairs, "
                   f"{q['idempotents']} idempotents, certified={q['certified']}")
        out.append("structure")
        out += [_line(v) for v in sec["structure"]]
        out.append("properties")
        out += [_line(v) for v in sec["lemmas"]]
    if "reference" in sec:
        out.append("comparison with S(G,theta)")
        out += [_line(v) for v in sec["reference"]]
    out.append(f"overall: {report['status']}")
    return "\n".join(out)


def dump_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="iquot", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the JSON report to this file")
        p.add_argument("--json", action="store_true", help="print the JSON report instead of text")
        p.add_argument("--sample", type=int, default=None,
                       help="sample this many class pairs/triples instead of exhaustive sweeps")
        p.add_argument("--seed", type=int, default=None, help="seed for --sample")

    for name, help_text in (("validate", "structural validation only"),
                            ("check", "check the left I-order conditions"),
                            ("build", "build the quotient and verify its structure"),
                            ("compare", "build, verify, and compare with S(G,theta)")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config")
        if name == "check":
            p.add_argument("--conditions", help="comma list from A,B,C,straight,lclass")
        common(p)
    p = sub.add_parser("demo", help="run a shipped preset end to end")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true", help="list available presets")
    common(p)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors, which is our "unknown" code
        return EXIT_INPUT if exc.code else 0
    try:
        if args.command == "demo":
            if args.list or not args.name:
                print("\n".join(demo_names()))
                return 0
            with demo_path(args.name).open(encoding="utf-8") as fh:
                from .config import parse_config
                cfg = parse_config(fh.read())
        else:
            cfg = read_config(args.config)
        conditions = parse_conditions(getattr(args, "conditions", None))
        report = run(args.command, cfg, conditions, sample=args.sample, seed=args.seed,
                     workers=workers_from_env())
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dump_report(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    print(text if args.json else render_text(report), end="" if args.json else "\n")
    return report["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
