"""Acceptance criteria, one printed PASS/FAIL line each.

All criteria are exact: counts are compared with ``==`` and every law or
lemma sweep must report zero violations (tolerance 0).
"""
import numpy as np
import pytest

from iquot import (Reilly, Status, check_A, check_B, check_straight, classes,
                   compare_to_reference, cyclic_group, l_class_coverage, lemma_suite, recheck,
                   scaling_endomorphism, verdict, verify_quotient)
from iquot.cli import demo_names, demo_path, dump_report, run
from iquot.config import read_config
from iquot.quotient import check_omega_chain
from iquot.reilly import ReillyElement

TOLERANCE = 0  # violations allowed in any exhaustive sweep
LAW_BOUND = 8  # largest index in the law suite


def announce(capsys, criterion, ok, detail):
    with capsys.disabled():
        print(f"\nACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def _mul(R, x, y):
    return np.stack(R.multiply_arrays(x.T, y.T), axis=-1)


def law_violations(R: Reilly, bound: int) -> dict:
    els = np.array(R.elements(bound), dtype=np.int64)
    k = len(els)
    x, y = np.repeat(els, k, axis=0), np.tile(els, (k, 1))
    xy = _mul(R, x, y)
    out = {"associativity": 0}
    for row in els:
        xs = np.broadcast_to(row, (k * k, 3))
        left = _mul(R, _mul(R, xs, x), y)
        right = _mul(R, xs, xy)
        out["associativity"] += int(np.count_nonzero(np.any(left != right, axis=1)))
    inv = np.stack([els[:, 2], [R.group.inv(int(g)) for g in els[:, 1]], els[:, 0]], axis=-1)
    xxi, xix = _mul(R, els, inv), _mul(R, inv, els)
    out["inverse"] = int(np.count_nonzero(np.any(_mul(R, xxi, els) != els, axis=1))
                         + np.count_nonzero(np.any(_mul(R, xix, inv) != inv, axis=1)))
    is_idem = np.all(_mul(R, els, els) == els, axis=1)
    shape = (els[:, 0] == els[:, 2]) & (els[:, 1] == R.group.identity)
    out["idempotents"] = int(np.count_nonzero(is_idem != shape))
    # H-class of a product, which is also the bicyclic image of the product
    t = np.maximum(x[:, 2], y[:, 0])
    out["h-class"] = int(np.count_nonzero((xy[:, 0] != x[:, 0] - x[:, 2] + t)
                                          | (xy[:, 2] != y[:, 2] - y[:, 0] + t)))
    # kernel of the bicyclic image: same (m, n) iff x x^-1 = y y^-1 and x^-1 x = y^-1 y
    same_image = (x[:, 0] == y[:, 0]) & (x[:, 2] == y[:, 2])
    h_rel = (np.all(np.repeat(xxi, k, axis=0) == np.tile(xxi, (k, 1)), axis=1)
             & np.all(np.repeat(xix, k, axis=0) == np.tile(xix, (k, 1)), axis=1))
    out["kernel"] = int(np.count_nonzero(same_image != h_rel))
    return out


def oracle_mismatches(R: Reilly, n: int, k: int, bound: int) -> int:
    """Vectorised products against the formula with theta^t(g) = k^t g mod n."""
    bad = 0
    els = R.elements(bound)
    x = np.array([a for a in els for _ in els])
    y = np.array([b for _ in els for b in els])
    got = _mul(R, x, y)
    for (a, b), c in zip(zip(x, y), got):
        t = max(a[2], b[0])
        g = (pow(k, int(t - a[2]), n) * int(a[1]) + pow(k, int(t - b[0]), n) * int(b[1])) % n
        bad += tuple(int(v) for v in c) != (a[0] - a[2] + t, g, b[2] - b[0] + t)
    return bad


AMBIENTS = {
    "trivial": Reilly.bicyclic(),
    "Z2 id": Reilly(cyclic_group(2), scaling_endomorphism(2, 1)),
    "Z4 doubling": Reilly(cyclic_group(4), scaling_endomorphism(4, 2)),
}


def test_criterion_1_reilly_laws(capsys):
    results = {name: law_violations(R, LAW_BOUND) for name, R in AMBIENTS.items()}
    oracle = sum(oracle_mismatches(R, n, k, 4)
                 for R, (n, k) in zip(AMBIENTS.values(), ((1, 0), (2, 1), (4, 2))))
    ok = oracle <= TOLERANCE and all(v <= TOLERANCE for r in results.values() for v in r.values())
    announce(capsys, 1, ok, f"violations {results} oracle mismatches {oracle}")


@pytest.fixture(scope="module")
def bicyclic():
    S = read_config(demo_path("bicyclic-n0")).build_window()
    return S, classes(S)


@pytest.fixture(scope="module")
def z2():
    S = read_config(demo_path("reilly-z2")).build_window()
    return S, classes(S)


def test_criterion_2_bicyclic(capsys, bicyclic):
    S, Q = bicyclic
    rep = verdict(S, 10)
    struct = verify_quotient(Q)
    cmp = compare_to_reference(Q)
    pairs_ok = all(
        cmp.image[Q.class_of[p]] == ReillyElement(S.ids[p.a].n, 0, S.ids[p.b].n)
        for p in Q.class_of)
    ok = (rep.status is Status.PASS and len(Q) == 441 and len(struct.items) == 7
          and struct.status is Status.PASS and cmp.status is Status.PASS and cmp.bijective
          and len(cmp.image) == 441 and pairs_ok)
    announce(capsys, 2, ok,
             f"conditions={rep.status.value} classes={len(Q)} "
             f"structure={[v.status.value for v in struct.items]} "
             f"bijective={cmp.bijective} [(0,i),(0,j)]->(i,j)={pairs_ok}")


def test_criterion_3_reilly_z2(capsys, z2):
    S, Q = z2
    rep = verdict(S, 6)
    cmp = compare_to_reference(Q)
    window = len(S.ambient.elements(12))
    ok = (rep.status is Status.PASS and len(Q) == 338 and cmp.status is Status.PASS
          and cmp.bijective and len(set(cmp.image.values())) == window == 338)
    announce(capsys, 3, ok, f"conditions={rep.status.value} classes={len(Q)} "
                            f"image={len(set(cmp.image.values()))}/{window} "
                            f"multiplicative={cmp['multiplicative'].status.value}")


def test_criterion_4_even_counterexample(capsys):
    S = read_config(demo_path("even-counterexample")).build_window()
    v = check_A(S, 2)
    failing = [tuple(t) for t in v.details.get("failing_targets", [])]
    cov = l_class_coverage(S)
    ok = (v.status is Status.FAIL and (1, 1) in failing and recheck(S, v) == []
          and cov == frozenset({2, 4, 6, 8}))
    announce(capsys, 4, ok, f"A={v.status.value} (1,1) failing={(1, 1) in failing} "
                            f"first={v.counterexample['target']} coverage={sorted(cov)}")


def test_criterion_5_right_zero(capsys):
    S = read_config(demo_path("rightzero-counterexample")).build_window()
    v = check_B(S, "i")
    ok = (v.status is Status.FAIL and v.counterexample == {"x": "u", "y": "v", "a": "u"}
          and recheck(S, v) == [])
    announce(capsys, 5, ok, f"B(i)={v.status.value} counterexample={v.counterexample}")


def test_criterion_6_lemma_suites(capsys, bicyclic, z2):
    summary = {}
    ok = True
    for name, (_, Q) in (("bicyclic", bicyclic), ("Z2", z2)):
        items = lemma_suite(Q).items + [check_omega_chain(Q)]
        for v in items:
            ok &= v.status is Status.PASS
            n = next(iter(v.details.values()), 0)
            ok &= n > 0
        summary[name] = {v.name: v.status.value for v in items}
    announce(capsys, 6, ok, f"{summary}")


def test_criterion_7_straightness(capsys, bicyclic, z2):
    counts = {}
    ok = True
    for name, (S, _), nt, order in (("bicyclic", bicyclic, 10, 1), ("Z2", z2, 6, 2)):
        v = check_straight(S, nt)
        problems = recheck(S, v)
        counts[name] = len(v.witnesses)
        ok &= (v.status is Status.PASS and problems == []
               and len(v.witnesses) == (nt + 1) ** 2 * order)
    announce(capsys, 7, ok, f"re-evaluated decompositions {counts}")


def test_criterion_8_determinism(capsys):
    same = {}
    for name in demo_names():
        cfg = read_config(demo_path(name))
        first = dump_report(run("demo", cfg, workers=4))
        second = dump_report(run("demo", cfg, workers=4))
        same[name] = first == second
    announce(capsys, 8, all(same.values()), f"byte-identical reports {same}")
