"""Quotient Q of the pair set Sigma by ~, built and checked inside a window.

Sigma holds the pairs (a, b) of S with r(a) = r(b). Two pairs are related
when a pair of multipliers (x, y) with l(x) = r(a), l(y) = r(c),
r(x) = r(y) satisfies xa = yc and xb = yd. Classes are products of
witness searches; the class invariants are only used as cross-checks.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ModeError
from .reilly import ReillyElement, bicyclic_multiply, idempotent_leq
from .verdicts import Status, Verdict, worst
from .verifier import c_profiles
from .window import OVERFLOW, REFERENCE, SWindow

UNDEFINED = -1


class SigmaPair(NamedTuple):
    a: int
    b: int


@dataclass(frozen=True)
class PairClass:
    index: int
    representative: SigmaPair
    members: tuple[SigmaPair, ...]
    profile: tuple[int, int]


@dataclass(frozen=True, eq=False)
class QuotientWindow:
    S: SWindow
    classes: tuple[PairClass, ...]
    class_of: dict
    product: tuple[tuple[int, ...], ...]
    product_witness: dict
    embedding: tuple[int, ...]
    certified: bool = True
    limitation: str | None = None

    def __len__(self):
        return len(self.classes)

    def mul(self, i: int, j: int) -> int | None:
        v = self.product[i][j]
        return None if v == UNDEFINED else v

    def product_array(self) -> np.ndarray:
        return np.asarray(self.product, dtype=np.int64).reshape(len(self), len(self))

    def fmt(self, i: int) -> str:
        a, b = self.classes[i].representative
        return f"[{self.S.fmt(a)},{self.S.fmt(b)}]"

    def pair_ids(self, p: SigmaPair) -> tuple:
        return (self.S.ids[p[0]], self.S.ids[p[1]])


def sigma_pairs(S: SWindow) -> list[SigmaPair]:
    return [SigmaPair(a, b) for a in range(len(S)) for b in S.with_r[S.r[a]]]


def tilde(p1, p2, S: SWindow) -> Verdict:
    """Decide (a, b) ~ (c, d) by searching for multipliers (x, y)."""
    a, b = p1
    c, d = p2
    r, l, ext = S.r, S.l, S.ext
    if r[a] != r[b] or r[c] != r[d]:
        raise ValueError("not a pair of Sigma")
    if l[a] != l[c] or l[b] != l[d]:
        return Verdict("tilde", Status.FAIL,
                       counterexample={"reason": "l-profiles differ",
                                       "profiles": ((l[a], l[b]), (l[c], l[d]))})
    blocked = False
    for x in S.with_l.get(r[a], ()):
        va, vb = ext[x][a], ext[x][b]
        if va == OVERFLOW or vb == OVERFLOW:
            blocked = True
            continue
        for y in S.left_div.get((c, va), ()):
            if r[y] == r[x] and l[y] == r[c] and S.same(ext[y][d], vb):
                return Verdict("tilde", Status.PASS, [{"x": S.ids[x], "y": S.ids[y]}])
    if not blocked and max(r[a], r[c]) < S.l_horizon:
        return Verdict("tilde", Status.FAIL,
                       counterexample={"reason": "no multipliers relate the pairs"})
    return Verdict("tilde", Status.UNKNOWN,
                   limitation="multipliers may lie outside the window")


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        parent = self.parent
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            if ri < rj:
                self.parent[rj] = ri
            else:
                self.parent[ri] = rj


def _related_edges(S: SWindow, p: SigmaPair):
    """Yield every in-window pair related to ``p`` by a direct witness.

    The second item of each yielded tuple flags an undetermined product.
    """
    a, b = p
    r, ext, right_div = S.r, S.ext, S.right_div
    l = S.l
    for x in S.with_l.get(r[a], ()):
        va, vb = ext[x][a], ext[x][b]
        if va == OVERFLOW or vb == OVERFLOW:
            yield None
            continue
        for y in S.with_r[r[x]]:
            ds = right_div.get((y, vb))
            if not ds:
                continue
            for c in right_div.get((y, va), ()):
                if r[c] != l[y]:
                    continue
                for d in ds:
                    if r[d] == r[c]:
                        yield SigmaPair(c, d)


def _multiply_pairs(S: SWindow, class_of: dict, p, q):
    """[a,b][c,d] via the first witness whose result lies in the window.

    Returns ``(class index or None, witness or None)``.
    """
    a, b = p
    c, d = q
    lx, ly = c_profiles(S, b, c)
    r, l, ext = S.r, S.l, S.ext
    k = len(S)
    first = None
    for x in S.with_l.get(lx, ()):
        v = ext[x][b]
        if v == OVERFLOW:
            continue
        xa = ext[x][a]
        for y in S.left_div.get((c, v), ()):
            if r[y] != r[x] or l[y] != ly:
                continue
            yd = ext[y][d]
            if 0 <= xa < k and 0 <= yd < k:
                return class_of[(xa, yd)], (x, y)
            if first is None:
                first = (x, y)
    return None, first


def classes(S: SWindow) -> QuotientWindow:
    """Partition the in-window part of Sigma by ~ and tabulate Q's product."""
    pairs = sigma_pairs(S)
    pid = {p: i for i, p in enumerate(pairs)}
    uf = _UnionFind(len(pairs))
    undetermined = 0
    for i, p in enumerate(pairs):
        for q in _related_edges(S, p):
            if q is None:
                undetermined += 1
                continue
            uf.union(i, pid[q])
    groups = defaultdict(list)
    for i, p in enumerate(pairs):
        groups[uf.find(i)].append(p)

    def key(p):
        return (S.l[p.a], p.a, p.b)

    member_lists = sorted((sorted(g, key=key) for g in groups.values()), key=lambda g: key(g[0]))
    cls, class_of = [], {}
    for idx, members in enumerate(member_lists):
        rep = members[0]
        cls.append(PairClass(idx, rep, tuple(members), (S.l[rep.a], S.l[rep.b])))
        for m in members:
            class_of[m] = idx

    C = len(cls)
    product, witness = [], {}
    for i in range(C):
        row = []
        p = cls[i].representative
        for j in range(C):
            res, wit = _multiply_pairs(S, class_of, p, cls[j].representative)
            row.append(UNDEFINED if res is None else res)
            if wit is not None:
                witness[(i, j)] = wit
        product.append(tuple(row))

    embedding = []
    for a in range(len(S)):
        e = _embed(S, class_of, a)
        embedding.append(UNDEFINED if e is None else e)

    limitation = None
    if undetermined:
        limitation = (f"{undetermined} witness searches hit undefined products; "
                      "the partition may be finer than ~")
    return QuotientWindow(S, tuple(cls), class_of, tuple(product), witness,
                          tuple(embedding), certified=not undetermined,
                          limitation=limitation)


def multiply_classes(QW: QuotientWindow, i: int, j: int) -> int | None:
    """Recompute [a,b][c,d] from the class representatives."""
    res, _ = _multiply_pairs(QW.S, QW.class_of, QW.classes[i].representative,
                             QW.classes[j].representative)
    return res


def invert_class(QW: QuotientWindow, i: int) -> int:
    a, b = QW.classes[i].representative
    return QW.class_of[SigmaPair(b, a)]


def _embed(S: SWindow, class_of: dict, a: int) -> int | None:
    k = len(S)
    for x in S.with_l.get(S.r[a], ()):
        xa = S.ext[x][a]
        if 0 <= xa < k:
            return class_of[SigmaPair(x, xa)]
    return None


def embed(QW: QuotientWindow, a) -> int | None:
    """Class [x, xa] for any x with l(x) = r(a); ``a`` is an index or an element id."""
    if not isinstance(a, int):
        a = QW.S.index[a]
    return _embed(QW.S, QW.class_of, a)


def idempotents(QW: QuotientWindow) -> list[int]:
    return [i for i in range(len(QW)) if QW.product[i][i] == i]


# -- verification sweeps ----------------------------------------------------

@dataclass
class StructureReport:
    items: list[Verdict] = field(default_factory=list)

    @property
    def status(self) -> Status:
        return worst(v.status for v in self.items)

    def __getitem__(self, name: str) -> Verdict:
        for v in self.items:
            if v.name == name:
                return v
        raise KeyError(name)

    def to_json(self) -> list:
        return [v.to_json() for v in self.items]


def _status(violations: int, undecided: int) -> Status:
    if violations:
        return Status.FAIL
    return Status.UNKNOWN if undecided else Status.PASS


def check_equivalence(QW: QuotientWindow) -> Verdict:
    """Every two members of a class are related by a direct witness."""
    S = QW.S
    checked = undecided = 0
    ce = None
    for c in QW.classes:
        for p in c.members:
            for q in c.members:
                checked += 1
                v = tilde(p, q, S)
                if v.status is Status.UNKNOWN:
                    undecided += 1
                elif v.status is Status.FAIL and ce is None:
                    ce = {"pairs": (QW.pair_ids(p), QW.pair_ids(q))}
    violations = 0 if ce is None else 1
    lim = QW.limitation if not QW.certified else None
    status = _status(violations, undecided)
    if status is Status.PASS and not QW.certified:
        status = Status.UNKNOWN
    return Verdict("equivalence", status, counterexample=ce, limitation=lim,
                   details={"ordered_member_pairs": checked, "classes": len(QW)})


def check_well_defined(QW: QuotientWindow, sample: int | None = None, seed: int = 0) -> Verdict:
    """The product class does not depend on members or on the witness chosen."""
    S = QW.S
    r, l, ext = S.r, S.l, S.ext
    k = len(S)
    class_of, product = QW.class_of, QW.product
    left_div, with_l = S.left_div, S.with_l
    checked = skipped = missing = 0
    ce = None
    if sample is None:
        todo = ((i, j) for i in range(len(QW)) for j in range(len(QW)))
    else:
        rng = random.Random(seed)
        C = len(QW)
        picks = rng.sample(range(C * C), min(sample, C * C))
        todo = [divmod(v, C) for v in sorted(picks)]
    witnesses = {}

    def multipliers(b, c):
        # the witness set for a product depends only on the inner pair (b, c)
        if (b, c) not in witnesses:
            M = max(l[b], l[c])
            lx, ly = r[b] - l[b] + M, r[c] - l[c] + M
            witnesses[(b, c)] = [
                (x, y) for x in with_l.get(lx, ()) if ext[x][b] != OVERFLOW
                for y in left_div.get((c, ext[x][b]), ()) if r[y] == r[x] and l[y] == ly]
        return witnesses[(b, c)]

    for i, j in todo:
        expect = product[i][j]
        if expect == UNDEFINED:
            continue
        for a, b in QW.classes[i].members:
            row_a = [ext[x][a] for x in range(k)]
            for c, d in QW.classes[j].members:
                W = multipliers(b, c)
                if not W:
                    missing += 1
                for x, y in W:
                    xa, yd = row_a[x], ext[y][d]
                    if not (0 <= xa < k and 0 <= yd < k):
                        skipped += 1
                        continue
                    checked += 1
                    got = class_of[(xa, yd)]
                    if got != expect and ce is None:
                        ce = {"classes": (QW.fmt(i), QW.fmt(j)),
                              "members": (QW.pair_ids((a, b)), QW.pair_ids((c, d))),
                              "witness": (S.ids[x], S.ids[y]),
                              "got": QW.fmt(got), "stored": QW.fmt(expect)}
    details = {"evaluations": checked, "out_of_window": skipped, "no_witness": missing}
    if sample is not None:
        details["sampled_class_pairs"] = sample
        details["seed"] = seed
    lim = None
    if missing:
        lim = f"{missing} member combinations have no in-window witness"
    return Verdict("well-defined", _status(ce is not None, missing), counterexample=ce,
                   limitation=lim, details=details)


def check_associative(QW: QuotientWindow, sample: int | None = None, seed: int = 0) -> Verdict:
    """(pq)s = p(qs) for every class triple with both sides in the window."""
    P = QW.product_array()
    C = len(QW)
    checked = 0
    ce = None
    if C == 0:
        return Verdict("associative", Status.PASS, details={"triples": 0})
    if sample is None:
        valid_bc = P >= 0
        right_idx = np.where(valid_bc, P, 0)
        for a in range(C):
            ab = P[a]
            left = np.where((ab >= 0)[:, None], P[np.where(ab >= 0, ab, 0)], UNDEFINED)
            right = np.where(valid_bc, P[a][right_idx], UNDEFINED)
            both = (left >= 0) & (right >= 0)
            checked += int(both.sum())
            bad = both & (left != right)
            if ce is None and bad.any():
                b, c = map(int, np.argwhere(bad)[0])
                ce = {"triple": (QW.fmt(a), QW.fmt(b), QW.fmt(c)),
                      "left": QW.fmt(int(left[b, c])), "right": QW.fmt(int(right[b, c]))}
    else:
        rng = np.random.default_rng(seed)
        trip = rng.integers(0, C, size=(sample, 3))
        for a, b, c in trip.tolist():
            ab, bc = P[a, b], P[b, c]
            if ab < 0 or bc < 0 or P[ab, c] < 0 or P[a, bc] < 0:
                continue
            checked += 1
            if P[ab, c] != P[a, bc] and ce is None:
                ce = {"triple": (QW.fmt(a), QW.fmt(b), QW.fmt(c)),
                      "left": QW.fmt(int(P[ab, c])), "right": QW.fmt(int(P[a, bc]))}
    details = {"triples": checked}
    if sample is not None:
        details["sampled_triples"] = sample
        details["seed"] = seed
    return Verdict("associative", _status(ce is not None, 0), counterexample=ce, details=details)


def check_regular(QW: QuotientWindow) -> Verdict:
    """q q^-1 q = q, and q^-1 is the only in-window inverse of q."""
    C = len(QW)
    P = QW.product
    undecided = 0
    ce = None
    inv = [invert_class(QW, i) for i in range(C)]
    for i in range(C):
        j = inv[i]
        t = P[i][j]
        if t == UNDEFINED or P[t][i] == UNDEFINED:
            undecided += 1
            continue
        if P[t][i] != i and ce is None:
            ce = {"class": QW.fmt(i), "inverse": QW.fmt(j), "got": QW.fmt(P[t][i])}
    unique_violations = []
    for i in range(C):
        for j in range(C):
            ij, ji = P[i][j], P[j][i]
            if ij == UNDEFINED or ji == UNDEFINED:
                continue
            iji, jij = P[ij][i], P[ji][j]
            if iji == i and jij == j and j != inv[i]:
                unique_violations.append((i, j))
    if unique_violations and ce is None:
        i, j = unique_violations[0]
        ce = {"class": QW.fmt(i), "second_inverse": QW.fmt(j)}
    return Verdict("regular", _status(ce is not None, undecided), counterexample=ce,
                   limitation=f"{undecided} classes leave the window" if undecided else None,
                   details={"classes": C, "inverse_unique": not unique_violations})


def check_omega_chain(QW: QuotientWindow) -> Verdict:
    """E(Q) = {[a,a]}, idempotents commute, and they form a chain ordered by l."""
    S = QW.S
    P = QW.product
    E = idempotents(QW)
    diagonal = sorted({QW.class_of[SigmaPair(a, a)] for a in range(len(S))})
    ce = None
    undecided = sum(P[d][d] == UNDEFINED for d in diagonal)
    expected = [d for d in diagonal if P[d][d] != UNDEFINED]
    if E != expected:
        ce = {"idempotents": [QW.fmt(i) for i in E], "diagonal": [QW.fmt(i) for i in expected]}
    level = {e: QW.classes[e].profile[0] for e in E}
    if len(set(level.values())) != len(E) and ce is None:
        ce = {"reason": "two idempotents share an l-value"}
    for e in E:
        for f in E:
            ef, fe = P[e][f], P[f][e]
            if ef == UNDEFINED or fe == UNDEFINED:
                undecided += 1
                continue
            below = ef == e and fe == e
            if (ef != fe or ef not in (e, f) or below != idempotent_leq(level[e], level[f])) \
                    and ce is None:
                ce = {"pair": (QW.fmt(e), QW.fmt(f)), "ef": QW.fmt(ef), "fe": QW.fmt(fe)}
    return Verdict("omega-chain", _status(ce is not None, undecided), counterexample=ce,
                   witnesses=[{"l": level[e], "idempotent": QW.pair_ids(QW.classes[e].representative)}
                              for e in E],
                   details={"idempotents": len(E)})


def check_bisimple(QW: QuotientWindow) -> Verdict:
    """For idempotents [a,a], [b,b] build q = [c,d] from profile-level witnesses.

    c, d are chosen with r(c) = r(d), l(c) = l(a), l(d) = l(b), i.e. a straight
    decomposition of (l(a), l(b)) inside the image of S in the bicyclic monoid.
    """
    S = QW.S
    P = QW.product
    E = idempotents(QW)
    witnesses = []
    ce = None
    undecided = 0
    straight = {}
    for c in range(len(S)):
        for d in S.with_r[S.r[c]]:
            straight.setdefault((S.l[c], S.l[d]), (c, d))
    for e in E:
        for f in E:
            le, lf = QW.classes[e].profile[0], QW.classes[f].profile[0]
            cd = straight.get((le, lf))
            if cd is None:
                if max(le, lf) < S.l_horizon and ce is None:
                    ce = {"idempotents": (QW.fmt(e), QW.fmt(f)), "reason": "no c, d"}
                else:
                    undecided += 1
                continue
            q = QW.class_of[SigmaPair(*cd)]
            qi = invert_class(QW, q)
            left, right = P[q][qi], P[qi][q]
            if left == UNDEFINED or right == UNDEFINED:
                undecided += 1
                continue
            if (left != e or right != f) and ce is None:
                ce = {"idempotents": (QW.fmt(e), QW.fmt(f)), "q": QW.fmt(q),
                      "qq^-1": QW.fmt(left), "q^-1q": QW.fmt(right)}
            witnesses.append({"e": QW.pair_ids(QW.classes[e].representative),
                              "f": QW.pair_ids(QW.classes[f].representative),
                              "c": S.ids[cd[0]], "d": S.ids[cd[1]]})
    return Verdict("bisimple", _status(ce is not None, undecided), witnesses, ce,
                   details={"idempotent_pairs": len(E) ** 2})


def check_left_quotient(QW: QuotientWindow) -> Verdict:
    """Every class [a,b] equals (a embedded)^-1 (b embedded)."""
    P = QW.product
    emb = QW.embedding
    undecided = 0
    ce = None
    checked = 0
    for c in QW.classes:
        for a, b in c.members:
            ea, eb = emb[a], emb[b]
            if ea == UNDEFINED or eb == UNDEFINED:
                undecided += 1
                continue
            got = P[invert_class(QW, ea)][eb]
            if got == UNDEFINED:
                undecided += 1
                continue
            checked += 1
            if got != c.index and ce is None:
                ce = {"pair": QW.pair_ids((a, b)), "got": QW.fmt(got), "class": QW.fmt(c.index)}
    return Verdict("left-I-quotient", _status(ce is not None, undecided), counterexample=ce,
                   details={"pairs": checked, "undecided": undecided})


def verify_quotient(QW: QuotientWindow, sample: int | None = None, seed: int = 0,
                    workers: int = 1) -> StructureReport:
    """Run the seven structural sweeps over a finished QuotientWindow.

    Sweeps are read-only; with ``workers > 1`` they run on a thread pool and
    results are merged in a fixed order.
    """
    sweeps = [
        lambda: check_equivalence(QW),
        lambda: check_well_defined(QW, sample, seed),
        lambda: check_associative(QW, sample, seed),
        lambda: check_regular(QW),
        lambda: check_omega_chain(QW),
        lambda: check_bisimple(QW),
        lambda: check_left_quotient(QW),
    ]
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            items = list(pool.map(lambda f: f(), sweeps))
    else:
        items = [f() for f in sweeps]
    return StructureReport(items)


# -- property sweeps over the construction ------------------------------------

def check_witness_transfer(QW: QuotientWindow) -> Verdict:
    """A pair related by (x1, x2) transfers any left equaliser (w1, w2) of a1, a2 to b1, b2.

    Exhaustive over qualifying tuples
    ``(a1, b1, a2, b2, x1, x2, w1, w2)`` inside the window.
    """
    S = QW.S
    r, l, ext = S.r, S.l, S.ext
    right_div, left_div = S.right_div, S.left_div
    tuples = undecided = 0
    ce = None
    for a1, b1 in sigma_pairs(S):
        for x1 in S.with_l.get(r[a1], ()):
            v1, v2 = ext[x1][a1], ext[x1][b1]
            if v1 == OVERFLOW or v2 == OVERFLOW:
                continue
            for x2 in S.with_r[r[x1]]:
                for a2 in right_div.get((x2, v1), ()):
                    if r[a2] != l[x2]:
                        continue
                    for b2 in right_div.get((x2, v2), ()):
                        if r[b2] != r[a2]:
                            continue
                        for w1 in range(len(S)):
                            u = ext[w1][a1]
                            if u == OVERFLOW:
                                continue
                            for w2 in left_div.get((a2, u), ()):
                                if r[w2] != r[w1]:
                                    continue
                                tuples += 1
                                same = S.same(ext[w1][b1], ext[w2][b2])
                                if same is None:
                                    undecided += 1
                                elif not same and ce is None:
                                    ce = {"a1": S.ids[a1], "b1": S.ids[b1], "a2": S.ids[a2],
                                          "b2": S.ids[b2], "x1": S.ids[x1], "x2": S.ids[x2],
                                          "w1": S.ids[w1], "w2": S.ids[w2]}
    return Verdict("witness-transfer", _status(ce is not None, undecided), counterexample=ce,
                   details={"tuples": tuples})


def check_cancellation(QW: QuotientWindow) -> Verdict:
    """abc = dec with l(b), l(e) >= r(c) forces ab = de."""
    S = QW.S
    k = len(S)
    tuples = undecided = 0
    ce = None
    for c in range(k):
        groups = defaultdict(list)
        for a in range(k):
            for b in range(k):
                if S.l[b] < S.r[c]:
                    continue
                key = S.mul3(a, b, c)
                if key is None:
                    undecided += 1
                    continue
                groups[key].append((a, b))
        for members in groups.values():
            tuples += len(members) ** 2
            a, b = members[0]
            for d, e in members[1:]:
                same = S.same(S.ext[a][b], S.ext[d][e])
                if same is None:
                    undecided += 1
                elif not same and ce is None:
                    ce = {"a": S.ids[a], "b": S.ids[b], "c": S.ids[c], "d": S.ids[d], "e": S.ids[e]}
    return Verdict("cancellation", _status(ce is not None, undecided), counterexample=ce,
                   details={"tuples": tuples})


def check_multiplier_invariance(QW: QuotientWindow) -> Verdict:
    """[a,b] = [xa,xb] for every x with l(x) = r(a)."""
    S = QW.S
    k = len(S)
    checked = skipped = 0
    ce = None
    for a, b in sigma_pairs(S):
        own = QW.class_of[SigmaPair(a, b)]
        for x in S.with_l.get(S.r[a], ()):
            xa, xb = S.ext[x][a], S.ext[x][b]
            if not (0 <= xa < k and 0 <= xb < k):
                skipped += 1
                continue
            checked += 1
            if QW.class_of[SigmaPair(xa, xb)] != own and ce is None:
                ce = {"pair": (S.ids[a], S.ids[b]), "x": S.ids[x]}
    return Verdict("multiplier-invariance", _status(ce is not None, 0), counterexample=ce,
                   details={"checked": checked, "out_of_window": skipped})


def check_composable(QW: QuotientWindow) -> Verdict:
    """[a,b][b,c] = [a,c], computed from the pairs themselves."""
    S = QW.S
    checked = undecided = 0
    ce = None
    for rv, group in S.with_r.items():
        for a in group:
            for b in group:
                for c in group:
                    got, _ = _multiply_pairs(S, QW.class_of, (a, b), (b, c))
                    if got is None:
                        undecided += 1
                        continue
                    checked += 1
                    if got != QW.class_of[SigmaPair(a, c)] and ce is None:
                        ce = {"a": S.ids[a], "b": S.ids[b], "c": S.ids[c], "got": QW.fmt(got)}
    return Verdict("composable-product", _status(ce is not None, undecided), counterexample=ce,
                   details={"triples": checked})


def check_absorption(QW: QuotientWindow) -> Verdict:
    """l(a) = l(b) gives [a,a][b,b] = [a,a] = [b,b]."""
    S = QW.S
    checked = undecided = 0
    ce = None
    for lv, group in S.with_l.items():
        for a in group:
            ea = QW.class_of[SigmaPair(a, a)]
            for b in group:
                eb = QW.class_of[SigmaPair(b, b)]
                prod = QW.product[ea][eb]
                if prod == UNDEFINED:
                    undecided += 1
                    continue
                checked += 1
                if not (prod == ea == eb) and ce is None:
                    ce = {"a": S.ids[a], "b": S.ids[b]}
    return Verdict("idempotent-absorption", _status(ce is not None, undecided),
                   counterexample=ce, details={"pairs": checked})


def check_embedding(QW: QuotientWindow) -> Verdict:
    """a -> [x, xa] is independent of x, injective, multiplicative, and has profile phi(a)."""
    S = QW.S
    k = len(S)
    emb = QW.embedding
    ce = None
    undecided = 0
    for a in range(k):
        images = {QW.class_of[SigmaPair(x, S.ext[x][a])]
                  for x in S.with_l.get(S.r[a], ()) if 0 <= S.ext[x][a] < k}
        if not images:
            undecided += 1
            continue
        if len(images) > 1 and ce is None:
            ce = {"reason": "choice of x matters", "a": S.ids[a]}
        if QW.classes[emb[a]].profile != (S.r[a], S.l[a]) and ce is None:
            ce = {"reason": "profile", "a": S.ids[a]}
    defined = [e for e in emb if e != UNDEFINED]
    if len(set(defined)) != len(defined) and ce is None:
        ce = {"reason": "not injective"}
    mult_checked = 0
    for a in range(k):
        for b in range(k):
            ab = S.product(a, b)
            if ab is None or UNDEFINED in (emb[a], emb[b], emb[ab]):
                continue
            prod = QW.product[emb[a]][emb[b]]
            if prod == UNDEFINED:
                undecided += 1
                continue
            mult_checked += 1
            if prod != emb[ab] and ce is None:
                ce = {"reason": "not multiplicative", "a": S.ids[a], "b": S.ids[b]}
    return Verdict("embedding", _status(ce is not None, undecided), counterexample=ce,
                   details={"image_size": len(set(defined)), "elements": k,
                            "products_checked": mult_checked})


def check_profile_arithmetic(QW: QuotientWindow) -> Verdict:
    """The profile of a class product is the bicyclic product of the profiles."""
    ce = None
    checked = 0
    for i, ci in enumerate(QW.classes):
        for j, cj in enumerate(QW.classes):
            t = QW.product[i][j]
            if t == UNDEFINED:
                continue
            checked += 1
            if tuple(bicyclic_multiply(ci.profile, cj.profile)) != QW.classes[t].profile \
                    and ce is None:
                ce = {"classes": (QW.fmt(i), QW.fmt(j)), "product": QW.fmt(t)}
    return Verdict("profile-arithmetic", _status(ce is not None, 0), counterexample=ce,
                   details={"products": checked})


def lemma_suite(QW: QuotientWindow) -> StructureReport:
    return StructureReport([
        check_witness_transfer(QW),
        check_cancellation(QW),
        check_multiplier_invariance(QW),
        check_composable(QW),
        check_absorption(QW),
        check_omega_chain(QW),
        check_embedding(QW),
        check_profile_arithmetic(QW),
    ])


# -- comparison with the ambient S(G, theta) ----------------------------------

@dataclass
class ReferenceComparison:
    image: dict[int, ReillyElement]
    items: list[Verdict]

    @property
    def status(self) -> Status:
        return worst(v.status for v in self.items)

    @property
    def bijective(self) -> bool:
        return all(v.passed for v in self.items if v.name in ("well-defined-map", "injective", "surjective"))

    def __getitem__(self, name):
        for v in self.items:
            if v.name == name:
                return v
        raise KeyError(name)

    def to_json(self) -> list:
        return [v.to_json() for v in self.items]


def compare_to_reference(QW: QuotientWindow) -> ReferenceComparison:
    """Map [a,b] to a^-1 b in S(G, theta) and check it is an isomorphism onto the window."""
    S = QW.S
    if S.mode != REFERENCE:
        raise ModeError("comparison needs a reference-mode window")
    amb = S.ambient
    image = {}
    ce = None
    for c in QW.classes:
        vals = {amb.mul(amb.inv(S.ids[a]), S.ids[b]) for a, b in c.members}
        if len(vals) > 1 and ce is None:
            ce = {"class": QW.fmt(c.index), "images": sorted(vals)}
        a, b = c.representative
        image[c.index] = amb.mul(amb.inv(S.ids[a]), S.ids[b])
    items = [Verdict("well-defined-map", _status(ce is not None, 0), counterexample=ce)]

    seen = {}
    ce = None
    for i, q in image.items():
        if q in seen and ce is None:
            ce = {"classes": (QW.fmt(seen[q]), QW.fmt(i)), "image": q}
        seen.setdefault(q, i)
    items.append(Verdict("injective", _status(ce is not None, 0), counterexample=ce,
                         details={"image_size": len(seen)}))

    # an empty S has an empty quotient; there is nothing to cover
    targets = amb.elements(S.bound) if len(S) else []
    missing = [q for q in targets if q not in seen]
    definite = [q for q in missing if max(q.m, q.n) < S.l_horizon]
    items.append(Verdict(
        "surjective", _status(bool(definite), len(missing) - len(definite)),
        counterexample={"missing": definite[0]} if definite else None,
        limitation=f"{len(missing)} window elements not reached" if missing else None,
        details={"window_elements": len(targets), "reached": len(targets) - len(missing)}))

    ce = None
    checked = 0
    for i in range(len(QW)):
        for j in range(len(QW)):
            t = QW.product[i][j]
            if t == UNDEFINED:
                continue
            checked += 1
            if amb.mul(image[i], image[j]) != image[t] and ce is None:
                ce = {"classes": (QW.fmt(i), QW.fmt(j)), "product": QW.fmt(t)}
    items.append(Verdict("multiplicative", _status(ce is not None, 0), counterexample=ce,
                         details={"products": checked}))
    return ReferenceComparison(image, items)
