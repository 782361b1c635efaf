"""Window-bounded checks of the left I-order conditions on an SWindow.

Every check returns a :class:`~iquot.verdicts.Verdict`. ``fail`` is only
reported when the in-window search is provably exhaustive for the failing
item (see ``SWindow.l_horizon``); otherwise a missing witness is
``unknown``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ModeError, WindowError
from .reilly import ReillyElement, bicyclic_invert, bicyclic_multiply
from .verdicts import Status, Verdict, worst
from .window import OVERFLOW, REFERENCE, SWindow, Window, l_class_coverage

CONDITIONS = ("A", "B(i)", "B(ii)", "C", "straight", "lclass")


def _target_bound(S: SWindow, targets) -> int:
    n = targets.bound if isinstance(targets, Window) else int(targets)
    if n < 0 or n > S.bound:
        raise WindowError(f"target bound {n} must lie in [0, {S.bound}]")
    return n


def default_targets(bound: int) -> int:
    return bound // 2


def check_A(S: SWindow, targets) -> Verdict:
    """Every (i, j) with i, j <= N' is (a phi)^-1 (b phi) for some a, b in S."""
    nt = _target_bound(S, targets)
    r, l, k = S.r, S.l, len(S)
    found = {}
    for a in range(k):
        for b in range(k):
            t = max(r[a], r[b])
            key = (l[a] - r[a] + t, l[b] - r[b] + t)
            if key[0] <= nt and key[1] <= nt and key not in found:
                found[key] = (a, b)
    witnesses, definite, undecided = [], [], []
    for i in range(nt + 1):
        for j in range(nt + 1):
            if (i, j) in found:
                a, b = found[(i, j)]
                witnesses.append({"target": (i, j), "a": S.ids[a], "b": S.ids[b]})
            # any witness has l(a) <= i and l(b) <= j
            elif max(i, j) < S.l_horizon:
                definite.append((i, j))
            else:
                undecided.append((i, j))
    details = {"targets": (nt + 1) ** 2, "covered": len(witnesses)}
    if definite:
        details["failing_targets"] = definite
        return Verdict("A", Status.FAIL, witnesses, {"target": definite[0]},
                       details=details)
    if undecided:
        details["undecided_targets"] = undecided
        return Verdict("A", Status.UNKNOWN, witnesses,
                       limitation=f"{len(undecided)} targets without an in-window witness; "
                                  "witnesses may lie outside the window",
                       details=details)
    return Verdict("A", Status.PASS, witnesses, details=details)


def check_B(S: SWindow, side: str) -> Verdict:
    """Left (side 'i') or right (side 'ii') cancellation above the profile bound."""
    if side not in ("i", "ii"):
        raise ValueError(f"side must be 'i' or 'ii', got {side!r}")
    name = f"B({side})"
    r, l, ext, k = S.r, S.l, S.ext, len(S)
    blocked = checked = 0
    for x in range(k):
        for y in range(x + 1, k):
            for a in range(k):
                if side == "i":
                    if l[x] < r[a] or l[y] < r[a]:
                        continue
                    u, v = ext[x][a], ext[y][a]
                else:
                    if r[x] < l[a] or r[y] < l[a]:
                        continue
                    u, v = ext[a][x], ext[a][y]
                checked += 1
                same = S.same(u, v)
                if same is None:
                    blocked += 1
                elif same:
                    return Verdict(name, Status.FAIL,
                                   counterexample={"x": S.ids[x], "y": S.ids[y], "a": S.ids[a]},
                                   details={"triples_checked": checked})
    details = {"triples_checked": checked}
    if blocked:
        details["blocked"] = blocked
        return Verdict(name, Status.UNKNOWN,
                       limitation=f"{blocked} triples have both products outside the window",
                       details=details)
    return Verdict(name, Status.PASS, details=details)


def c_profiles(S: SWindow, b: int, c: int) -> tuple[int, int]:
    """Required l-values of the multipliers x, y for the pair (b, c)."""
    M = max(S.l[b], S.l[c])
    return S.r[b] - S.l[b] + M, S.r[c] - S.l[c] + M


def find_c_witness(S: SWindow, b: int, c: int):
    """First (x, y) in element order with xb = yc and the required profiles.

    Returns ``((x, y), blocked)``; the pair is None when no witness exists.
    """
    lx, ly = c_profiles(S, b, c)
    r, l, ext = S.r, S.l, S.ext
    blocked = False
    for x in S.with_l.get(lx, ()):
        v = ext[x][b]
        if v == OVERFLOW:
            blocked = True
            continue
        for y in S.left_div.get((c, v), ()):
            if r[y] == r[x] and l[y] == ly:
                return (x, y), blocked
    return None, blocked


def check_C(S: SWindow) -> Verdict:
    """Every pair (b, c) has x, y with xb = yc in the prescribed H-classes."""
    k = len(S)
    witnesses, definite, undecided = [], [], []
    for b in range(k):
        for c in range(k):
            wit, blocked = find_c_witness(S, b, c)
            if wit is not None:
                x, y = wit
                witnesses.append({"b": S.ids[b], "c": S.ids[c], "x": S.ids[x], "y": S.ids[y]})
                continue
            lx, ly = c_profiles(S, b, c)
            if not blocked and max(lx, ly) < S.l_horizon:
                definite.append((b, c))
            else:
                undecided.append((b, c))
    details = {"pairs": k * k, "witnessed": len(witnesses)}
    if definite:
        b, c = definite[0]
        lx, ly = c_profiles(S, b, c)
        details["failing_pairs"] = len(definite)
        return Verdict("C", Status.FAIL, witnesses,
                       {"b": S.ids[b], "c": S.ids[c], "l(x)": lx, "l(y)": ly},
                       limitation="fail-within-window: no multipliers with the required "
                                  "profiles exist among the elements of S",
                       details=details)
    if undecided:
        details["undecided_pairs"] = len(undecided)
        return Verdict("C", Status.UNKNOWN, witnesses,
                       limitation=f"{len(undecided)} pairs without an in-window witness",
                       details=details)
    return Verdict("C", Status.PASS, witnesses, details=details)


def check_straight(S: SWindow, targets) -> Verdict:
    """Every ambient q with indices <= N' is a^-1 b with a, b in S and r(a) = r(b)."""
    if S.mode != REFERENCE:
        raise ModeError("straightness needs a reference-mode window")
    nt = _target_bound(S, targets)
    amb = S.ambient
    found = {}
    for a in range(len(S)):
        ainv = amb.inv(S.ids[a])
        for b in S.with_r[S.r[a]]:
            q = amb.mul(ainv, S.ids[b])
            if q.m <= nt and q.n <= nt and q not in found:
                found[q] = (a, b)
    witnesses, definite, undecided = [], [], []
    for q in amb.elements(nt):
        if q in found:
            a, b = found[q]
            witnesses.append({"target": q, "a": S.ids[a], "b": S.ids[b]})
        # a straight witness has l(a) = m, l(b) = n
        elif max(q.m, q.n) < S.l_horizon:
            definite.append(q)
        else:
            undecided.append(q)
    details = {"targets": len(witnesses) + len(definite) + len(undecided),
               "covered": len(witnesses)}
    if definite:
        details["failing_targets"] = definite
        return Verdict("straight", Status.FAIL, witnesses, {"target": definite[0]},
                       details=details)
    if undecided:
        details["undecided_targets"] = undecided
        return Verdict("straight", Status.UNKNOWN, witnesses,
                       limitation=f"{len(undecided)} targets without an in-window decomposition",
                       details=details)
    return Verdict("straight", Status.PASS, witnesses, details=details)


def check_lclass(S: SWindow, targets) -> Verdict:
    """S meets every L-class L_n, n <= N'."""
    nt = _target_bound(S, targets)
    coverage = l_class_coverage(S)
    witnesses = [{"n": n, "a": S.ids[S.with_l[n][0]]} for n in sorted(coverage)]
    gaps = [n for n in range(nt + 1) if n not in coverage]
    details = {"coverage": sorted(coverage),
               "gaps": [n for n in range(S.bound + 1) if n not in coverage]}
    definite = [n for n in gaps if n < S.l_horizon]
    if definite:
        return Verdict("lclass", Status.FAIL, witnesses, {"n": definite[0]}, details=details)
    if gaps:
        return Verdict("lclass", Status.UNKNOWN, witnesses,
                       limitation=f"L-classes {gaps} not met inside the window",
                       details=details)
    return Verdict("lclass", Status.PASS, witnesses, details=details)


@dataclass
class ConditionReport:
    bound: int
    targets: int
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    @property
    def status(self) -> Status:
        return worst(v.status for v in self.verdicts.values())

    def __getitem__(self, name: str) -> Verdict:
        return self.verdicts[name]

    def to_json(self) -> dict:
        return {
            "window": self.bound,
            "targets": self.targets,
            "status": self.status.value,
            "checks": [v.to_json() for v in self.verdicts.values()],
        }


def verdict(S: SWindow, targets=None, conditions=CONDITIONS) -> ConditionReport:
    nt = default_targets(S.bound) if targets is None else _target_bound(S, targets)
    report = ConditionReport(S.bound, nt)
    for name in CONDITIONS:
        if name not in conditions:
            continue
        if name == "A":
            v = check_A(S, nt)
        elif name == "B(i)":
            v = check_B(S, "i")
        elif name == "B(ii)":
            v = check_B(S, "ii")
        elif name == "C":
            v = check_C(S)
        elif name == "straight":
            if S.mode != REFERENCE:
                continue
            v = check_straight(S, nt)
        else:
            v = check_lclass(S, nt)
        report.verdicts[name] = v
    return report


# -- independent re-evaluation -------------------------------------------

def _product(S: SWindow, u, v):
    """Direct product of two element ids, bypassing the stored codes where possible."""
    if S.mode == REFERENCE:
        return S.ambient.mul(ReillyElement(*u), ReillyElement(*v))
    c = S.ext[S.index[u]][S.index[v]]
    return S.ids[c] if 0 <= c < len(S) else None


def _phi(S: SWindow, u):
    i = S.index[u]
    return (S.r[i], S.l[i])


def recheck(S: SWindow, v: Verdict) -> list[str]:
    """Re-evaluate every witness and counterexample of ``v``; return problems found."""
    problems = []
    name = v.name
    for w in v.witnesses:
        if name == "A":
            got = bicyclic_multiply(bicyclic_invert(_phi(S, w["a"])), _phi(S, w["b"]))
            if tuple(got) != tuple(w["target"]):
                problems.append(f"A witness {w} gives {tuple(got)}")
        elif name == "C":
            b, c, x, y = (w[key] for key in "bcxy")
            lx, ly = c_profiles(S, S.index[b], S.index[c])
            px, py = _phi(S, x), _phi(S, y)
            lhs, rhs = _product(S, x, b), _product(S, y, c)
            if lhs is None or lhs != rhs or px[0] != py[0] or px[1] != lx or py[1] != ly:
                problems.append(f"C witness {w} does not re-evaluate")
        elif name == "straight":
            amb = S.ambient
            a, b = ReillyElement(*w["a"]), ReillyElement(*w["b"])
            if a.m != b.m or amb.mul(amb.inv(a), b) != tuple(w["target"]):
                problems.append(f"straight witness {w} does not re-evaluate")
        elif name == "lclass":
            if _phi(S, w["a"])[1] != w["n"]:
                problems.append(f"lclass witness {w} has the wrong l-value")
    ce = v.counterexample
    if v.status is Status.FAIL and ce is None:
        problems.append(f"{name} fails without a counterexample")
    if ce is not None and name in ("B(i)", "B(ii)"):
        x, y, a = ce["x"], ce["y"], ce["a"]
        px, py, pa = _phi(S, x), _phi(S, y), _phi(S, a)
        if name == "B(i)":
            ok = px[1] >= pa[0] and py[1] >= pa[0]
            lhs, rhs = _product(S, x, a), _product(S, y, a)
        else:
            ok = px[0] >= pa[1] and py[0] >= pa[1]
            lhs, rhs = _product(S, a, x), _product(S, a, y)
        if not (ok and x != y and lhs is not None and lhs == rhs):
            problems.append(f"{name} counterexample {ce} does not re-evaluate")
    elif ce is not None and name == "A":
        target = tuple(ce["target"])
        for a in S.ids:
            for b in S.ids:
                got = bicyclic_multiply(bicyclic_invert(_phi(S, a)), _phi(S, b))
                if tuple(got) == target:
                    problems.append(f"A counterexample {target} has witness ({a},{b})")
    elif ce is not None and name == "C":
        b, c = S.index[ce["b"]], S.index[ce["c"]]
        lx, ly = ce["l(x)"], ce["l(y)"]
        for x in range(len(S)):
            for y in range(len(S)):
                if (S.l[x], S.l[y]) == (lx, ly) and S.r[x] == S.r[y]:
                    if _product(S, S.ids[x], S.ids[b]) == _product(S, S.ids[y], S.ids[c]) \
                            and _product(S, S.ids[x], S.ids[b]) is not None:
                        problems.append(f"C counterexample {ce} has witness")
    elif ce is not None and name == "straight":
        amb = S.ambient
        target = tuple(ce["target"])
        for a in S.ids:
            for b in S.ids:
                if a[0] == b[0] and amb.mul(amb.inv(ReillyElement(*a)), ReillyElement(*b)) == target:
                    problems.append(f"straight counterexample {target} has a decomposition")
    elif ce is not None and name == "lclass":
        if ce["n"] in S.l:
            problems.append(f"lclass counterexample {ce} is covered")
    return problems
