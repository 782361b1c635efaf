"""Window-bounded views of a candidate left I-order S.

An :class:`SWindow` holds the elements of S whose bicyclic profile
``(r(a), l(a))`` has both coordinates ``<= N``, together with their
products. Products are stored as integer *codes*: ``0 <= code < len(S)``
is an in-window element, ``code >= len(S)`` (reference mode only) is an
ambient element of S(G, theta) outside the window, and ``OVERFLOW`` (-1)
is a product whose value is not known.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import ProfileError, WindowError
from .reilly import BicyclicElement, Reilly, ReillyElement, bicyclic_multiply

REFERENCE = "reference"
ABSTRACT = "abstract"
OVERFLOW = -1


@dataclass(frozen=True)
class Window:
    bound: int

    def __post_init__(self):
        if self.bound < 0:
            raise WindowError(f"window bound must be >= 0, got {self.bound}")

    def contains(self, r: int, l: int) -> bool:
        return r <= self.bound and l <= self.bound


class IndexProfile(BicyclicElement):
    """``(r(a), l(a))``: the image of ``a`` in the bicyclic monoid."""

    @property
    def r(self) -> int:
        return self.m

    @property
    def l(self) -> int:
        return self.n


@dataclass(frozen=True, eq=False)
class SWindow:
    mode: str
    bound: int
    ids: tuple
    r: tuple[int, ...]
    l: tuple[int, ...]
    ext: tuple[tuple[int, ...], ...]
    outer: tuple = ()
    generators: tuple[int, ...] = ()
    ambient: Reilly | None = None
    # every element of S outside the window has l(a) >= l_horizon
    l_horizon: float = 0

    def __len__(self) -> int:
        return len(self.ids)

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.ids)}

    def profile(self, i: int) -> IndexProfile:
        return IndexProfile(self.r[i], self.l[i])

    def product(self, i: int, j: int) -> int | None:
        """The window-partial product: an element index, or None on overflow."""
        c = self.ext[i][j]
        return c if 0 <= c < len(self.ids) else None

    @cached_property
    def overflow(self) -> frozenset:
        k = len(self.ids)
        return frozenset((i, j) for i in range(k) for j in range(k)
                         if not 0 <= self.ext[i][j] < k)

    @property
    def complete(self) -> bool:
        """True when the stored products determine S entirely."""
        return math.isinf(self.l_horizon)

    def same(self, u: int, v: int) -> bool | None:
        """Equality of two product codes; None when neither is known."""
        if u == OVERFLOW or v == OVERFLOW:
            if u == v:
                return None
            return False
        return u == v

    def decode(self, code: int):
        k = len(self.ids)
        if 0 <= code < k:
            return self.ids[code]
        if code >= k:
            return self.outer[code - k]
        return None

    def in_window(self, code: int) -> bool:
        return 0 <= code < len(self.ids)

    @cached_property
    def hclass(self) -> dict[tuple[int, int], tuple[int, ...]]:
        h = defaultdict(list)
        for i in range(len(self.ids)):
            h[(self.r[i], self.l[i])].append(i)
        return {key: tuple(v) for key, v in h.items()}

    def H(self, r: int, l: int) -> tuple[int, ...]:
        return self.hclass.get((r, l), ())

    @cached_property
    def r_values(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.r)))

    @cached_property
    def with_l(self) -> dict[int, tuple[int, ...]]:
        out = defaultdict(list)
        for i, v in enumerate(self.l):
            out[v].append(i)
        return {key: tuple(v) for key, v in out.items()}

    @cached_property
    def with_r(self) -> dict[int, tuple[int, ...]]:
        out = defaultdict(list)
        for i, v in enumerate(self.r):
            out[v].append(i)
        return {key: tuple(v) for key, v in out.items()}

    @cached_property
    def left_div(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """``(c, code) -> all y with y*c == code`` (known codes only)."""
        out = defaultdict(list)
        for y, row in enumerate(self.ext):
            for c, code in enumerate(row):
                if code != OVERFLOW:
                    out[(c, code)].append(y)
        return {key: tuple(v) for key, v in out.items()}

    @cached_property
    def right_div(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """``(y, code) -> all c with y*c == code`` (known codes only)."""
        out = defaultdict(list)
        for y, row in enumerate(self.ext):
            for c, code in enumerate(row):
                if code != OVERFLOW:
                    out[(y, code)].append(c)
        return {key: tuple(v) for key, v in out.items()}

    def mul3(self, a: int, b: int, c: int):
        """A comparable key for ``(ab)c``, or None if it cannot be evaluated."""
        ab = self.ext[a][b]
        if self.mode == REFERENCE:
            amb = self.ambient
            return amb.mul(self.decode(ab), self.ids[c])
        if not self.in_window(ab):
            return None
        abc = self.ext[ab][c]
        return None if abc == OVERFLOW else abc

    def fmt(self, i: int) -> str:
        return format_element(self.ids[i], self.ambient)


def format_element(e, ambient: Reilly | None = None) -> str:
    if isinstance(e, tuple):
        if ambient is not None and ambient.is_bicyclic:
            return f"({e[0]},{e[2]})"
        return "(" + ",".join(str(v) for v in e) + ")"
    return str(e)


def element_json(e, ambient: Reilly | None = None):
    if isinstance(e, tuple):
        if ambient is not None and ambient.is_bicyclic:
            return [e[0], e[2]]
        return list(e)
    return e


def _reference_window(elements: Iterable[ReillyElement], reilly: Reilly, bound: int,
                      generators: Sequence[ReillyElement], l_monotone: bool) -> SWindow:
    ids = tuple(sorted(elements))
    index = {e: i for i, e in enumerate(ids)}
    k = len(ids)
    outer: list[ReillyElement] = []
    outer_code: dict[ReillyElement, int] = {}
    ext = []
    for x in ids:
        row = []
        for y in ids:
            p = reilly.mul(x, y)
            code = index.get(p)
            if code is None:
                code = outer_code.get(p)
                if code is None:
                    code = k + len(outer)
                    outer_code[p] = code
                    outer.append(p)
            row.append(code)
        ext.append(tuple(row))
    if not outer:
        l_horizon = math.inf
    else:
        l_horizon = bound + 1 if l_monotone else 0
    return SWindow(
        mode=REFERENCE, bound=bound, ids=ids,
        r=tuple(e.m for e in ids), l=tuple(e.n for e in ids),
        ext=tuple(ext), outer=tuple(outer),
        generators=tuple(sorted(index[g] for g in set(generators))),
        ambient=reilly, l_horizon=l_horizon,
    )


def close_generators(gens: Sequence, reilly: Reilly, window: Window | int) -> SWindow:
    """The closure of ``gens`` under products that stay inside the window.

    Intermediate products that leave the window are not used to build
    further elements; they show up as out-of-window codes in ``ext``.
    """
    if isinstance(window, int):
        window = Window(window)
    N = window.bound
    gens = [reilly.element(g) for g in gens]
    for g in gens:
        if not window.contains(g.m, g.n):
            raise WindowError(f"generator {format_element(g)} lies outside window N={N}")
        if not 0 <= g.g < reilly.group.order:
            raise WindowError(f"generator {format_element(g)} has an invalid group element")
    cap = (N + 1) ** 2 * reilly.group.order
    elements = set(gens)
    work = deque(sorted(elements))
    while work:
        x = work.popleft()
        for y in sorted(elements):
            for p in (reilly.mul(x, y), reilly.mul(y, x)):
                if window.contains(p.m, p.n) and p not in elements:
                    elements.add(p)
                    work.append(p)
        if len(elements) > cap:
            raise RuntimeError("closure exceeded the number of in-window elements")

    # l - r is additive along products and l(xy) >= l(y); when every
    # generator has l >= r, l never decreases, so nothing outside the
    # window has l <= N and no in-window element is reached through an
    # out-of-window intermediate.
    l_monotone = all(g.n >= g.m for g in gens)
    return _reference_window(elements, reilly, N, gens, l_monotone)


def reference_window(elements: Iterable, reilly: Reilly, window: Window | int) -> SWindow:
    """Wrap an explicit in-window element set (checked for closure)."""
    bound = window.bound if isinstance(window, Window) else window
    w = Window(bound)
    els = {reilly.element(e) for e in elements}
    for x in els:
        if not w.contains(x.m, x.n):
            raise WindowError(f"element {format_element(x)} lies outside window N={bound}")
    for x, y in itertools.product(els, repeat=2):
        p = reilly.mul(x, y)
        if w.contains(p.m, p.n) and p not in els:
            raise WindowError(f"not closed: {format_element(x)}*{format_element(y)} "
                              f"= {format_element(p)} missing")
    return _reference_window(els, reilly, bound, sorted(els), False)


def load_abstract(elements: Sequence[tuple[Hashable, tuple[int, int]]],
                  products: Mapping[tuple[Hashable, Hashable], Hashable],
                  window: Window | int) -> SWindow:
    """Build an abstract-mode window from labelled profiles and a product table.

    ``products`` maps ``(u, v)`` to a label, or to ``OVERFLOW``; missing
    pairs are treated as overflow. Raises :class:`ProfileError` when the
    profiles do not form a homomorphism onto the bicyclic monoid.
    """
    bound = window.bound if isinstance(window, Window) else window
    w = Window(bound)
    labels = [lab for lab, _ in elements]
    if len(set(labels)) != len(labels):
        raise ProfileError("duplicate element label")
    index = {lab: i for i, lab in enumerate(labels)}
    r, l = [], []
    for lab, (pr, pl) in elements:
        if pr < 0 or pl < 0:
            raise ProfileError(f"negative profile for {lab}")
        if not w.contains(pr, pl):
            raise WindowError(f"element {lab} with profile ({pr},{pl}) lies outside window N={bound}")
        r.append(pr)
        l.append(pl)
    k = len(labels)
    ext = [[OVERFLOW] * k for _ in range(k)]
    for (u, v), c in products.items():
        for lab in (u, v):
            if lab not in index:
                raise ProfileError(f"undeclared element {lab!r} in product table")
        if c == OVERFLOW or c is None:
            continue
        if c not in index:
            raise ProfileError(f"undeclared element {c!r} in product {u}*{v}")
        ext[index[u]][index[v]] = index[c]
    for i, j in itertools.product(range(k), repeat=2):
        c = ext[i][j]
        if c == OVERFLOW:
            continue
        expect = bicyclic_multiply((r[i], l[i]), (r[j], l[j]))
        if (r[c], l[c]) != tuple(expect):
            raise ProfileError(
                f"profile mismatch at ({labels[i]},{labels[j]}): expected "
                f"({expect[0]},{expect[1]}), {labels[c]} has ({r[c]},{l[c]})")
    for i, j, h in itertools.product(range(k), repeat=3):
        ij, jh = ext[i][j], ext[j][h]
        if ij == OVERFLOW or jh == OVERFLOW:
            continue
        left, right = ext[ij][h], ext[i][jh]
        if left != OVERFLOW and right != OVERFLOW and left != right:
            raise ProfileError(f"associativity violated at ({labels[i]},{labels[j]},{labels[h]})")
    total = all(c != OVERFLOW for row in ext for c in row)
    return SWindow(
        mode=ABSTRACT, bound=bound, ids=tuple(labels), r=tuple(r), l=tuple(l),
        ext=tuple(tuple(row) for row in ext), l_horizon=math.inf if total else 0,
    )


def l_class_coverage(S: SWindow, window: Window | int | None = None) -> frozenset[int]:
    bound = S.bound if window is None else (window.bound if isinstance(window, Window) else window)
    return frozenset(v for v in S.l if v <= bound)


def window_invariants(S: SWindow) -> list[str]:
    """Re-derive the structural invariants of ``S``; returns the violations found."""
    problems = []
    k = len(S)
    for i in range(k):
        for j in range(k):
            code = S.ext[i][j]
            if code == OVERFLOW:
                continue
            if S.mode == REFERENCE:
                want = S.ambient.mul(S.ids[i], S.ids[j])
                if S.decode(code) != want:
                    problems.append(f"stored product {S.fmt(i)}*{S.fmt(j)} differs from multiply")
                if S.bound >= max(want.m, want.n) and not S.in_window(code):
                    problems.append(f"in-window product {S.fmt(i)}*{S.fmt(j)} missing from S")
                prof = (want.m, want.n)
            else:
                prof = (S.r[code], S.l[code])
            if tuple(bicyclic_multiply(S.profile(i), S.profile(j))) != prof:
                problems.append(f"profile of {S.fmt(i)}*{S.fmt(j)} is not the bicyclic product")
    if S.mode == REFERENCE:
        for i, e in enumerate(S.ids):
            if (S.r[i], S.l[i]) != (e.m, e.n):
                problems.append(f"profile of {S.fmt(i)} is not its bicyclic image")
    return problems
