"""The bisimple inverse omega-semigroup S(G, theta) on N0 x G x N0.

Elements are plain triples; the ambient group and endomorphism are passed
explicitly. The bicyclic monoid is the case of the trivial group.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .group import Endomorphism, GroupTable, identity_endomorphism, trivial_group


class ReillyElement(NamedTuple):
    m: int
    g: int
    n: int


class BicyclicElement(NamedTuple):
    m: int
    n: int


class HClassIndex(NamedTuple):
    row: int
    column: int


def multiply(x: ReillyElement, y: ReillyElement, group: GroupTable,
             theta: Endomorphism) -> ReillyElement:
    m, g, n = x
    p, h, q = y
    t = n if n > p else p
    gg = theta.power_map(t - n)[g]
    hh = theta.power_map(t - p)[h]
    return ReillyElement(m - n + t, group.table[gg][hh], q - p + t)


def invert(x: ReillyElement, group: GroupTable) -> ReillyElement:
    m, g, n = x
    return ReillyElement(n, group.inverse[g], m)


def bicyclic_multiply(x, y) -> BicyclicElement:
    m, n = x
    p, q = y
    t = max(n, p)
    return BicyclicElement(m - n + t, q - p + t)


def bicyclic_invert(x) -> BicyclicElement:
    return BicyclicElement(x[1], x[0])


def h_class_product(x: HClassIndex, y: HClassIndex) -> HClassIndex:
    """Index of the H-class containing H_x H_y."""
    return HClassIndex(*bicyclic_multiply(x, y))


def green(x: ReillyElement, y: ReillyElement, relation: str) -> bool:
    if relation == "R":
        return x.m == y.m
    if relation == "L":
        return x.n == y.n
    if relation == "H":
        return x.m == y.m and x.n == y.n
    if relation == "D":
        # single D-class: (m,g,n) R (m,1,k) L (p,h,k) for any k
        return True
    raise ValueError(f"unknown Green's relation {relation!r}")


def to_bicyclic(x: ReillyElement) -> BicyclicElement:
    return BicyclicElement(x.m, x.n)


def idempotent(m: int, group: GroupTable) -> ReillyElement:
    return ReillyElement(m, group.identity, m)


def idempotent_leq(m: int, n: int) -> bool:
    """e_m <= e_n in the natural partial order."""
    return m >= n


def is_idempotent(x: ReillyElement, group: GroupTable) -> bool:
    return x.m == x.n and x.g == group.identity


@dataclass(frozen=True)
class Reilly:
    """Convenience bundle of ``(G, theta)`` with bound operations."""

    group: GroupTable
    theta: Endomorphism

    @classmethod
    def bicyclic(cls) -> "Reilly":
        g = trivial_group()
        return cls(g, identity_endomorphism(g))

    @property
    def is_bicyclic(self) -> bool:
        return self.group.order == 1

    def mul(self, x, y):
        """Product; over the trivial group ``(m, n)`` pairs are accepted too."""
        if len(x) == 2 and len(y) == 2 and self.is_bicyclic:
            return bicyclic_multiply(x, y)
        return multiply(x, y, self.group, self.theta)

    def inv(self, x):
        if len(x) == 2 and self.is_bicyclic:
            return bicyclic_invert(x)
        return invert(x, self.group)

    def element(self, x) -> ReillyElement:
        """Coerce a triple, or an ``(m, n)`` pair over the trivial group."""
        if len(x) == 2:
            if not self.is_bicyclic:
                raise ValueError(f"pair {tuple(x)} needs the trivial group")
            return ReillyElement(x[0], 0, x[1])
        return ReillyElement(*x)

    def one(self, m: int = 0) -> ReillyElement:
        return idempotent(m, self.group)

    def elements(self, bound: int) -> list[ReillyElement]:
        """All elements with both indices <= bound, in lexicographic order."""
        return [ReillyElement(m, g, n)
                for m in range(bound + 1)
                for g in range(self.group.order)
                for n in range(bound + 1)]

    def multiply_arrays(self, x, y):
        """Vectorised product over broadcastable integer arrays.

        ``x`` and ``y`` are ``(m, g, n)`` tuples of arrays. Exponents are
        bounded by the largest index present.
        """
        m, g, n = (np.asarray(a, dtype=np.int64) for a in x)
        p, h, q = (np.asarray(a, dtype=np.int64) for a in y)
        t = np.maximum(n, p)
        tmax = int(max(t.max(initial=0), 0))
        powers = self.theta.power_table(tmax)
        gg = powers[t - n, g]
        hh = powers[t - p, h]
        table = self.group.as_array()
        return m - n + t, table[gg, hh], q - p + t
