"""Finite groups given by Cayley table, and their endomorphisms."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import EndomorphismError, GroupAxiomError


@dataclass(frozen=True)
class GroupTable:
    """A finite group on ``range(order)``; ``table[i][j]`` is ``i*j``."""

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int) -> int:
        return self.inverse[x]

    def elements(self) -> range:
        return range(self.order)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)


def validate_group(table: Sequence[Sequence[int]], identity: int,
                   inverse: Sequence[int] | None = None) -> GroupTable:
    """Check the group axioms exhaustively and return a :class:`GroupTable`.

    ``inverse`` may be omitted, in which case it is read off the table.
    Raises :class:`GroupAxiomError` naming the first violated axiom and the
    witnessing element(s). Checks run in the order: shape, range, identity,
    inverse, associativity.
    """
    order = len(table)
    if order == 0:
        raise GroupAxiomError("group must have at least one element")
    rows = []
    for i, row in enumerate(table):
        if len(row) != order:
            raise GroupAxiomError(f"table row {i} has length {len(row)}, expected {order}")
        rows.append(tuple(int(v) for v in row))
    for i, j in itertools.product(range(order), repeat=2):
        if not 0 <= rows[i][j] < order:
            raise GroupAxiomError(f"out-of-range entry {rows[i][j]} at ({i},{j})")
    if not 0 <= identity < order:
        raise GroupAxiomError(f"identity {identity} out of range")

    e = identity
    for x in range(order):
        if rows[e][x] != x or rows[x][e] != x:
            raise GroupAxiomError(f"identity axiom violated at x={x}")

    if inverse is None:
        inv = []
        for x in range(order):
            found = [y for y in range(order) if rows[x][y] == e and rows[y][x] == e]
            if not found:
                raise GroupAxiomError(f"inverse axiom violated at x={x}: no inverse exists")
            inv.append(found[0])
    else:
        if len(inverse) != order:
            raise GroupAxiomError(f"inverse array has length {len(inverse)}, expected {order}")
        inv = [int(v) for v in inverse]
        for x in range(order):
            y = inv[x]
            if not 0 <= y < order:
                raise GroupAxiomError(f"out-of-range inverse {y} for x={x}")
            if rows[x][y] != e or rows[y][x] != e:
                raise GroupAxiomError(f"inverse axiom violated at x={x}")

    for x, y, z in itertools.product(range(order), repeat=3):
        if rows[rows[x][y]][z] != rows[x][rows[y][z]]:
            raise GroupAxiomError(f"associativity violated at (x,y,z)=({x},{y},{z})")

    return GroupTable(order, tuple(rows), e, tuple(inv))


@dataclass(frozen=True)
class Endomorphism:
    """A homomorphism ``G -> G`` stored as an index map.

    Powers are memoised as full maps; the cache is private and does not
    take part in equality.
    """

    map: tuple[int, ...]
    _powers: list = field(default_factory=list, init=False, repr=False, compare=False)

    def __post_init__(self):
        self._powers.append(tuple(range(len(self.map))))

    def power_map(self, t: int) -> tuple[int, ...]:
        if t < 0:
            raise ValueError(f"negative exponent {t}")
        powers = self._powers
        while len(powers) <= t:
            last = powers[-1]
            powers.append(tuple(self.map[v] for v in last))
        return powers[t]

    def power_table(self, tmax: int) -> np.ndarray:
        """Array ``P`` with ``P[t, g]`` the image of ``g`` under the ``t``-th power."""
        self.power_map(tmax)
        return np.asarray(self._powers[: tmax + 1], dtype=np.int64)

    def __call__(self, g: int) -> int:
        return self.map[g]


def validate_endomorphism(group: GroupTable, mapping: Sequence[int]) -> Endomorphism:
    if len(mapping) != group.order:
        raise EndomorphismError(f"map has length {len(mapping)}, expected {group.order}")
    m = tuple(int(v) for v in mapping)
    for x, v in enumerate(m):
        if not 0 <= v < group.order:
            raise EndomorphismError(f"out-of-range image {v} for x={x}")
    for x, y in itertools.product(range(group.order), repeat=2):
        if m[group.mul(x, y)] != group.mul(m[x], m[y]):
            raise EndomorphismError(f"homomorphism law violated at (x,y)=({x},{y})")
    return Endomorphism(m)


def endo_power(theta: Endomorphism, t: int, g: int) -> int:
    if t < 0:
        raise ValueError(f"negative exponent {t}")
    if not 0 <= g < len(theta.map):
        raise ValueError(f"element {g} out of range")
    return theta.power_map(t)[g]


def cyclic_group(n: int) -> GroupTable:
    """Additive Z_n with identity 0."""
    return validate_group([[(i + j) % n for j in range(n)] for i in range(n)], 0)


def trivial_group() -> GroupTable:
    return cyclic_group(1)


def identity_endomorphism(group: GroupTable) -> Endomorphism:
    return Endomorphism(tuple(range(group.order)))


def scaling_endomorphism(n: int, k: int) -> Endomorphism:
    """g -> k*g on Z_n."""
    return validate_endomorphism(cyclic_group(n), [(k * g) % n for g in range(n)])
