"""Finite semigroups given by Cayley tables.

Elements are the dense indices ``0..n-1``; ``table[x][y]`` is the index of
``x*y``.  Everything here is immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .errors import (
    EntryOutOfRangeError,
    NonAssociativeError,
    NonCentralZ0Error,
    NonSquareError,
    OrderCapExceededError,
)

DEFAULT_MAX_ORDER = 12


@dataclass(frozen=True)
class ElementProfile:
    """Index ``k`` and period ``r`` of an element: minimal with x^(k+r) = x^k."""

    element: int
    index_k: int
    period_r: int


@dataclass(frozen=True)
class Semigroup:
    table: tuple[tuple[int, ...], ...]
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def product(self, *xs: int) -> int:
        """Left-to-right product of one or more elements."""
        acc = xs[0]
        for x in xs[1:]:
            acc = self.table[acc][x]
        return acc

    def power(self, x: int, k: int) -> int:
        if k < 1:
            raise ValueError("semigroup powers start at 1")
        acc = x
        for _ in range(k - 1):
            acc = self.table[acc][x]
        return acc

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.intp).reshape(self.order, self.order)
        arr.setflags(write=False)
        return arr

    @cached_property
    def is_abelian(self) -> bool:
        a = self.array
        return bool(np.array_equal(a, a.T))

    @cached_property
    def center(self) -> tuple[int, ...]:
        return center(self)

    @cached_property
    def identity(self) -> Optional[int]:
        return find_identity(self)

    @property
    def is_monoid(self) -> bool:
        return self.identity is not None

    @cached_property
    def profiles(self) -> tuple[ElementProfile, ...]:
        return tuple(element_profile(self, x) for x in range(self.order))

    def check_central(self, z0: int) -> int:
        if not 0 <= z0 < self.order or z0 not in self.center:
            raise NonCentralZ0Error(z0)
        return z0

    def relabel(self, perm: Sequence[int]) -> "Semigroup":
        """Isomorphic copy in which old element ``x`` is called ``perm[x]``."""
        n = self.order
        inv = [0] * n
        for old, new in enumerate(perm):
            inv[new] = old
        table = tuple(
            tuple(perm[self.table[inv[a]][inv[b]]] for b in range(n)) for a in range(n)
        )
        return Semigroup(table, self.name + "'")

    def to_dict(self) -> dict:
        return {"name": self.name, "order": self.order, "table": [list(r) for r in self.table]}


def validate_semigroup(
    raw_table: Sequence[Sequence[int]], name: str = "", max_order: int = DEFAULT_MAX_ORDER
) -> Semigroup:
    """Check shape, range and associativity, and return a :class:`Semigroup`.

    The associativity scan visits triples in lexicographic ``(x, y, z)`` order
    and reports the first failure.
    """
    n = len(raw_table)
    if n == 0:
        raise NonSquareError("empty table")
    for x, row in enumerate(raw_table):
        if len(row) != n:
            raise NonSquareError(f"row {x} has length {len(row)}, expected {n}")
    if n > max_order:
        raise OrderCapExceededError(f"order {n} exceeds cap {max_order}")
    for x, row in enumerate(raw_table):
        for y, v in enumerate(row):
            if isinstance(v, bool) or int(v) != v or not 0 <= v < n:
                raise EntryOutOfRangeError(x, y, v)
    t = np.array(raw_table, dtype=np.intp)
    left = t[t]  # left[x, y, z] = table[table[x][y]][z]
    right = t[:, t]  # right[x, y, z] = table[x][table[y][z]]
    bad = np.argwhere(left != right)
    if len(bad):
        raise NonAssociativeError(*(int(v) for v in bad[0]))
    table = tuple(tuple(int(v) for v in row) for row in raw_table)
    return Semigroup(table, name)


def center(s: Semigroup) -> tuple[int, ...]:
    a = s.array
    commutes = a == a.T
    return tuple(int(z) for z in np.flatnonzero(commutes.all(axis=1)))


def element_profile(s: Semigroup, x: int) -> ElementProfile:
    seen: dict[int, int] = {}
    p, k = x, 1
    while p not in seen:
        seen[p] = k
        p = s.table[p][x]
        k += 1
    first = seen[p]
    return ElementProfile(x, first, k - first)


def find_identity(s: Semigroup) -> Optional[int]:
    a = s.array
    idx = np.arange(s.order)
    for e in range(s.order):
        if np.array_equal(a[e], idx) and np.array_equal(a[:, e], idx):
            return e
    return None
