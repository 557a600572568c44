"""Involutive (anti-)automorphisms and multiplicative functions into C.

A nonzero value of a multiplicative function on a finite semigroup is a root
of unity, so characters are stored exactly: each value is ``None`` (zero) or a
``Fraction`` q in [0, 1) standing for exp(2*pi*i*q).  Complex numbers appear
only when a character is evaluated.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Literal, Optional, Sequence, Union

import numpy as np

from .errors import NonCentralZ0Error, OrderCapExceededError, ParseError
from .semigroup import DEFAULT_MAX_ORDER, Semigroup

Kind = Literal["automorphism", "anti-automorphism"]
Exact = Optional[Fraction]

_QUARTER = (1 + 0j, 1j, -1 + 0j, -1j)


def exact_mul(a: Exact, b: Exact) -> Exact:
    if a is None or b is None:
        return None
    return (a + b) % 1


def exact_neg(a: Exact) -> Exact:
    if a is None:
        return None
    return (a + Fraction(1, 2)) % 1


def exact_to_complex(a: Exact) -> complex:
    if a is None:
        return 0j
    if (4 * a).denominator == 1:
        return _QUARTER[int(4 * a)]
    return cmath.exp(2j * math.pi * a)


@dataclass(frozen=True)
class InvolutiveMorphism:
    map: tuple[int, ...]
    kind: Kind = "automorphism"

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __len__(self) -> int:
        return len(self.map)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.map, dtype=np.intp)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "map": list(self.map)}

    @classmethod
    def from_dict(cls, d: dict) -> "InvolutiveMorphism":
        try:
            kind = d["kind"]
            if kind not in ("automorphism", "anti-automorphism"):
                raise ParseError(f"unknown morphism kind {kind!r}")
            return cls(tuple(int(v) for v in d["map"]), kind)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad morphism record: {exc}") from exc


def is_involutive_morphism(s: Semigroup, perm: Sequence[int], kind: Kind) -> bool:
    t = np.asarray(perm, dtype=np.intp)
    n = s.order
    if t.shape != (n,) or sorted(t.tolist()) != list(range(n)):
        return False
    if not np.array_equal(t[t], np.arange(n)):
        return False
    a = s.array
    if kind == "automorphism":
        return bool(np.array_equal(t[a], a[t][:, t]))
    return bool(np.array_equal(t[a], a[t][:, t].T))


def enumerate_involutive_morphisms(
    s: Semigroup, kind: Kind = "automorphism", max_order: int = DEFAULT_MAX_ORDER
) -> list[InvolutiveMorphism]:
    """All involutive morphisms of the given kind, in lexicographic one-line order.

    Abelian semigroups have one law for both kinds; the list is then tagged
    ``automorphism`` whatever ``kind`` was asked for.
    """
    n = s.order
    if n > max_order:
        raise OrderCapExceededError(f"order {n} exceeds cap {max_order}")
    if s.is_abelian:
        kind = "automorphism"
    anti = kind == "anti-automorphism"
    table = s.table
    profile = [(p.index_k, p.period_r) for p in s.profiles]
    tau = [-1] * n
    out: list[InvolutiveMorphism] = []

    def consistent() -> bool:
        for x in range(n):
            tx = tau[x]
            if tx < 0:
                continue
            for y in range(n):
                ty = tau[y]
                if ty < 0:
                    continue
                t_xy = tau[table[x][y]]
                if t_xy < 0:
                    continue
                want = table[ty][tx] if anti else table[tx][ty]
                if t_xy != want:
                    return False
        return True

    def extend() -> None:
        try:
            x = tau.index(-1)
        except ValueError:
            out.append(InvolutiveMorphism(tuple(tau), kind))
            return
        for y in range(x, n):
            if tau[y] != -1 or profile[y] != profile[x]:
                continue
            tau[x], tau[y] = y, x
            if consistent():
                extend()
            tau[x] = tau[y] = -1

    extend()
    return out


def all_involutions(s: Semigroup) -> list[InvolutiveMorphism]:
    """Automorphisms followed by anti-automorphisms; the index space used by the CLI."""
    out = enumerate_involutive_morphisms(s, "automorphism")
    if not s.is_abelian:
        out += enumerate_involutive_morphisms(s, "anti-automorphism")
    return out


@dataclass(frozen=True)
class Character:
    """Multiplicative function S -> C with exact root-of-unity values."""

    exact: tuple[Exact, ...]

    def __len__(self) -> int:
        return len(self.exact)

    def __call__(self, x: int) -> complex:
        return exact_to_complex(self.exact[x])

    @property
    def values(self) -> np.ndarray:
        return np.array([exact_to_complex(a) for a in self.exact], dtype=complex)

    @property
    def is_zero(self) -> bool:
        return all(a is None for a in self.exact)

    @property
    def nowhere_zero(self) -> bool:
        return all(a is not None for a in self.exact)

    @property
    def common_order(self) -> int:
        return reduce(math.lcm, (a.denominator for a in self.exact if a is not None), 1)

    def sort_key(self) -> tuple:
        return tuple((0, 0) if a is None else (a.denominator, a.numerator) for a in self.exact)

    def is_multiplicative(self, s: Semigroup) -> bool:
        n = s.order
        return all(
            self.exact[s.table[x][y]] == exact_mul(self.exact[x], self.exact[y])
            for x in range(n)
            for y in range(n)
        )

    def to_dict(self) -> dict:
        vals = self.values
        return {
            "values": [[float(v.real), float(v.imag)] for v in vals],
            "exact": [
                {"zero": True, "order": 1, "exp": 0}
                if a is None
                else {"zero": False, "order": a.denominator, "exp": a.numerator}
                for a in self.exact
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Character":
        try:
            exact = tuple(
                None if e["zero"] else Fraction(int(e["exp"]), int(e["order"])) % 1
                for e in d["exact"]
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad character record: {exc}") from exc
        return cls(exact)

    @classmethod
    def constant_one(cls, n: int) -> "Character":
        return cls((Fraction(0),) * n)


class _Unset:
    def __repr__(self) -> str:
        return "UNSET"


_UNSET = _Unset()


def _candidates(s: Semigroup) -> list[list[Exact]]:
    out = []
    for p in s.profiles:
        r = p.period_r
        out.append([None] + [Fraction(j, r) for j in range(r)])
    return out


def enumerate_characters(s: Semigroup) -> list[Character]:
    """Every multiplicative function S -> C, the zero function included.

    Backtracking in element order; once two assigned elements have an
    unassigned product, that product's value is forced.
    """
    return list(_characters(s))


@lru_cache(maxsize=64)
def _characters(s: Semigroup) -> tuple[Character, ...]:
    n = s.order
    table = s.table
    cands = _candidates(s)
    allowed = [set(c) for c in cands]
    found: list[Character] = []

    def close(vals: list) -> Optional[list]:
        vals = list(vals)
        changed = True
        while changed:
            changed = False
            for x in range(n):
                if vals[x] is _UNSET:
                    continue
                for y in range(n):
                    if vals[y] is _UNSET:
                        continue
                    v = exact_mul(vals[x], vals[y])
                    xy = table[x][y]
                    if vals[xy] is _UNSET:
                        if v not in allowed[xy]:
                            return None
                        vals[xy] = v
                        changed = True
                    elif vals[xy] != v:
                        return None
        return vals

    def extend(vals: list) -> None:
        try:
            x = vals.index(_UNSET)
        except ValueError:
            found.append(Character(tuple(vals)))
            return
        for c in cands[x]:
            trial = list(vals)
            trial[x] = c
            closed = close(trial)
            if closed is not None:
                extend(closed)

    extend([_UNSET] * n)
    found.sort(key=Character.sort_key)
    return tuple(found)


def admissible_mus(s: Semigroup, tau: InvolutiveMorphism) -> list[Character]:
    """Characters with mu(x) mu(tau(x)) = 1 for all x, in enumeration order."""
    zero = Fraction(0)
    return [
        chi
        for chi in enumerate_characters(s)
        if all(exact_mul(chi.exact[x], chi.exact[tau(x)]) == zero for x in range(s.order))
    ]


def sign_condition(
    chi: Character,
    tau: InvolutiveMorphism,
    mu: Character,
    z0: int,
    sign: Literal["plus", "minus"],
    s: Optional[Semigroup] = None,
) -> bool:
    """Exact test of mu(z0) chi(tau(z0)) = +chi(z0) or -chi(z0)."""
    if s is not None:
        s.check_central(z0)
    elif not 0 <= z0 < len(chi):
        raise NonCentralZ0Error(z0)
    lhs = exact_mul(mu.exact[z0], chi.exact[tau(z0)])
    rhs = chi.exact[z0]
    if sign == "minus":
        rhs = exact_neg(rhs)
    elif sign != "plus":
        raise ValueError(f"sign must be 'plus' or 'minus', not {sign!r}")
    return lhs == rhs


MuLike = Union[Character, Sequence[complex], np.ndarray]
TauLike = Union[InvolutiveMorphism, Sequence[int], np.ndarray]


def as_values(mu: MuLike) -> np.ndarray:
    if isinstance(mu, Character):
        return mu.values
    return np.asarray(mu, dtype=complex)


def as_map(tau: TauLike) -> np.ndarray:
    if isinstance(tau, InvolutiveMorphism):
        return tau.array
    return np.asarray(tau, dtype=np.intp)
