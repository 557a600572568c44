"""Closed-form solutions built from multiplicative functions, and the T transform.

For the plus-signed equations the nonzero solutions come as

    f = chi(z0) * (chi + mu * chi o tau) / 2,   mu(z0) chi(tau(z0)) =  chi(z0)

and for the minus-signed ones as

    f = chi(z0) * (mu * chi o tau - chi) / 2,   mu(z0) chi(tau(z0)) = -chi(z0)

with chi(z0) != 0.  When tau is an anti-automorphism of a non-abelian
semigroup, the plus-signed solutions are instead g(z0) * g for d'Alembert
solutions g in class A; that pool is taken from the eigen-oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .equations import (
    DEDUP_TOL,
    DEFAULT_TOL,
    EquationSpec,
    Z0_FAMILIES,
    class_membership,
    residual,
)
from .errors import (
    ResidualCheckFailedError,
    SignConditionFailedError,
    UnknownFamilyError,
    ZeroAtZ0Error,
)
from .morphisms import (
    Character,
    InvolutiveMorphism,
    MuLike,
    enumerate_characters,
    is_involutive_morphism,
    sign_condition,
)
from .oracle import dedup_key, solve_all
from .semigroup import Semigroup


@dataclass
class ClassifiedSolution:
    f: np.ndarray
    family: str
    provenance: dict = field(default_factory=dict)
    residual: float = 0.0

    def key(self) -> tuple:
        return dedup_key(self.f)

    def to_dict(self) -> dict:
        return {
            "f": [[float(v.real), float(v.imag)] for v in self.f],
            "family": self.family,
            "provenance": self.provenance,
            "residual": self.residual,
        }


def _z0_family(family) -> EquationSpec:
    spec = EquationSpec.of(family)
    if spec.family not in Z0_FAMILIES:
        raise UnknownFamilyError(f"no closed-form solutions for {spec.family!r}")
    return spec


def char_formula(chi: Character, tau, mu: MuLike, z0: int, vanvleck: bool) -> np.ndarray:
    """The formula alone, without preconditions or verification."""
    c = chi.values
    m = mu.values if isinstance(mu, Character) else np.asarray(mu, dtype=complex)
    t = tau.array if isinstance(tau, InvolutiveMorphism) else np.asarray(tau, dtype=np.intp)
    twisted = m * c[t]
    return c[z0] * ((twisted - c) if vanvleck else (c + twisted)) / 2 + 0.0


def build_char_solution(
    chi: Character,
    tau: InvolutiveMorphism,
    mu: Character,
    z0: int,
    family: str,
    s: Semigroup,
    tol: float = DEFAULT_TOL,
    index: Optional[int] = None,
) -> ClassifiedSolution:
    spec = _z0_family(family)
    s.check_central(z0)
    if chi.exact[z0] is None:
        raise ZeroAtZ0Error("chi(z0) = 0")
    sign = "minus" if spec.is_vanvleck else "plus"
    if not sign_condition(chi, tau, mu, z0, sign):
        raise SignConditionFailedError(
            f"mu(z0) chi(tau(z0)) != {'-' if spec.is_vanvleck else ''}chi(z0)"
        )
    f = char_formula(chi, tau, mu, z0, spec.is_vanvleck)
    res = residual(f, spec, s, tau, mu, z0).max_abs
    if not res < tol:
        raise ResidualCheckFailedError(
            f"character formula leaves residual {res:.3g} for {spec.family}", res
        )
    prov = {"source": "character", "index": index, "exact": chi.to_dict()["exact"]}
    return ClassifiedSolution(f, spec.family, prov, res)


def _kind(s: Semigroup, tau) -> str:
    if isinstance(tau, InvolutiveMorphism):
        return "automorphism" if s.is_abelian else tau.kind
    if s.is_abelian or is_involutive_morphism(s, tau, "automorphism"):
        return "automorphism"
    return "anti-automorphism"


def uses_dalembert_pool(s: Semigroup, tau, family) -> bool:
    spec = EquationSpec.of(family)
    return not spec.is_vanvleck and _kind(s, tau) == "anti-automorphism"


def a_pool(s: Semigroup, tau, mu, z0: int, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Oracle solutions of the d'Alembert equation (tau on the right) lying in class A."""
    oracle = solve_all("dalembert", s, tau, mu, None, tol)
    return [g for g in oracle.nonzero if class_membership(g, "A", s, tau, mu, z0, tol)]


def enumerate_classified(
    s: Semigroup,
    tau: InvolutiveMorphism,
    mu: Character,
    z0: int,
    family: str,
    tol: float = DEFAULT_TOL,
) -> list[ClassifiedSolution]:
    """Every nonzero solution the classification predicts, deduplicated.

    Distinct characters can give the same function; the first character (in
    enumeration order) is kept as provenance and the rest are listed under
    ``"also"``.
    """
    spec = _z0_family(family)
    s.check_central(z0)
    out: dict[tuple, ClassifiedSolution] = {}
    if uses_dalembert_pool(s, tau, spec):
        for i, g in enumerate(a_pool(s, tau, mu, z0, tol)):
            f = t_transform(g, z0)
            res = residual(f, spec, s, tau, mu, z0).max_abs
            if not res < tol:
                raise ResidualCheckFailedError(
                    f"T(g) for A-pool entry {i} leaves residual {res:.3g} for {spec.family}", res
                )
            sol = ClassifiedSolution(f, spec.family, {"source": "A-pool", "index": i}, res)
            out.setdefault(sol.key(), sol)
    else:
        for i, chi in enumerate(enumerate_characters(s)):
            try:
                sol = build_char_solution(chi, tau, mu, z0, spec.family, s, tol, index=i)
            except (ZeroAtZ0Error, SignConditionFailedError):
                continue
            prev = out.setdefault(sol.key(), sol)
            if prev is not sol:
                prev.provenance.setdefault("also", []).append(i)
    return [out[k] for k in sorted(out)]


def t_transform(g: Sequence[complex], z0: int) -> np.ndarray:
    """T(g) = g(z0) * g."""
    gv = np.asarray(g, dtype=complex)
    return gv[z0] * gv


def t_inverse(f: Sequence[complex], s: Semigroup, z0: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """g(x) = f(x z0) / f(z0); undefined when f(z0) = 0."""
    fv = np.asarray(f, dtype=complex)
    if abs(fv[z0]) <= tol:
        raise ZeroAtZ0Error("f(z0) = 0, so f is not a nonzero Kannappan solution")
    return fv[s.array[:, z0]] / fv[z0]


def same_function(f, g, tol: float = DEDUP_TOL) -> bool:
    return bool(np.max(np.abs(np.asarray(f) - np.asarray(g))) < tol)
