"""The six functional equations as one parametric shape, plus diagnostics.

Every equation reads

    s1 * f(x y [z0]) + s2 * mu(y) * f(arg2) = 2 f(x) f(y)

where ``arg2`` is ``x tau(y) [z0]`` (right placement) or ``tau(y) x [z0]``
(left placement).  Identity ids in :func:`lemma_suite` follow the equation
numbering used in the literature ("2.1", "4.3", ...).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Literal, Optional, Sequence

import numpy as np

from .errors import MissingZ0Error, UnknownFamilyError
from .morphisms import MuLike, TauLike, as_map, as_values
from .semigroup import Semigroup

DEFAULT_TOL = 1e-9
DEDUP_TOL = 1e-7


@dataclass(frozen=True)
class EquationSpec:
    family: str
    s1: int
    s2: int
    tau_side: Literal["right", "left"]
    uses_z0: bool

    @classmethod
    def of(cls, family: "str | EquationSpec") -> "EquationSpec":
        if isinstance(family, EquationSpec):
            return family
        try:
            return FAMILIES[family]
        except KeyError:
            raise UnknownFamilyError(f"unknown equation family {family!r}") from None

    @property
    def is_vanvleck(self) -> bool:
        return self.s1 < 0

    def describe(self) -> str:
        z = "z0" if self.uses_z0 else ""
        first = f"f(xy{z})"
        second = f"mu(y)f(xτ(y){z})" if self.tau_side == "right" else f"mu(y)f(τ(y)x{z})"
        if self.s1 < 0:
            return f"{second} - {first} = 2f(x)f(y)"
        return f"{first} + {second} = 2f(x)f(y)"


FAMILIES: dict[str, EquationSpec] = {
    "kannappan": EquationSpec("kannappan", 1, 1, "right", True),
    "kannappan-variant": EquationSpec("kannappan-variant", 1, 1, "left", True),
    "vanvleck": EquationSpec("vanvleck", -1, 1, "right", True),
    "vanvleck-variant": EquationSpec("vanvleck-variant", -1, 1, "left", True),
    "dalembert": EquationSpec("dalembert", 1, 1, "right", False),
    "dalembert-variant": EquationSpec("dalembert-variant", 1, 1, "left", False),
}
Z0_FAMILIES = ("kannappan", "kannappan-variant", "vanvleck", "vanvleck-variant")

# d'Alembert equation whose solutions parametrize each z0-family via f = g(z0) g
PARTNER_DALEMBERT = {
    "kannappan": "dalembert",
    "kannappan-variant": "dalembert-variant",
    "vanvleck": "dalembert",
    "vanvleck-variant": "dalembert-variant",
}


def argument_tables(
    spec: EquationSpec, s: Semigroup, tau: TauLike, z0: Optional[int]
) -> tuple[np.ndarray, np.ndarray]:
    """Index arrays ``arg1[x, y]`` and ``arg2[x, y]`` of the two f-terms."""
    a = s.array
    t = as_map(tau)
    if spec.uses_z0:
        if z0 is None:
            raise MissingZ0Error(f"{spec.family} needs a central z0")
        s.check_central(z0)
    arg1 = a.copy()
    arg2 = a[:, t] if spec.tau_side == "right" else a[t, :].T
    if spec.uses_z0:
        arg1 = a[arg1, z0]
        arg2 = a[arg2, z0]
    return arg1, arg2


@dataclass
class ResidualReport:
    max_abs: float
    argmax_pair: tuple[int, int]
    per_pair: Optional[np.ndarray] = None

    def to_dict(self) -> dict:
        return {"max_abs": self.max_abs, "argmax_pair": list(self.argmax_pair)}


def residual_matrix(
    f: Sequence[complex],
    spec: "str | EquationSpec",
    s: Semigroup,
    tau: TauLike,
    mu: MuLike,
    z0: Optional[int] = None,
) -> np.ndarray:
    """``LHS - RHS`` at every pair, as an ``n x n`` complex array indexed [x, y]."""
    spec = EquationSpec.of(spec)
    fv = np.asarray(f, dtype=complex)
    m = as_values(mu)
    arg1, arg2 = argument_tables(spec, s, tau, z0)
    lhs = spec.s1 * fv[arg1] + spec.s2 * m[None, :] * fv[arg2]
    return lhs - 2.0 * np.outer(fv, fv)


def residual(
    f: Sequence[complex],
    spec: "str | EquationSpec",
    s: Semigroup,
    tau: TauLike,
    mu: MuLike,
    z0: Optional[int] = None,
    per_pair: bool = False,
) -> ResidualReport:
    r = np.abs(residual_matrix(f, spec, s, tau, mu, z0))
    k = int(np.argmax(r))
    x, y = divmod(k, s.order)
    return ResidualReport(float(r.flat[k]), (x, y), r if per_pair else None)


def is_solution(f, spec, s, tau, mu, z0=None, tol: float = DEFAULT_TOL) -> bool:
    return residual(f, spec, s, tau, mu, z0).max_abs < tol


@dataclass(frozen=True)
class LemmaResult:
    identity: str
    passed: bool
    deviation: float

    def to_dict(self) -> dict:
        return asdict(self)


def _maxabs(v) -> float:
    return float(np.max(np.abs(v))) if np.size(v) else 0.0


def _nonzero_implies(fv: np.ndarray, z0: int, tol: float) -> tuple[bool, float]:
    # falsifiable half of "f != 0 <=> f(z0) != 0"
    size = _maxabs(fv)
    if size > tol and abs(fv[z0]) <= tol:
        return False, size
    return True, 0.0


def lemma_suite(
    f: Sequence[complex],
    family: str,
    s: Semigroup,
    tau: TauLike,
    mu: MuLike,
    z0: int,
    tol: float = DEFAULT_TOL,
) -> list[LemmaResult]:
    """Evaluate the consequence identities proved for solutions of ``family``.

    The input need not be a solution; deviations are reported either way.
    Identity "4.2" (f(z0) != 0) is required outright, so it fails on f = 0.
    """
    family = EquationSpec.of(family).family
    if family not in Z0_FAMILIES:
        raise UnknownFamilyError(f"no identity suite for {family!r}")
    s.check_central(z0)
    fv = np.asarray(f, dtype=complex)
    a = s.array
    t = as_map(tau)
    m = as_values(mu)
    n = s.order
    xs = np.arange(n)
    tz = int(t[z0])
    zz = int(a[z0, z0])
    x_tz_z = a[a[xs, tz], z0]  # x tau(z0) z0
    x_zz = a[xs, zz]  # x z0^2
    checks: list[tuple[str, float]] = []
    bicond: dict[str, tuple[bool, float]] = {}

    if family in ("kannappan", "kannappan-variant"):
        p = "2" if family == "kannappan" else "3"
        checks.append((f"{p}.1", _maxabs(fv - m * fv[t])))
        checks.append((f"{p}.2", _maxabs(fv[x_tz_z] - m[tz] * fv[z0] * fv)))
        checks.append((f"{p}.3", _maxabs(fv[x_zz] - fv * fv[z0])))
        bicond[f"{p}.4"] = _nonzero_implies(fv, z0, tol)
        order = [f"{p}.{i}" for i in range(1, 5)]
    elif family == "vanvleck":
        checks.append(("4.1", _maxabs(fv + m * fv[t])))
        ok = abs(fv[z0]) > tol
        bicond["4.2"] = (ok, 0.0 if ok else 1.0 - abs(fv[z0]))
        checks.append(("4.3", abs(fv[zz])))
        checks.append(("4.4", _maxabs(fv[x_tz_z] - m[tz] * fv * fv[z0])))
        checks.append(("4.5", _maxabs(fv[x_zz] + fv[z0] * fv)))
        checks.append(("4.6", _maxabs(m * fv[a[t, z0]] - fv[a[xs, z0]])))
        order = [f"4.{i}" for i in range(1, 7)]
    else:
        checks.append(("5.1", _maxabs(fv + m * fv[t])))
        bicond["5.2"] = _nonzero_implies(fv, z0, tol)
        # mu(y) f(tau(y) x) at [x, y] against -mu(x) f(tau(x) y)
        lhs = m[None, :] * fv[a[t, :].T]
        checks.append(("5.3", _maxabs(lhs + lhs.T)))
        checks.append(("5.4", _maxabs(fv[x_tz_z] - m[tz] * fv[z0] * fv)))
        checks.append(("5.5", _maxabs(fv[x_zz] + fv[z0] * fv)))
        checks.append(("5.6", _maxabs(m * fv[a[t, z0]] - fv[a[xs, z0]])))
        checks.append(("5.7", _maxabs(fv[a[xs, tz]] - m * fv[a[t, tz]])))
        checks.append(("5.8", max(abs(fv[zz]), abs(fv[a[z0, tz]]))))
        order = [f"5.{i}" for i in range(1, 9)]

    results = {ident: LemmaResult(ident, bool(dev < tol), float(dev)) for ident, dev in checks}
    for ident, (ok, dev) in bicond.items():
        results[ident] = LemmaResult(ident, bool(ok), float(dev))
    return [results[i] for i in order]


def sine_addition_residual(f: Sequence[complex], g: Sequence[complex], s: Semigroup) -> float:
    """max over pairs of |f(xy) - f(x) g(y) - f(y) g(x)|."""
    fv = np.asarray(f, dtype=complex)
    gv = np.asarray(g, dtype=complex)
    r = fv[s.array] - np.outer(fv, gv) - np.outer(gv, fv)
    return _maxabs(r)


@dataclass
class Membership:
    member: bool
    reasons: list[str]

    def __bool__(self) -> bool:
        return self.member


def class_membership(
    g: Sequence[complex],
    cls: Literal["A", "M"],
    s: Semigroup,
    tau: TauLike,
    mu: MuLike,
    z0: int,
    tol: float = DEFAULT_TOL,
) -> Membership:
    """Membership of ``g`` in class A (d'Alembert, tau on the right) or M (tau on the left).

    Both classes ask for a d'Alembert solution with g(z0) != 0 and
    g(x z0) = g(z0) g(x).
    """
    s.check_central(z0)
    if cls not in ("A", "M"):
        raise ValueError(f"class must be 'A' or 'M', not {cls!r}")
    family = "dalembert" if cls == "A" else "dalembert-variant"
    gv = np.asarray(g, dtype=complex)
    reasons = []
    res = residual(gv, family, s, tau, mu).max_abs
    if not res < tol:
        reasons.append(f"{family} residual {res:.3g}")
    if not abs(gv[z0]) > tol:
        reasons.append("g(z0)=0")
    shift = _maxabs(gv[s.array[:, z0]] - gv[z0] * gv)
    if not shift < tol:
        reasons.append(f"g(x z0) != g(z0) g(x) (deviation {shift:.3g})")
    return Membership(not reasons, reasons)
