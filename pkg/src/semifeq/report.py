"""One verification run: classified set vs. oracle set, plus identity checks."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Optional, Union

import numpy as np

from .equations import DEFAULT_TOL, EquationSpec, Z0_FAMILIES, lemma_suite
from .errors import EmptyCenterError, ResidualCheckFailedError, UnknownFamilyError
from .morphisms import Character, InvolutiveMorphism
from .oracle import compare_sets, dedup, solve_all
from .semigroup import Semigroup
from .solutions import enumerate_classified


def encode_vector(f) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in np.asarray(f, dtype=complex)]


def format_number(z: complex, digits: int = 6) -> str:
    re = round(z.real, digits) + 0.0
    im = round(z.imag, digits) + 0.0
    if im == 0:
        return f"{re:g}"
    if re == 0:
        return f"{im:g}i"
    return f"{re:g}{im:+g}i"


def format_vector(f) -> str:
    return "(" + ", ".join(format_number(complex(v)) for v in f) + ")"


@dataclass
class VerificationReport:
    instance: dict
    classified_count: int
    oracle_count: int
    verdict: str
    completeness: str
    comparison: dict
    lemmas: dict
    lemmas_passed: bool
    timing: float
    classified_error: Optional[str] = None
    solutions: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict == "confirmed" and self.lemmas_passed

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(**d)

    def to_markdown(self) -> str:
        inst = self.instance
        lines = [
            f"## {inst['semigroup']} / {inst['family']} / z0={inst['z0']}",
            "",
            f"- equation: `{EquationSpec.of(inst['family']).describe()}`",
            f"- tau #{inst['tau_index']}: {inst['tau']['kind']} {tuple(inst['tau']['map'])}",
            f"- mu #{inst['mu_index']}: {format_vector(complex(*v) for v in inst['mu'])}",
            f"- classified: {self.classified_count} nonzero",
            f"- oracle: {self.oracle_count} nonzero ({self.completeness})",
            f"- verdict: **{self.verdict}**",
            f"- time: {self.timing:.3f} s",
        ]
        if self.classified_error:
            lines.append(f"- classification error: {self.classified_error}")
        for label, key in (("matched", "matched"), ("oracle only", "oracle_only"),
                           ("classified only", "classified_only")):
            for f in self.comparison[key]:
                lines.append(f"- {label}: {format_vector(complex(*v) for v in f)}")
        lines += ["", "| identity | passed | failed | max deviation |", "|---|---|---|---|"]
        for ident, row in self.lemmas.items():
            lines.append(f"| {ident} | {row['passed']} | {row['failed']} | {row['max_deviation']:.3g} |")
        if not self.lemmas:
            lines.append("| - | 0 | 0 | 0 |")
        return "\n".join(lines) + "\n"


def _lemma_table(funcs, family, s, tau, mu, z0, tol) -> tuple[dict, bool]:
    table: dict[str, dict] = {}
    ok = True
    for f in funcs:
        for r in lemma_suite(f, family, s, tau, mu, z0, tol):
            row = table.setdefault(r.identity, {"passed": 0, "failed": 0, "max_deviation": 0.0})
            row["passed" if r.passed else "failed"] += 1
            row["max_deviation"] = max(row["max_deviation"], float(r.deviation))
            ok &= r.passed
    return table, ok


def run_verification(
    s: Semigroup,
    family: str,
    tau: InvolutiveMorphism,
    mu: Character,
    z0: int,
    tol: float = DEFAULT_TOL,
    tau_index: Optional[int] = None,
    mu_index: Optional[int] = None,
) -> VerificationReport:
    """Classified solutions, oracle solutions, their comparison, and the
    identity suite (at 10 * tol) on every nonzero solution either side found."""
    spec = EquationSpec.of(family)
    if spec.family not in Z0_FAMILIES:
        raise UnknownFamilyError(f"verification needs a z0 family, not {spec.family!r}")
    if not s.center:
        raise EmptyCenterError(f"{s.name or 'semigroup'} has an empty center")
    s.check_central(z0)
    start = time.perf_counter()
    error = None
    try:
        classified = enumerate_classified(s, tau, mu, z0, spec.family, tol)
    except ResidualCheckFailedError as exc:
        classified, error = [], str(exc)
    oracle = solve_all(spec, s, tau, mu, z0, tol)
    cmp = compare_sets(oracle, classified)
    verdict = "constructor error" if error else cmp.verdict
    found = dedup(list(oracle.nonzero) + [c.f for c in classified])
    lemmas, lemmas_ok = _lemma_table(found, spec.family, s, tau, mu, z0, 10 * tol)
    elapsed = time.perf_counter() - start
    instance = {
        "semigroup": s.name,
        "family": spec.family,
        "tau_index": tau_index,
        "tau": tau.to_dict(),
        "mu_index": mu_index,
        "mu": encode_vector(mu.values),
        "z0": z0,
        "tol": tol,
    }
    return VerificationReport(
        instance=instance,
        classified_count=len(classified),
        oracle_count=len(oracle.nonzero),
        verdict=verdict,
        completeness=oracle.completeness,
        comparison=cmp.to_dict(),
        lemmas=lemmas,
        lemmas_passed=lemmas_ok,
        timing=elapsed,
        classified_error=error,
        solutions={
            "classified": [c.to_dict() for c in classified],
            "oracle": [encode_vector(f) for f in oracle.solutions],
        },
    )


def verify_sweep(
    s: Semigroup,
    family: str,
    tau: InvolutiveMorphism,
    mu: Character,
    z0: Union[int, str],
    tol: float = DEFAULT_TOL,
    tau_index: Optional[int] = None,
    mu_index: Optional[int] = None,
) -> list[VerificationReport]:
    """``z0="all"`` runs every central element in ascending order."""
    if not s.center:
        raise EmptyCenterError(f"{s.name or 'semigroup'} has an empty center")
    points = list(s.center) if z0 == "all" else [int(z0)]
    return [run_verification(s, family, tau, mu, z, tol, tau_index, mu_index) for z in points]
