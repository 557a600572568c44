"""Command line entry point.

Exit codes: 0 success or confirmed, 1 a mismatch or failed identity was
found, 2 bad input.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click

from .corpus import load_corpus, load_semigroup
from .equations import DEFAULT_TOL, FAMILIES, EquationSpec
from .errors import ParseError, SemifeqError
from .morphisms import (
    Character,
    InvolutiveMorphism,
    admissible_mus,
    all_involutions,
    enumerate_characters,
    exact_mul,
    is_involutive_morphism,
)
from .oracle import solve_all
from .report import format_vector, verify_sweep
from .semigroup import Semigroup
from .solutions import enumerate_classified

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


def _emit(fmt: str, data, markdown: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(data, indent=2))
    else:
        click.echo(markdown.rstrip("\n"))


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def resolve_tau(s: Semigroup, ref: Optional[str]) -> tuple[InvolutiveMorphism, Optional[int]]:
    """An index into the involution list (automorphisms first) or a JSON file."""
    options = all_involutions(s)
    if ref is None:
        ref = "0"
    if ref.lstrip("-").isdigit():
        i = int(ref)
        if not 0 <= i < len(options):
            raise ParseError(f"tau index {i} out of range (0..{len(options) - 1})")
        return options[i], i
    tau = InvolutiveMorphism.from_dict(_read_json(ref))
    if not is_involutive_morphism(s, tau.map, tau.kind):
        raise ParseError(f"{ref} is not an involutive {tau.kind} of this semigroup")
    if s.is_abelian:
        tau = InvolutiveMorphism(tau.map, "automorphism")
    idx = next((i for i, t in enumerate(options) if t == tau), None)
    return tau, idx


def resolve_mu(s: Semigroup, tau: InvolutiveMorphism, ref: Optional[str]) -> tuple[Character, Optional[int]]:
    """An index into the admissible list for ``tau`` or a JSON file."""
    options = admissible_mus(s, tau)
    if ref is None:
        ref = "0"
    if ref.lstrip("-").isdigit():
        i = int(ref)
        if not 0 <= i < len(options):
            raise ParseError(f"mu index {i} out of range (0..{len(options) - 1})")
        return options[i], i
    mu = Character.from_dict(_read_json(ref))
    if len(mu) != s.order or not mu.is_multiplicative(s):
        raise ParseError(f"{ref} is not a multiplicative function on this semigroup")
    if any(exact_mul(mu.exact[x], mu.exact[tau(x)]) != 0 for x in range(s.order)):
        raise ParseError(f"{ref} violates mu(x) mu(tau(x)) = 1")
    idx = next((i for i, m in enumerate(options) if m == mu), None)
    return mu, idx


def _z0(s: Semigroup, spec: EquationSpec, raw: Optional[str]) -> Optional[int]:
    if not spec.uses_z0:
        return None
    if raw is None:
        raise ParseError(f"{spec.family} needs --z0")
    try:
        z0 = int(raw)
    except ValueError:
        raise ParseError(f"--z0 must be an element index, got {raw!r}") from None
    s.check_central(z0)
    return z0


semigroup_opt = click.option("--semigroup", "source", required=True, help="JSON path or corpus:NAME.")
format_opt = click.option("--format", "fmt", type=click.Choice(["md", "json"]), default="md", show_default=True)
equation_opt = click.option("--equation", type=click.Choice(sorted(FAMILIES)), required=True)
tau_opt = click.option("--tau", "tau_ref", default=None, help="Involution index or JSON file (default 0).")
mu_opt = click.option("--mu", "mu_ref", default=None, help="Admissible mu index or JSON file (default 0).")
tol_opt = click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)


@click.group()
def main() -> None:
    """Finite-semigroup workbench for Kannappan, Van Vleck and d'Alembert equations."""


@main.command()
@semigroup_opt
@format_opt
def validate(source: str, fmt: str) -> None:
    """Check that a table is an associative semigroup."""
    s = load_semigroup(source)
    _emit(fmt, {"valid": True, "name": s.name, "order": s.order}, f"valid: {s.name} (order {s.order})")


@main.command()
@semigroup_opt
@format_opt
def analyze(source: str, fmt: str) -> None:
    """Center, identity and element profiles."""
    s = load_semigroup(source)
    data = {
        "name": s.name,
        "order": s.order,
        "abelian": s.is_abelian,
        "identity": s.identity,
        "center": list(s.center),
        "profiles": [{"element": p.element, "index_k": p.index_k, "period_r": p.period_r} for p in s.profiles],
    }
    md = [
        f"# {s.name} (order {s.order})",
        "",
        f"- abelian: {s.is_abelian}",
        f"- identity: {s.identity}",
        f"- center: {list(s.center)}",
        "",
        "| element | index k | period r |",
        "|---|---|---|",
    ]
    md += [f"| {p.element} | {p.index_k} | {p.period_r} |" for p in s.profiles]
    _emit(fmt, data, "\n".join(md))


@main.command()
@semigroup_opt
@format_opt
def involutions(source: str, fmt: str) -> None:
    """Involutive automorphisms, then anti-automorphisms, with their indices."""
    s = load_semigroup(source)
    taus = all_involutions(s)
    data = [dict(index=i, **t.to_dict()) for i, t in enumerate(taus)]
    md = ["| index | kind | map |", "|---|---|---|"]
    md += [f"| {i} | {t.kind} | {list(t.map)} |" for i, t in enumerate(taus)]
    _emit(fmt, data, "\n".join(md))


@main.command()
@semigroup_opt
@click.option("--tau", "tau_ref", default=None, help="List only the mu admissible for this involution.")
@format_opt
def characters(source: str, tau_ref: Optional[str], fmt: str) -> None:
    """Multiplicative functions (or admissible mu when --tau is given)."""
    s = load_semigroup(source)
    chars = admissible_mus(s, resolve_tau(s, tau_ref)[0]) if tau_ref is not None else enumerate_characters(s)
    data = [dict(index=i, **c.to_dict()) for i, c in enumerate(chars)]
    md = ["| index | values |", "|---|---|"]
    md += [f"| {i} | {format_vector(c.values)} |" for i, c in enumerate(chars)]
    _emit(fmt, data, "\n".join(md))


@main.command()
@semigroup_opt
@equation_opt
@tau_opt
@mu_opt
@click.option("--z0", default=None)
@tol_opt
@format_opt
def solve(source, equation, tau_ref, mu_ref, z0, tol, fmt) -> None:
    """Closed-form solutions predicted by the classification."""
    s = load_semigroup(source)
    spec = EquationSpec.of(equation)
    tau, _ = resolve_tau(s, tau_ref)
    mu, _ = resolve_mu(s, tau, mu_ref)
    sols = enumerate_classified(s, tau, mu, _z0(s, spec, z0), spec.family, tol)
    md = [f"{len(sols)} nonzero solution(s)"] + [
        f"- {format_vector(c.f)} [{c.provenance.get('source')} #{c.provenance.get('index')}]" for c in sols
    ]
    _emit(fmt, [c.to_dict() for c in sols], "\n".join(md))


@main.command()
@semigroup_opt
@equation_opt
@tau_opt
@mu_opt
@click.option("--z0", default=None)
@tol_opt
@format_opt
def oracle(source, equation, tau_ref, mu_ref, z0, tol, fmt) -> None:
    """All solutions found by the eigenvector search."""
    s = load_semigroup(source)
    spec = EquationSpec.of(equation)
    tau, _ = resolve_tau(s, tau_ref)
    mu, _ = resolve_mu(s, tau, mu_ref)
    res = solve_all(spec, s, tau, mu, _z0(s, spec, z0), tol)
    md = [f"{len(res.solutions)} solution(s), {res.completeness}"]
    md += [f"- {format_vector(f)}" for f in res.solutions]
    _emit(fmt, res.to_dict(), "\n".join(md))


@main.command()
@semigroup_opt
@equation_opt
@tau_opt
@mu_opt
@click.option("--z0", default="all", show_default=True, help="Central element or 'all'.")
@tol_opt
@format_opt
@click.pass_context
def verify(ctx, source, equation, tau_ref, mu_ref, z0, tol, fmt) -> None:
    """Compare the classified set with the oracle and run the identity suite."""
    s = load_semigroup(source)
    tau, ti = resolve_tau(s, tau_ref)
    mu, mi = resolve_mu(s, tau, mu_ref)
    if z0 != "all":
        try:
            z0 = int(z0)
        except ValueError:
            raise ParseError(f"--z0 must be an element index or 'all', got {z0!r}") from None
    reports = verify_sweep(s, equation, tau, mu, z0, tol, ti, mi)
    _emit(fmt, [r.to_dict() for r in reports], "\n".join(r.to_markdown() for r in reports))
    if not all(r.ok for r in reports):
        ctx.exit(EXIT_MISMATCH)


@main.group()
def corpus() -> None:
    """Bundled semigroups."""


@corpus.command("list")
@format_opt
def corpus_list(fmt: str) -> None:
    entries = load_corpus()
    data = [e.summary() for e in entries]
    md = ["| name | order | abelian | monoid | center size | notes |", "|---|---|---|---|---|---|"]
    md += [
        f"| {e.name} | {e.semigroup.order} | {e.abelian} | {e.monoid} | {e.center_size} | {e.notes} |"
        for e in entries
    ]
    _emit(fmt, data, "\n".join(md))


def run(argv=None) -> int:
    """Invoke the CLI, mapping library errors to exit code 2."""
    try:
        code = main.main(args=argv, standalone_mode=False)
    except SemifeqError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    except click.exceptions.Abort:
        return EXIT_INPUT
    return code if isinstance(code, int) else EXIT_OK


def entry() -> None:
    sys.exit(run())
