"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

The lines are also collected and repeated in the pytest terminal summary.
"""

import math
import os
import time
from functools import lru_cache

import numpy as np

from conftest import ACCEPTANCE_LINES, close, instances
from oracles import brute_characters, exact_to_pairs
from semifeq.corpus import load_corpus, load_semigroup
from semifeq.equations import class_membership, lemma_suite, residual, sine_addition_residual
from semifeq.errors import ResidualCheckFailedError
from semifeq.morphisms import Character, InvolutiveMorphism, enumerate_characters, sign_condition
from semifeq.oracle import compare_sets, solve_all
from semifeq.report import run_verification
from semifeq.solutions import build_char_solution, enumerate_classified, t_inverse, t_transform

TOL = 1e-9  # residuals, lemma checks at 10 * TOL, round trips, zero tests
ANCHOR_SECONDS = 1.0  # criteria 1 and 2
SWEEP_SECONDS = 60.0  # criterion 3

CORPUS = {e.name: e.semigroup for e in load_corpus()}
WITH_CENTER = [k for k, s in CORPUS.items() if s.center]
# oracle sweeps (criteria 5-7) stop at order 6 unless SEMIFEQ_FULL_SWEEP=1;
# Z7, Z8 and D4 add several minutes
FULL = os.environ.get("SEMIFEQ_FULL_SWEEP") == "1"
ORACLE_SCOPE = [k for k in WITH_CENTER if FULL or CORPUS[k].order <= 6]
KANNAPPAN = ("kannappan", "kannappan-variant")
VANVLECK = ("vanvleck", "vanvleck-variant")


def record(number: int, passed: bool, detail: str) -> None:
    line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)


@lru_cache(maxsize=None)
def _instances(name):
    return list(instances(CORPUS[name]))


@lru_cache(maxsize=None)
def oracle(name, family, ti, mi, z0):
    _, tau, _, mu = _instances(name)[_index(name, ti, mi)]
    return solve_all(family, CORPUS[name], tau, mu, z0, TOL)


@lru_cache(maxsize=None)
def _index(name, ti, mi):
    return next(k for k, (a, _, b, _) in enumerate(_instances(name)) if (a, b) == (ti, mi))


def every_instance(names, families):
    for name in names:
        s = CORPUS[name]
        for ti, tau, mi, mu in _instances(name):
            for family in families:
                for z0 in s.center:
                    yield name, s, ti, tau, mi, mu, family, z0


def z4_data():
    s = load_semigroup("corpus:Z4")
    return s, InvolutiveMorphism((0, 3, 2, 1)), Character.constant_one(4), 1


def test_criterion_01_z4_vanvleck_anchor():
    s, tau, mu, z0 = z4_data()
    start = time.perf_counter()
    res = solve_all("vanvleck", s, tau, mu, z0, TOL)
    classified = enumerate_classified(s, tau, mu, z0, "vanvleck", TOL)
    elapsed = time.perf_counter() - start
    anchor = np.array([math.cos(math.pi / (2 * z0) * (x - z0)) for x in range(4)])
    ok = (
        len(res.nonzero) == 1
        and len(classified) == 1
        and close(res.nonzero[0], anchor, TOL)
        and close(classified[0].f, anchor, TOL)
        and elapsed < ANCHOR_SECONDS
    )
    record(1, ok, f"Z4 vanvleck: oracle {len(res.nonzero)}, classified {len(classified)}, "
                  f"equals cos(pi/2 (x-1)) within {TOL:g}; {elapsed:.3f} s (limit {ANCHOR_SECONDS:g} s)")
    assert ok


def test_criterion_02_z4_kannappan():
    s, tau, mu, z0 = z4_data()
    start = time.perf_counter()
    res = solve_all("kannappan", s, tau, mu, z0, TOL)
    classified = enumerate_classified(s, tau, mu, z0, "kannappan", TOL)
    elapsed = time.perf_counter() - start
    want = [np.ones(4), np.array([-1.0, 1, -1, 1])]

    def same(fs):
        return len(fs) == 2 and all(any(close(f, w, TOL) for f in fs) for w in want)

    ok = (
        same(res.nonzero)
        and same([c.f for c in classified])
        and close(res.solutions[0], np.zeros(4), TOL)
        and elapsed < ANCHOR_SECONDS
    )
    record(2, ok, f"Z4 kannappan: oracle = classified = {{1, (-1,1,-1,1)}} plus zero; "
                  f"{elapsed:.3f} s (limit {ANCHOR_SECONDS:g} s)")
    assert ok


def test_criterion_03_constructor_soundness():
    start = time.perf_counter()
    built = failures = 0
    first_failure = ""
    names = [k for k in WITH_CENTER if CORPUS[k].order <= 8]
    for name, s, _, tau, _, mu, family, z0 in every_instance(names, KANNAPPAN + VANVLECK):
        sign = "minus" if family in VANVLECK else "plus"
        for chi in enumerate_characters(s):
            if chi.exact[z0] is None or not sign_condition(chi, tau, mu, z0, sign, s):
                continue
            try:
                sol = build_char_solution(chi, tau, mu, z0, family, s, TOL)
                lemmas_ok = all(r.passed for r in lemma_suite(sol.f, family, s, tau, mu, z0, 10 * TOL))
                ok = sol.residual < TOL and lemmas_ok
            except ResidualCheckFailedError as exc:
                ok, lemmas_ok = False, str(exc)
            built += 1
            if not ok:
                failures += 1
                first_failure = first_failure or f"{name} {family} z0={z0} ({lemmas_ok})"
    elapsed = time.perf_counter() - start
    ok = failures == 0 and built > 0 and elapsed < SWEEP_SECONDS
    record(3, ok, f"{built} character solutions over {len(names)} semigroups, {failures} failures"
                  f"{' e.g. ' + first_failure if first_failure else ''}; {elapsed:.1f} s (limit {SWEEP_SECONDS:g} s)")
    assert ok


def test_criterion_04_completeness_abelian():
    names = [k for k in WITH_CENTER if CORPUS[k].is_abelian and CORPUS[k].order <= 6]
    total = 0
    bad = []
    degenerate = 0
    for name, s, ti, tau, mi, mu, family, z0 in every_instance(names, KANNAPPAN + VANVLECK):
        res = oracle(name, family, ti, mi, z0)
        verdict = compare_sets(res, enumerate_classified(s, tau, mu, z0, family, TOL)).verdict
        total += 1
        degenerate += res.completeness == "heuristic-degenerate"
        if verdict != "confirmed":
            bad.append(f"{name} {family} tau#{ti} mu#{mi} z0={z0}: {verdict} ({res.completeness})")
    ok = not bad and total > 0
    record(4, ok, f"{total - len(bad)}/{total} abelian instances confirmed on {', '.join(names)} "
                  f"({degenerate} searched heuristically)" + (f"; first: {bad[0]}" if bad else ""))
    assert ok


def test_criterion_05_t_bijection():
    forward = backward = 0
    problems = []
    for name, s, ti, tau, mi, mu, _, z0 in every_instance(ORACLE_SCOPE, ("kannappan",)):
        for f in oracle(name, "kannappan", ti, mi, z0).nonzero:
            g = t_inverse(f, s, z0, TOL)
            forward += 1
            if not (class_membership(g, "A", s, tau, mu, z0, TOL) and close(t_transform(g, z0), f, TOL)):
                problems.append(f"{name} tau#{ti} mu#{mi} z0={z0}: T^-1 f")
        # the class A pool, as the classification builds it, from the cached oracle run
        pool = [g for g in oracle(name, "dalembert", ti, mi, None).nonzero
                if class_membership(g, "A", s, tau, mu, z0, TOL)]
        for g in pool:
            backward += 1
            if not close(t_inverse(t_transform(g, z0), s, z0, TOL), g, TOL):
                problems.append(f"{name} tau#{ti} mu#{mi} z0={z0}: pool round trip")
    ok = not problems and forward > 0 and backward > 0
    record(5, ok, f"{forward} Kannappan solutions map into class A and back, {backward} pool members "
                  f"round-trip (tol {TOL:g})" + (f"; first problem: {problems[0]}" if problems else ""))
    assert ok


def _vanvleck_solutions():
    for name, s, ti, tau, mi, mu, family, z0 in every_instance(ORACLE_SCOPE, VANVLECK):
        for f in oracle(name, family, ti, mi, z0).nonzero:
            yield name, s, ti, tau, mi, mu, family, z0, f


def test_criterion_06_vanvleck_zero_structure():
    count = 0
    problems = []
    for name, s, ti, tau, _, _, family, z0, f in _vanvleck_solutions():
        count += 1
        zz = s.mul(z0, z0)
        ok = abs(f[zz]) < TOL and abs(f[z0]) > TOL
        if family == "vanvleck-variant":
            ok &= abs(f[s.mul(z0, tau(z0))]) < TOL
        if not ok:
            problems.append(f"{name} {family} tau#{ti} z0={z0}")
    ok = not problems and count > 0
    record(6, ok, f"{count} nonzero Van Vleck oracle solutions with f(z0^2)=0 and f(z0)!=0 (tol {TOL:g})"
                  + (f"; first problem: {problems[0]}" if problems else ""))
    assert ok


def test_criterion_07_sine_addition():
    count = 0
    worst = 0.0
    for _, s, _, _, _, _, _, z0, f in _vanvleck_solutions():
        g = f[s.array[:, z0]] / f[z0]
        worst = max(worst, sine_addition_residual(f, g, s))
        count += 1
    ok = count > 0 and worst < TOL
    record(7, ok, f"{count} Van Vleck solutions, worst sine-addition residual {worst:.2e} (limit {TOL:g})")
    assert ok


def test_criterion_08_monoid_degeneration():
    names = [k for k, s in CORPUS.items() if s.identity is not None]
    rng = np.random.default_rng(20240601)
    checks = 0
    exact = True
    for name in names:
        s = CORPUS[name]
        e = s.identity
        for _, tau, _, mu in _instances(name):
            for _ in range(3):
                f = rng.normal(size=s.order) + 1j * rng.normal(size=s.order)
                for shifted, plain in (("kannappan", "dalembert"), ("kannappan-variant", "dalembert-variant")):
                    a = residual(f, shifted, s, tau, mu, e).max_abs
                    b = residual(f, plain, s, tau, mu).max_abs
                    exact &= a == b
                    checks += 1
    record(8, exact, f"{checks} random functions on {len(names)} monoids: residual with z0 = identity "
                     f"equals the d'Alembert residual exactly")
    assert exact


def test_criterion_09_character_oracle():
    names = ["Z2", "Z3", "Z4", "Z5", "Z6", "NULL2", "NULL3"]
    agree = []
    for name in names:
        s = CORPUS[name]
        agree.append({exact_to_pairs(c) for c in enumerate_characters(s)} == brute_characters(s))
    z3 = len(enumerate_characters(CORPUS["Z3"]))
    ok = all(agree) and z3 == 4
    record(9, ok, f"backtracking equals exhaustive grid on {sum(agree)}/{len(names)} semigroups; Z3 has {z3} characters")
    assert ok


def test_criterion_10_null_semigroup():
    s = CORPUS["NULL2"]
    tau = InvolutiveMorphism((0, 1))
    mu = Character.constant_one(2)
    k = run_verification(s, "kannappan", tau, mu, 0, TOL)
    v = run_verification(s, "vanvleck", tau, mu, 0, TOL)
    k_sol = k.comparison["matched"]
    ok = (
        k.verdict == "confirmed"
        and v.verdict == "confirmed"
        and k.oracle_count == 1
        and v.oracle_count == 0
        and v.classified_count == 0
        and close([complex(*p) for p in k_sol[0]], [1, 1], TOL)
    )
    record(10, ok, f"NULL2 z0=0: kannappan {k.oracle_count} nonzero (f=1) {k.verdict}; "
                   f"vanvleck {v.oracle_count} nonzero {v.verdict}")
    assert ok
