"""Slow, obviously-correct reference implementations used only by tests."""

import itertools
import math

import numpy as np


def brute_involutions(s, kind):
    n = s.order
    t = s.table
    out = []
    for perm in itertools.permutations(range(n)):
        if any(perm[perm[x]] != x for x in range(n)):
            continue
        if kind == "automorphism":
            ok = all(perm[t[x][y]] == t[perm[x]][perm[y]] for x in range(n) for y in range(n))
        else:
            ok = all(perm[t[x][y]] == t[perm[y]][perm[x]] for x in range(n) for y in range(n))
        if ok:
            out.append(perm)
    return out


def brute_characters(s):
    """Exhaustive search over {0} and all roots of unity of order <= n.

    A nonzero value chi(x) satisfies chi(x)^r = 1 for some r <= n, so this
    grid contains every multiplicative function.  Values are exponents modulo
    L = lcm(1..n), with -1 standing for zero.  Assignments are grown one
    element at a time and pairs are checked as soon as all three of x, y, xy
    are assigned; nothing is assumed about the structure beyond the table.
    """
    n = s.order
    L = math.lcm(*range(1, n + 1))
    grid = [-1] + sorted({L // r * j for r in range(1, n + 1) for j in range(r)})
    t = np.asarray(s.table)
    rows = np.empty((1, 0), dtype=np.int64)
    for k in range(n):
        rows = np.concatenate(
            [np.repeat(rows, len(grid), axis=0), np.tile(np.array(grid)[:, None], (len(rows), 1))], axis=1
        )
        keep = np.ones(len(rows), dtype=bool)
        for x in range(k + 1):
            for y in range(k + 1):
                xy = t[x, y]
                if xy > k:
                    continue
                a, b, c = rows[:, x], rows[:, y], rows[:, xy]
                prod = np.where((a < 0) | (b < 0), -1, (a + b) % L)
                keep &= prod == c
        rows = rows[keep]
    return {tuple(None if e < 0 else (int(e) * 1, L) for e in r) for r in rows}


def exact_to_pairs(chi):
    """Express a Character's exact values on the same (e, L) footing as brute_characters."""
    n = len(chi)
    L = math.lcm(*range(1, n + 1))
    out = []
    for a in chi.exact:
        if a is None:
            out.append(None)
        else:
            assert L % a.denominator == 0
            out.append((int(a * L), L))
    return tuple(out)
