"""Brute-force solver for one equation instance.

Fixing ``y = w`` turns the left side into a linear operator ``M_w`` on
functions, so every solution with ``f(w) != 0`` is an eigenvector of ``M_w``
for the eigenvalue ``2 f(w)``.  One-dimensional eigenspaces pin the solution
down; larger ones (up to dimension 4) are searched with damped Newton from a
fixed grid of starting points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .equations import DEDUP_TOL, DEFAULT_TOL, EquationSpec, argument_tables, residual
from .errors import EigenSolverFailureError, OrderCapExceededError
from .morphisms import MuLike, TauLike, as_values
from .semigroup import DEFAULT_MAX_ORDER, Semigroup

EIG_GROUP_TOL = 1e-7
NULL_TOL = 1e-8
CANON_TOL = 1e-10
MAX_NEWTON_DIM = 4
NEWTON_ITERS = 100
NEWTON_CONVERGED = 1e-12
STALL_WINDOW = 10
STALL_RATIO = 0.99
SNAP_TOL = 1e-6
GRID = (-1.0, -0.5, 0.0, 0.5, 1.0)


@dataclass
class BasePointMatrix:
    w: int
    matrix: np.ndarray
    spec: EquationSpec


def build_base_matrix(
    spec, s: Semigroup, tau: TauLike, mu: MuLike, z0: Optional[int], w: int
) -> BasePointMatrix:
    spec = EquationSpec.of(spec)
    arg1, arg2 = argument_tables(spec, s, tau, z0)
    m = as_values(mu)
    n = s.order
    M = np.zeros((n, n), dtype=complex)
    rows = np.arange(n)
    np.add.at(M, (rows, arg1[:, w]), spec.s1)
    np.add.at(M, (rows, arg2[:, w]), spec.s2 * m[w])
    return BasePointMatrix(w, M, spec)


def linear_operator(spec, s, tau, mu, z0) -> np.ndarray:
    """All base matrices stacked: ``L[x * n + y] = M_y[x]``, shape ``(n*n, n)``."""
    spec = EquationSpec.of(spec)
    arg1, arg2 = argument_tables(spec, s, tau, z0)
    m = as_values(mu)
    n = s.order
    L = np.zeros((n, n, n), dtype=complex)
    xs, ys = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    np.add.at(L, (xs, ys, arg1), spec.s1)
    np.add.at(L, (xs, ys, arg2), spec.s2 * m[ys])
    return L.reshape(n * n, n)


def _null_space(A: np.ndarray) -> np.ndarray:
    _, sv, vh = np.linalg.svd(A)
    rank = int(np.sum(sv > NULL_TOL * max(1.0, sv[0] if len(sv) else 0.0)))
    return vh[rank:].conj().T


def canonical_phase(v: np.ndarray) -> np.ndarray:
    """Scale so the first entry above 1e-10 in modulus is real and positive."""
    nz = np.flatnonzero(np.abs(v) > CANON_TOL)
    if not len(nz):
        return v
    a = v[nz[0]]
    return v * (abs(a) / a)


def canonical_basis(B: np.ndarray) -> np.ndarray:
    """Canonical orthonormal basis (as columns) of the column span of ``B``.

    Reduced row echelon form of ``B.T`` fixes the subspace's basis uniquely;
    Gram-Schmidt in that order then orthonormalizes it.
    """
    R = B.T.copy()
    d, n = R.shape
    row = 0
    for col in range(n):
        if row == d:
            break
        piv = row + int(np.argmax(np.abs(R[row:, col])))
        if abs(R[piv, col]) < 1e-9:
            continue
        R[[row, piv]] = R[[piv, row]]
        R[row] /= R[row, col]
        for r in range(d):
            if r != row:
                R[r] -= R[r, col] * R[row]
        row += 1
    Q = []
    for r in R[:row]:
        v = r.astype(complex)
        for q in Q:
            v = v - np.vdot(q, v) * q
        v = v / np.linalg.norm(v)
        Q.append(canonical_phase(v))
    return np.array(Q).T if Q else np.zeros((n, 0), dtype=complex)


def _group(values: np.ndarray, tol: float) -> list[list[complex]]:
    order = sorted(values, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    groups: list[list[complex]] = []
    for z in order:
        for g in groups:
            if any(abs(z - u) < tol for u in g):
                g.append(z)
                break
        else:
            groups.append([z])
    return groups


def eigen_candidates(m, tol: float = EIG_GROUP_TOL) -> list[tuple[complex, np.ndarray]]:
    """Distinct eigenvalues with orthonormal eigenspace bases (columns).

    Eigenvalues within ``tol`` of each other are merged; each eigenspace is
    the numerical null space of ``M - lambda I`` found by SVD, so defective
    matrices report their geometric multiplicity.
    """
    M = m.matrix if isinstance(m, BasePointMatrix) else np.asarray(m, dtype=complex)
    n = M.shape[0]
    try:
        vals = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverFailureError(str(exc)) from exc
    if not np.all(np.isfinite(vals)):
        raise EigenSolverFailureError("non-finite eigenvalues")
    out = []
    for g in _group(vals, tol):
        lam = complex(np.mean(g))
        if abs(lam.imag) < 1e-13:
            lam = complex(lam.real, 0.0)
        if abs(lam.real) < 1e-13:
            lam = complex(0.0, lam.imag)
        _, sv, vh = np.linalg.svd(M - lam * np.eye(n))
        k = int(np.sum(sv < NULL_TOL * max(1.0, sv[0])))
        k = max(k, 1)
        basis = canonical_basis(vh[n - k :].conj().T)
        out.append((lam, basis))
    out.sort(key=lambda p: (round(p[0].real, 9), round(p[0].imag, 9)))
    return out


def dedup_key(f: Sequence[complex], tol: float = DEDUP_TOL) -> tuple:
    fv = np.asarray(f, dtype=complex)
    re = np.rint(fv.real / tol).astype(np.int64)
    im = np.rint(fv.imag / tol).astype(np.int64)
    return tuple(int(v) for pair in zip(re, im) for v in pair)


def dedup(funcs: Sequence[np.ndarray], tol: float = DEDUP_TOL) -> list[np.ndarray]:
    """Distinct functions sorted by the rounded (re, im) key."""
    seen: dict[tuple, np.ndarray] = {}
    for f in funcs:
        seen.setdefault(dedup_key(f, tol), np.asarray(f, dtype=complex))
    return [seen[k] for k in sorted(seen)]


def _full_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    xi, yi = np.divmod(np.arange(n * n), n)
    return xi, yi


def _equation_and_jacobian(L: np.ndarray, F: np.ndarray, W: np.ndarray, pairs=None):
    """Residuals and Jacobians for a batch ``F`` of shape ``(B, n)``.

    Unknowns are coordinates ``t`` with ``f = f0 + W t``.  Row ``r`` of ``L``
    is the equation at ``pairs[0][r], pairs[1][r]`` (all pairs by default).
    """
    xi, yi = pairs if pairs is not None else _full_pairs(F.shape[1])
    E = F @ L.T - 2.0 * F[:, xi] * F[:, yi]
    # d/dt of f(x) f(y) is W[x] f(y) + f(x) W[y]
    outer = W[None, xi, :] * F[:, yi, None] + F[:, xi, None] * W[None, yi, :]
    J = (L @ W)[None] - 2.0 * outer
    return E, J


def _newton_search(L: np.ndarray, f0: np.ndarray, W: np.ndarray, chunk: int = 2048) -> list[np.ndarray]:
    """Levenberg-Marquardt over the affine set ``f0 + span(W)`` from a fixed grid.

    Every point of the set is assumed symmetric under swapping x and y, so
    only the equations with x <= y are kept.
    """
    k = W.shape[1]
    if k == 0:
        return [f0]
    n = f0.shape[0]
    xi, yi = np.triu_indices(n)
    half = L[xi * n + yi]
    axes = [complex(a, b) for a in GRID for b in GRID]
    starts = np.array(list(itertools.product(axes, repeat=k)), dtype=complex)
    hits = [np.empty((0, n), dtype=complex)]
    for lo in range(0, len(starts), chunk):
        T = _levenberg_marquardt(half, f0, W, starts[lo : lo + chunk].copy(), (xi, yi))
        hits.append(f0[None, :] + T @ W.T)
    F = np.concatenate(hits)
    # bulk pre-dedup on the same rounding grid as dedup_key
    keys = np.rint(np.concatenate([F.real, F.imag], axis=1) / DEDUP_TOL)
    _, first = np.unique(keys, axis=0, return_index=True)
    return list(F[np.sort(first)])


def _levenberg_marquardt(L, f0, W, T, pairs) -> np.ndarray:
    k = W.shape[1]
    E, J = _equation_and_jacobian(L, f0[None, :] + T @ W.T, W, pairs)
    norm = np.max(np.abs(E), axis=1)
    damp = np.full(len(T), 1e-3)
    active = norm >= NEWTON_CONVERGED
    eye = np.eye(k)
    checkpoint = norm.copy()
    for it in range(NEWTON_ITERS):
        if it and it % STALL_WINDOW == 0:
            # stuck at a positive local minimum: stop spending iterations on it
            active &= norm < STALL_RATIO * checkpoint
            checkpoint = norm.copy()
        idx = np.flatnonzero(active)
        if not len(idx):
            break
        Ja, Ea = J[idx], E[idx]
        JH = np.conj(np.swapaxes(Ja, 1, 2))
        A = JH @ Ja + damp[idx, None, None] * eye
        rhs = -(JH @ Ea[:, :, None])
        step = np.linalg.solve(A, rhs)[:, :, 0]
        Tn = T[idx] + step
        En, Jn = _equation_and_jacobian(L, f0[None, :] + Tn @ W.T, W, pairs)
        nn = np.max(np.abs(En), axis=1)
        better = nn < norm[idx]
        acc = idx[better]
        T[acc], E[acc], J[acc], norm[acc] = Tn[better], En[better], Jn[better], nn[better]
        damp[acc] = np.maximum(damp[acc] / 3.0, 1e-15)
        damp[idx[~better]] *= 4.0
        active = (norm >= NEWTON_CONVERGED) & (damp < 1e12)
    return T[norm < NEWTON_CONVERGED * 1e3]


def polish(f: np.ndarray, L: np.ndarray, iters: int = 5) -> np.ndarray:
    """A few Gauss-Newton steps on the full equation in function space."""
    n = f.shape[0]
    eye = np.eye(n)
    best = f
    best_norm = np.max(np.abs(_equation_and_jacobian(L, f[None], eye)[0]))
    for _ in range(iters):
        if best_norm < 1e-14:
            break
        E, J = _equation_and_jacobian(L, best[None], eye)
        step = np.linalg.lstsq(J[0], -E[0], rcond=None)[0]
        cand = best + step
        cn = np.max(np.abs(_equation_and_jacobian(L, cand[None], eye)[0]))
        if cn >= best_norm:
            break
        best, best_norm = cand, cn
    return best


@dataclass
class OracleResult:
    solutions: list[np.ndarray]
    completeness: str
    diagnostics: list[dict] = field(default_factory=list)

    @property
    def nonzero(self) -> list[np.ndarray]:
        return [f for f in self.solutions if np.max(np.abs(f)) > DEFAULT_TOL]

    def to_dict(self) -> dict:
        return {
            "solutions": [[[float(v.real), float(v.imag)] for v in f] for f in self.solutions],
            "completeness": self.completeness,
            "diagnostics": self.diagnostics,
        }


def solve_all(
    spec,
    s: Semigroup,
    tau: TauLike,
    mu: MuLike,
    z0: Optional[int] = None,
    tol: float = DEFAULT_TOL,
    max_order: int = DEFAULT_MAX_ORDER,
) -> OracleResult:
    """All solutions found through the per-base-point eigen analysis.

    ``completeness`` is ``"complete"`` when every nonzero eigenvalue of every
    base matrix has a one-dimensional eigenspace; otherwise the degenerate
    spaces were searched heuristically and the result says so.
    """
    spec = EquationSpec.of(spec)
    n = s.order
    if n > max_order:
        raise OrderCapExceededError(f"order {n} exceeds cap {max_order}")
    L = linear_operator(spec, s, tau, mu, z0)
    sym_perp = L - L[np.arange(n * n).reshape(n, n).T.ravel()]
    candidates: list[np.ndarray] = []
    complete = True
    diagnostics = []
    for w in range(n):
        bm = build_base_matrix(spec, s, tau, mu, z0, w)
        summary = []
        for lam, V in eigen_candidates(bm):
            d = V.shape[1]
            entry = {"eigenvalue": [lam.real, lam.imag], "dim": d, "search": "none"}
            summary.append(entry)
            if abs(lam) < EIG_GROUP_TOL:
                continue
            if d == 1:
                v = V[:, 0]
                if abs(v[w]) > CANON_TOL:
                    candidates.append(lam / (2 * v[w]) * v)
                    entry["search"] = "direct"
                continue
            complete = False
            # swapping x and y leaves 2 f(x) f(y) alone, so solutions obey a
            # linear symmetry condition; search only where it holds
            C = _null_space(sym_perp @ V)
            V = np.linalg.qr(V @ C)[0] if C.shape[1] else V[:, :0]
            entry["reduced_dim"] = V.shape[1]
            if V.shape[1] > MAX_NEWTON_DIM:
                entry["search"] = "skipped"
                continue
            a = V[w, :]
            if np.linalg.norm(a) < CANON_TOL:
                continue
            # affine slice where f(w) = lam / 2
            c0 = np.conj(a) * (lam / 2) / np.vdot(a, a)
            _, _, vh = np.linalg.svd(a[None, :])
            found = dedup(_newton_search(L, V @ c0, V @ vh[1:].conj().T))
            candidates.extend(found)
            entry["search"] = f"newton:{len(found)}"
        diagnostics.append({"w": w, "eigen": summary})
    def res(f):
        return residual(f, spec, s, tau, mu, z0).max_abs

    admitted = [(0.0, np.zeros(n, dtype=complex))]
    # many base points rediscover the same function; polish each one once
    for f in (polish(g, L) for g in dedup(candidates)):
        r = res(f)
        if r < tol:
            snapped = _snap(f)
            rs = res(snapped)
            admitted.append((rs, snapped) if rs < tol else (r, f))
    sols = dedup(_merge_close(admitted))
    sols.sort(key=lambda f: bool(np.max(np.abs(f)) > 0))  # zero first, stable otherwise
    return OracleResult(sols, "complete" if complete else "heuristic-degenerate", diagnostics)


def _snap(f: np.ndarray) -> np.ndarray:
    """Round real and imaginary parts below SNAP_TOL to exact zero."""
    f = f.copy()
    f.real[np.abs(f.real) < SNAP_TOL] = 0.0
    f.imag[np.abs(f.imag) < SNAP_TOL] = 0.0
    return f


def _merge_close(scored: list[tuple[float, np.ndarray]]) -> list[np.ndarray]:
    """Keep the best-residual representative of each cluster of radius SNAP_TOL.

    At a multiple root the residual grows only quadratically, so Newton
    stops while still about sqrt(tol) away and leaves a scatter of copies.
    """
    kept: list[np.ndarray] = []
    for _, f in sorted(scored, key=lambda p: p[0]):
        if all(np.max(np.abs(f - g)) >= SNAP_TOL for g in kept):
            kept.append(f)
    return kept


@dataclass
class Comparison:
    matched: list[np.ndarray]
    oracle_only: list[np.ndarray]
    classified_only: list[np.ndarray]
    verdict: str

    @property
    def confirmed(self) -> bool:
        return self.verdict == "confirmed"

    def to_dict(self) -> dict:
        enc = lambda fs: [[[float(v.real), float(v.imag)] for v in f] for f in fs]  # noqa: E731
        return {
            "matched": enc(self.matched),
            "oracle_only": enc(self.oracle_only),
            "classified_only": enc(self.classified_only),
            "verdict": self.verdict,
        }


def compare_sets(oracle, classified, tol: float = DEDUP_TOL) -> Comparison:
    """Partition the nonzero solutions of both sides by the dedup key.

    ``classified`` may hold ClassifiedSolution objects or raw vectors.
    """
    o_funcs = oracle.solutions if isinstance(oracle, OracleResult) else list(oracle)
    c_funcs = [getattr(c, "f", c) for c in classified]

    def nonzero(fs):
        return {dedup_key(f, tol): np.asarray(f, dtype=complex) for f in fs if np.max(np.abs(f)) > DEFAULT_TOL}

    o = nonzero(o_funcs)
    c = nonzero(c_funcs)
    matched = [o[k] for k in sorted(o.keys() & c.keys())]
    o_only = [o[k] for k in sorted(o.keys() - c.keys())]
    c_only = [c[k] for k in sorted(c.keys() - o.keys())]
    if o_only and c_only:
        verdict = "mismatch"
    elif o_only:
        verdict = "unclassified solution found"
    elif c_only:
        verdict = "constructor error"
    else:
        verdict = "confirmed"
    return Comparison(matched, o_only, c_only, verdict)
