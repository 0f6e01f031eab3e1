"""Convex minimization toolkit behind the orthogonality and map verifiers.

Four tools: golden-section search on a bracket, minimization of a norm over
an affine slice x + span(basis), extremization of the gain of a linear map
between two normed spaces, and the dense simplex re-exported from
normlab.simplex.

Routing policy for the subspace minimizer: polyhedral norms always go through
an exact LP reformulation (nonsmooth descent is never trusted), smooth norms
(p in (1, inf), quadratic) get gradient or closed-form treatment, and
everything else falls back to a seeded multi-restart pattern search whose
result is an upper bound flagged as non-certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import norms as nr
from .simplex import lp_solve  # noqa: F401  (re-exported: the LP backend lives here too)

GOLDEN_TOL = 1e-8
MULTI_TOL = 1e-6
LP_TOL = 1e-10

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class OptimError(RuntimeError):
    pass


@dataclass
class MinResult:
    argmin: object
    value: float
    iterations: int
    converged: bool
    method: str
    certified: bool = False


def minimize_1d_convex(objective: Callable[[float], float], bracket, tol: float = GOLDEN_TOL,
                       max_iter: int = 400) -> MinResult:
    """Golden-section search for a convex objective on [a, b].

    Returns the best evaluated point; for flat minima any point of the flat
    region may be reported. Non-finite objective values abort.
    """
    a, b = float(bracket[0]), float(bracket[1])
    if not a < b:
        raise OptimError(f"empty bracket [{a}, {b}]")

    def f(t: float) -> float:
        v = float(objective(t))
        if not math.isfinite(v):
            raise OptimError(f"non-finite objective value {v!r} at {t!r}")
        return v

    best_x, best_f = a, f(a)
    for t in (b, 0.5 * (a + b)):
        ft = f(t)
        if ft < best_f:
            best_x, best_f = t, ft

    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while (b - a) > tol and it < max_iter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
            if fc < best_f:
                best_x, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
            if fd < best_f:
                best_x, best_f = d, fd
        it += 1
    return MinResult(argmin=best_x, value=best_f, iterations=it,
                     converged=(b - a) <= tol, method="golden-section")


def _basis_matrix(basis) -> np.ndarray:
    """Accepts a list of vectors or an (n, m) array whose columns are the basis."""
    if isinstance(basis, np.ndarray) and basis.ndim == 2:
        b = basis
    else:
        vecs = [np.asarray(v).ravel() for v in basis]
        if not vecs:
            return np.empty((0, 0))
        b = np.column_stack(vecs)
    if b.shape[1] == 0:
        return b
    sv = np.linalg.svd(b, compute_uv=False)
    if sv.size == 0 or sv[-1] <= 1e-10 * sv[0]:
        raise OptimError("basis is not linearly independent")
    return b.astype(complex) if np.iscomplexobj(b) else b.astype(float)


def _real_stack(b: np.ndarray, x: np.ndarray):
    """Columns spanning the same set over real coefficients; complex spans
    contribute b and i*b."""
    if np.iscomplexobj(b) or np.iscomplexobj(x):
        return np.hstack([b.astype(complex), 1j * b.astype(complex)])
    return b


def _lp_min_rows(rows: np.ndarray, alpha: np.ndarray, m: np.ndarray):
    """Exact min over c of max_i |alpha_i + (m c)_i| via the simplex.

    Variables: t, c+, c-, slacks for both inequality families.
    """
    k = rows.shape[0]
    nc = m.shape[1]
    ncols = 1 + 2 * nc + 2 * k
    a = np.zeros((2 * k, ncols))
    b = np.zeros(2 * k)
    # alpha + m c <= t  ->  m c+ - m c- - t + s = -alpha
    a[:k, 0] = -1.0
    a[:k, 1:1 + nc] = m
    a[:k, 1 + nc:1 + 2 * nc] = -m
    a[np.arange(k), 1 + 2 * nc + np.arange(k)] = 1.0
    b[:k] = -alpha
    # -(alpha + m c) <= t  ->  -m c+ + m c- - t + s' = alpha
    a[k:, 0] = -1.0
    a[k:, 1:1 + nc] = -m
    a[k:, 1 + nc:1 + 2 * nc] = m
    a[k + np.arange(k), 1 + 2 * nc + k + np.arange(k)] = 1.0
    b[k:] = alpha
    cost = np.zeros(ncols)
    cost[0] = 1.0
    sol = lp_solve(cost, a, b, tol=LP_TOL)
    coeffs = sol.x[1:1 + nc] - sol.x[1 + nc:1 + 2 * nc]
    return sol.value, coeffs, sol.iterations


def _lp_min_vertices(w: np.ndarray, x: np.ndarray, b: np.ndarray):
    """Exact min over c of gauge(x + b c) for the paired vertex set w."""
    kw, n = w.shape
    nc = b.shape[1]
    ncols = 2 * kw + 2 * nc
    a = np.zeros((n, ncols))
    a[:, :kw] = w.T
    a[:, kw:2 * kw] = -w.T
    a[:, 2 * kw:2 * kw + nc] = -b
    a[:, 2 * kw + nc:] = b
    cost = np.zeros(ncols)
    cost[: 2 * kw] = 1.0
    sol = lp_solve(cost, a, x, tol=LP_TOL)
    coeffs = sol.x[2 * kw:2 * kw + nc] - sol.x[2 * kw + nc:]
    return sol.value, coeffs, sol.iterations


def _descent(norm: nr.NormSpec, x: np.ndarray, b: np.ndarray, tol: float,
             stop_below: Optional[float], max_iter: int = 500):
    """Gradient descent with backtracking for smooth norms; the gradient of
    the norm at v is its norming functional."""
    nc = b.shape[1]
    c = np.zeros(nc)
    v = x.copy()
    val = nr.norm_eval(norm, v)
    it = 0
    while it < max_iter:
        if stop_below is not None and val < stop_below:
            return c, val, it, False
        if val <= tol:
            return c, val, it, True
        g = nr.norming_functional(norm, v)
        grad = np.array([np.real(np.sum(g * b[:, j])) for j in range(nc)])
        gn = np.linalg.norm(grad)
        if gn <= tol * max(1.0, val):
            return c, val, it, True
        step = 1.0
        while step > 1e-14:
            cand = c - step * grad
            vc = x + b @ cand
            fc = nr.norm_eval(norm, vc)
            if fc <= val - 1e-4 * step * gn * gn:
                c, v, val = cand, vc, fc
                break
            step *= 0.5
        else:
            return c, val, it, True
        it += 1
    return c, val, it, False


def _pattern_search(fun_many, c0: np.ndarray, tol: float, stop_below: Optional[float],
                    h0: float = 0.5, max_rounds: int = 400):
    """Coordinate pattern search; fun_many evaluates a whole batch of
    coefficient rows at once so each round costs one vectorized call."""
    c = c0.copy()
    val = float(fun_many(c[None, :])[0])
    h = h0
    m = c.size
    steps = np.vstack([np.eye(m), -np.eye(m)])
    rounds = 0
    evals = 0
    while h > 1e-2 * tol and rounds < max_rounds:
        if stop_below is not None and val < stop_below:
            return c, val, evals, False
        cands = c[None, :] + h * steps
        vals = fun_many(cands)
        evals += vals.size
        i = int(np.argmin(vals))
        if vals[i] < val - 1e-15:
            c, val = cands[i], float(vals[i])
        else:
            h *= 0.5
        rounds += 1
    return c, val, evals, h <= 1e-2 * tol


def minimize_over_subspace(norm: nr.NormSpec, x, basis, tol: float = MULTI_TOL,
                           seed: int = 0, stop_below: Optional[float] = None) -> MinResult:
    """min over coefficients c of norm(x + sum_j c_j basis_j).

    Exact LP for polyhedral norms, closed form / descent for smooth ones,
    seeded multi-restart pattern search otherwise (upper bound only).
    `stop_below` allows an early exit once the value certifies a failure.
    """
    x = np.asarray(x).ravel()
    x = x.astype(complex) if np.iscomplexobj(x) else x.astype(float)
    if x.size != norm.dim:
        raise nr.DimensionMismatch(f"x has dim {x.size}, norm expects {norm.dim}")
    b = _basis_matrix(basis)
    nx = nr.norm_eval(norm, x)
    if b.shape[1] == 0:
        return MinResult(np.zeros(0), nx, 0, True, "trivial", certified=True)
    if nx == 0.0:
        return MinResult(np.zeros(b.shape[1]), 0.0, 0, True, "trivial", certified=True)

    rows = nr.polyhedral_rows(norm)
    verts = nr.polyhedral_vertices(norm)
    if rows is not None and not np.iscomplexobj(x):
        val, coeffs, it = _lp_min_rows(rows, rows @ x, rows @ b)
        return MinResult(coeffs, min(val, nx), it, True, "exact-lp", certified=True)
    if verts is not None and not np.iscomplexobj(x):
        w = nr._reduce_sign_pairs(verts)
        val, coeffs, it = _lp_min_vertices(w, x, b)
        return MinResult(coeffs, min(val, nx), it, True, "exact-lp", certified=True)

    if isinstance(norm, nr.Quadratic) or (isinstance(norm, nr.PNorm) and norm.p == 2.0):
        a = norm.a if isinstance(norm, nr.Quadratic) else np.eye(norm.dim)
        gram = b.conj().T @ a @ b
        rhs = -(b.conj().T @ a @ x)
        c = np.linalg.solve(gram, rhs)
        v = x + b @ c
        val = nr.norm_eval(norm, v)
        return MinResult(c, min(val, nx), 1, True, "exact-solve", certified=True)

    br = _real_stack(b, x)
    if nr.is_smooth(norm):
        c, val, it, conv = _descent(norm, x.astype(br.dtype), br, tol, stop_below)
        coeffs = c if br is b else c[: b.shape[1]] + 1j * c[b.shape[1]:]
        return MinResult(coeffs, min(val, nx), it, conv, "smooth-descent")

    rng = np.random.default_rng(seed)
    fun_many = lambda cs: nr.norm_eval_many(norm, x[None, :] + cs @ br.T)
    best_c, best_v, conv = None, np.inf, False
    starts = [np.zeros(br.shape[1])]
    starts += [0.5 * nx * rng.standard_normal(br.shape[1]) for _ in range(3)]
    evals = 0
    for c0 in starts:
        c, val, ev, cv = _pattern_search(fun_many, c0, tol, stop_below, h0=0.5 * max(nx, 1.0))
        evals += ev
        if val < best_v:
            best_c, best_v, conv = c, val, cv
        if stop_below is not None and best_v < stop_below:
            break
    coeffs = best_c if br is b else best_c[: b.shape[1]] + 1j * best_c[b.shape[1]:]
    return MinResult(coeffs, min(best_v, nx), evals, conv, "pattern-search")


# ---------------------------------------------------------------------------
# gain extremization


@dataclass
class GainResult:
    low: float
    high: float
    arg_min: np.ndarray
    arg_max: np.ndarray
    samples: int
    exact_low: bool = False
    exact_high: bool = False
    notes: list = field(default_factory=list)


def _sign_vectors(dim: int) -> np.ndarray:
    if dim > 8:
        return np.empty((0, dim))
    out = np.ones((2 ** (dim - 1), dim)) if dim > 0 else np.empty((0, dim))
    for i in range(out.shape[0]):
        for j in range(1, dim):
            if (i >> (j - 1)) & 1:
                out[i, j] = -1.0
    return out


def _refine_ratio(ratio_fn, d0: np.ndarray, maximize: bool, rounds: int = 48):
    d = d0.copy()
    best = ratio_fn(d)
    sgn = 1.0 if maximize else -1.0
    h = 0.25 * float(np.max(np.abs(d)) or 1.0)
    for _ in range(rounds):
        improved = False
        for j in range(d.size):
            for s in (1.0, -1.0):
                cand = d.copy()
                cand[j] += s * h
                if np.max(np.abs(cand)) < 1e-12:
                    continue
                r = ratio_fn(cand)
                if sgn * (r - best) > 1e-15:
                    best, d = r, cand
                    improved = True
        if not improved:
            h *= 0.5
            if h < 1e-11:
                break
    return best, d


def extremize_gain(a, domain_norm: nr.NormSpec, codomain_norm: nr.NormSpec,
                   samples: int = 2000, seed: int = 0, refine: bool = True) -> GainResult:
    """Extremes of codomain_norm(a x) over the unit sphere of domain_norm.

    Sampled estimates refined by pattern search, sharpened by deterministic
    probes: basis and sign directions, polytope vertices (max side is then
    exact), preimages of dual-ball vertices (min side exact for row-described
    norms with invertible a), and a closed eigenvalue form when both norms are
    quadratic. Candidate values are all true ratios, so fusing them never
    overshoots the true extremes.
    """
    a = np.asarray(a)
    a = a.astype(complex) if np.iscomplexobj(a) else a.astype(float)
    n = domain_norm.dim
    if a.shape != (n, n) or codomain_norm.dim != n:
        raise nr.DimensionMismatch("map and norms have inconsistent dimensions")

    notes = []
    exact_low = exact_high = False

    def ratio_many(xs: np.ndarray) -> np.ndarray:
        den = nr.norm_eval_many(domain_norm, xs)
        num = nr.norm_eval_many(codomain_norm, xs @ a.T)
        good = den > 1e-300
        return np.where(good, num / np.where(good, den, 1.0), np.inf)

    def ratio_one(x: np.ndarray) -> float:
        return float(ratio_many(x[None, :])[0])

    def _quad_matrix(spec):
        if isinstance(spec, nr.Quadratic):
            return spec.a
        if isinstance(spec, nr.PNorm) and spec.p == 2.0:
            return np.eye(n)
        return None

    qd, qc = _quad_matrix(domain_norm), _quad_matrix(codomain_norm)
    if qd is not None and qc is not None:
        gram = a.conj().T @ qc @ a
        ell = np.linalg.cholesky(qd)
        k = np.linalg.solve(ell, np.linalg.solve(ell, gram.conj().T).conj().T)
        w, v = np.linalg.eigh(0.5 * (k + k.conj().T))
        lo_vec = np.linalg.solve(ell.conj().T, v[:, 0])
        hi_vec = np.linalg.solve(ell.conj().T, v[:, -1])
        lo_vec /= nr.norm_eval(domain_norm, lo_vec)
        hi_vec /= nr.norm_eval(domain_norm, hi_vec)
        lo = math.sqrt(max(w[0], 0.0))
        hi = math.sqrt(max(w[-1], 0.0))
        return GainResult(lo, hi, lo_vec, hi_vec, 0, True, True,
                          ["closed eigenvalue form for quadratic/quadratic pair"])

    cands = [np.eye(n)]
    if not np.iscomplexobj(a):
        sv = _sign_vectors(n)
        if sv.size:
            cands.append(sv)
    rows = nr.polyhedral_rows(domain_norm)
    verts = nr.polyhedral_vertices(domain_norm)
    if verts is not None and not np.iscomplexobj(a):
        cands.append(verts)
        exact_high = True
        notes.append("sup attained on the known unit-ball vertices")
    if rows is not None and not np.iscomplexobj(a):
        sva = np.linalg.svd(a, compute_uv=False)
        if sva[-1] > 1e-12 * sva[0]:
            cands.append(np.linalg.solve(a, rows.T).T)
            exact_low = True
            notes.append("inf attained on preimages of the dual-ball vertices")
            if rows.shape[0] == n:
                signs = _sign_vectors(n)
                if signs.size:
                    cands.append(np.linalg.solve(rows, signs.T).T)
                    exact_high = True
                    notes.append("sup attained on the cube-corner vertices of the row ball")
        else:
            _, _, vh = np.linalg.svd(a)
            cands.append(vh[-1][None, :])
            exact_low = True
            notes.append("map is singular; kernel direction realizes gain 0")

    x_sampled = nr.sample_sphere(domain_norm, samples, seed,
                                 field="complex" if np.iscomplexobj(a) else "real")
    cands.append(x_sampled)
    cand = np.vstack([np.atleast_2d(c) for c in cands])
    vals = ratio_many(cand)
    i_lo = int(np.argmin(vals))
    i_hi = int(np.argmax(vals))
    lo, hi = float(vals[i_lo]), float(vals[i_hi])
    arg_lo, arg_hi = cand[i_lo].copy(), cand[i_hi].copy()

    if refine and not (exact_low and exact_high):
        if np.iscomplexobj(cand):
            def real_ratio(d):
                return ratio_one(d[:n] + 1j * d[n:])
            pack = lambda z: np.concatenate([z.real, z.imag])
            unpack = lambda d: d[:n] + 1j * d[n:]
        else:
            real_ratio = ratio_one
            pack = lambda z: z
            unpack = lambda d: d
        order = np.argsort(vals)
        finite = [i for i in order if math.isfinite(vals[i])]
        for idx in finite[:3]:
            if exact_low:
                break
            r, d = _refine_ratio(real_ratio, pack(cand[idx]), maximize=False)
            if r < lo:
                lo, arg_lo = r, unpack(d)
        for idx in finite[-3:]:
            if exact_high:
                break
            r, d = _refine_ratio(real_ratio, pack(cand[idx]), maximize=True)
            if r > hi:
                hi, arg_hi = r, unpack(d)

    arg_lo = arg_lo / nr.norm_eval(domain_norm, arg_lo)
    arg_hi = arg_hi / nr.norm_eval(domain_norm, arg_hi)
    return GainResult(lo, hi, arg_lo, arg_hi, samples, exact_low, exact_high, notes)
