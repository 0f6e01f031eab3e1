"""Dense two-phase simplex for the small linear programs used by the gauge
and orthogonality paths.

Standard form only: minimize c.x subject to a @ x = b, x >= 0. Bland's rule
on both the entering and leaving choices keeps the pivot sequence
deterministic and cycle-free; problem sizes here stay below ~60 variables so
a dense tableau is plenty.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class LPError(RuntimeError):
    pass


class LPInfeasible(LPError):
    pass


class LPUnbounded(LPError):
    pass


@dataclass
class LPSolution:
    x: np.ndarray
    value: float
    dual: np.ndarray
    basis: list
    iterations: int


def _pivot(tab: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    for i in range(tab.shape[0]):
        if i != row and tab[i, col] != 0.0:
            tab[i] -= tab[i, col] * tab[row]
    basis[row] = col


def _iterate(tab, basis, cost, allowed, tol, max_iter):
    """Run simplex iterations on the tableau for the given cost vector.

    `allowed` marks columns that may enter the basis. Returns the iteration
    count; raises LPUnbounded when a descent column has no blocking row.
    """
    m = tab.shape[0]
    iters = 0
    while True:
        reduced = cost - cost[basis] @ tab[:, :-1]
        entering = -1
        for j in range(reduced.size):
            if allowed[j] and reduced[j] < -tol:
                entering = j
                break
        if entering < 0:
            return iters
        ratios_row = -1
        best = np.inf
        best_var = np.inf
        for i in range(m):
            aij = tab[i, entering]
            if aij > tol:
                r = tab[i, -1] / aij
                if r < best - tol or (abs(r - best) <= tol and basis[i] < best_var):
                    best = r
                    best_var = basis[i]
                    ratios_row = i
        if ratios_row < 0:
            raise LPUnbounded("objective unbounded below")
        _pivot(tab, basis, ratios_row, entering)
        iters += 1
        if iters > max_iter:
            raise LPError("iteration limit exceeded")


def lp_solve(c, a, b, tol: float = 1e-10, max_iter: int = 20000) -> LPSolution:
    """Minimize c.x subject to a @ x = b, x >= 0.

    Raises LPInfeasible / LPUnbounded; both indicate caller bugs for the
    problems constructed in this package.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float).ravel()
    c = np.asarray(c, dtype=float).ravel()
    m, n = a.shape
    if c.size != n or b.size != m:
        raise ValueError("inconsistent LP dimensions")

    a = a.copy()
    b = b.copy()
    neg = b < 0
    a[neg] *= -1.0
    b[neg] *= -1.0

    # phase 1: artificial identity basis
    tab = np.hstack([a, np.eye(m), b[:, None]])
    basis = np.arange(n, n + m)
    cost1 = np.concatenate([np.zeros(n), np.ones(m)])
    allowed = np.ones(n + m, dtype=bool)
    it1 = _iterate(tab, basis, cost1, allowed, tol, max_iter)
    feas = cost1[basis] @ tab[:, -1]
    if feas > 1e3 * tol * max(1.0, np.abs(b).max()):
        raise LPInfeasible(f"phase-1 optimum {feas:.3e} > 0")

    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            for j in range(n):
                if abs(tab[i, j]) > tol:
                    _pivot(tab, basis, i, j)
                    break

    # phase 2: original costs, artificial columns barred
    allowed[n:] = False
    cost2 = np.concatenate([c, np.zeros(m)])
    it2 = _iterate(tab, basis, cost2, allowed, tol, max_iter)

    x = np.zeros(n)
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i, -1]
    value = float(c @ x)

    # dual from the final basis columns of [a | I]
    full = np.hstack([a, np.eye(m)])
    bmat = full[:, basis]
    cb = cost2[basis]
    try:
        dual = np.linalg.solve(bmat.T, cb)
    except np.linalg.LinAlgError:
        dual, *_ = np.linalg.lstsq(bmat.T, cb, rcond=None)
    dual[neg] *= -1.0
    return LPSolution(x=x, value=value, dual=dual, basis=list(basis), iterations=it1 + it2)
