"""Small dense linear-algebra kernels: Jacobi eigendecomposition with
eigenvector output, covector kernels, singular values.

Everything here is desk scale (matrices up to a few dozen rows), so the
implementations favour determinism and witness extraction over speed.
"""

from __future__ import annotations

import numpy as np


class DegenerateFunctional(ValueError):
    """Raised when a covector expected to be nonzero is (numerically) zero."""


def _jacobi_real(a: np.ndarray, tol: float, max_sweeps: int):
    """Cyclic Jacobi rotations on a real symmetric matrix.

    Returns (w, v) with w the diagonal after convergence (unsorted) and v the
    accumulated rotation matrix, columns = eigenvectors.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return np.array([a[0, 0]]), v
    scale = max(float(np.max(np.abs(a))), 1e-300)
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a))).max()
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-2 * tol * scale:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                # smaller-angle root of t^2 + 2*theta*t - 1 = 0
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                gp = a[:, p].copy()
                gq = a[:, q].copy()
                a[:, p] = c * gp - s * gq
                a[:, q] = s * gp + c * gq
                gp = a[p, :].copy()
                gq = a[q, :].copy()
                a[p, :] = c * gp - s * gq
                a[q, :] = s * gp + c * gq
                a[p, q] = 0.0
                a[q, p] = 0.0
                gp = v[:, p].copy()
                gq = v[:, q].copy()
                v[:, p] = c * gp - s * gq
                v[:, q] = s * gp + c * gq
    return np.diag(a).copy(), v


def jacobi_eigh(a, tol: float = 1e-13, max_sweeps: int = 60):
    """Eigendecomposition of a symmetric / hermitian matrix by cyclic Jacobi.

    Returns (w, v): eigenvalues ascending, eigenvectors as matching columns
    of v. A complex hermitian input goes through the standard real 2n x 2n
    embedding [[X, -Y], [Y, X]]; every eigenvalue of the input appears twice
    there and the duplicates are merged on the way back, mapping the real
    vector (u; w) to the complex eigenvector u + i w.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if np.iscomplexobj(a):
        x = a.real
        y = a.imag
        m = np.block([[x, -y], [y, x]])
        w2, v2 = _jacobi_real(m, tol, max_sweeps)
        order = np.argsort(w2, kind="stable")
        w2 = w2[order]
        v2 = v2[:, order]
        n = a.shape[0]
        w = np.empty(n)
        v = np.empty((n, n), dtype=complex)
        for i in range(n):
            w[i] = 0.5 * (w2[2 * i] + w2[2 * i + 1])
            col = v2[:, 2 * i]
            v[:, i] = col[:n] + 1j * col[n:]
            nrm = np.linalg.norm(v[:, i])
            if nrm > 0:
                v[:, i] /= nrm
        return w, v
    w, v = _jacobi_real(a, tol, max_sweeps)
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def kernel_basis(w, tol: float = 1e-12) -> np.ndarray:
    """Basis of the null space of the covector w: y -> sum_j w_j y_j.

    Returns an (n, n-1) array whose columns span {y : w . y = 0}, built by
    eliminating against the largest-modulus entry of w. Raises
    DegenerateFunctional when w is numerically zero.
    """
    w = np.asarray(w).ravel()
    n = w.size
    piv = int(np.argmax(np.abs(w)))
    if abs(w[piv]) <= tol:
        raise DegenerateFunctional("covector is numerically zero")
    dtype = complex if np.iscomplexobj(w) else float
    basis = np.zeros((n, n - 1), dtype=dtype)
    col = 0
    for j in range(n):
        if j == piv:
            continue
        basis[j, col] = 1.0
        basis[piv, col] = -w[j] / w[piv]
        col += 1
    return basis


def singular_values(t) -> np.ndarray:
    """Singular values of a square array, descending.

    The primary route is LAPACK's SVD; jacobi_eigh on t* t is kept as the
    independent cross-check in the test suite.
    """
    t = np.asarray(t)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError("expected a square array")
    if not np.all(np.isfinite(t)):
        raise ValueError("non-finite entries")
    return np.linalg.svd(t, compute_uv=False)


def singular_values_by_gram(t, tol: float = 1e-13) -> np.ndarray:
    """Singular values via jacobi_eigh of t* t (independent of the SVD path)."""
    t = np.asarray(t)
    gram = t.conj().T @ t
    w, _ = jacobi_eigh(gram, tol=tol)
    return np.sqrt(np.clip(w, 0.0, None))[::-1]


def hermitian_part(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.conj().T)


def invertibility(a, tol: float = 1e-10):
    """(invertible, condition_number, smallest_sv, largest_sv) of a.

    The threshold is relative to the largest singular value, so uniformly
    scaled matrices keep their verdict.
    """
    sv = singular_values(a)
    smax = float(sv[0])
    smin = float(sv[-1])
    if smin <= tol * smax:
        return False, np.inf, smin, smax
    return True, smax / smin, smin, smax
