"""Closed-form norms on R^n and C^n with structural dual norms.

A norm is a small spec record (p-norm, max of functionals, polytope gauge,
direct sum, Schatten-1/inf, quadratic form). Evaluation, duality, unit-sphere
sampling and norming functionals are implemented per kind. Polyhedral gauges
reduce to small linear programs; paired-vertex layouts get exact fast paths
(square solve, one-dimensional kink scan) that the simplex cross-validates in
the test suite.

Duals are always computed structurally, never by black-box maximization:
p <-> p/(p-1) with the (1, inf) pair handled symbolically, max-of-functionals
<-> polytope of the same rows, direct sums part by part, Schatten-1 <->
Schatten-inf, quadratic A <-> conj(inv(A)).

Functionals are covectors paired bilinearly: <f, x> = sum_j f_j x_j. Any
conjugation belongs to the map producing the covector, not to the pairing.
The two polyhedral kinds accept real data only.
"""

from __future__ import annotations

import json
import math
from typing import Sequence

import numpy as np

from .simplex import lp_solve

INF = math.inf


class NormSpecError(ValueError):
    pass


class DimensionMismatch(NormSpecError):
    pass


def conjugate_exponent(p: float) -> float:
    if p == 1:
        return INF
    if p == INF:
        return 1.0
    return p / (p - 1.0)


def _as_real_matrix(rows, name: str) -> np.ndarray:
    m = np.asarray(rows, dtype=float)
    if m.ndim != 2:
        raise NormSpecError(f"{name} must be a 2-d array")
    if not np.all(np.isfinite(m)):
        raise NormSpecError(f"{name} has non-finite entries")
    return m


def _rank(m: np.ndarray) -> int:
    sv = np.linalg.svd(m, compute_uv=False)
    if sv.size == 0:
        return 0
    return int(np.sum(sv > 1e-10 * sv[0]))


def _reduce_sign_pairs(rows: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """One representative per +-pair, duplicates dropped."""
    kept: list[np.ndarray] = []
    scale = max(float(np.max(np.abs(rows))), 1.0)
    for r in rows:
        dup = any(
            np.max(np.abs(r - k)) <= tol * scale or np.max(np.abs(r + k)) <= tol * scale
            for k in kept
        )
        if not dup:
            kept.append(r)
    return np.array(kept)


class NormSpec:
    """Base class for norm descriptions; subclasses hold validated data."""

    kind: str
    dim: int

    def __repr__(self):
        return f"{type(self).__name__}({self.to_dict()})"

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def to_dict(self) -> dict:
        raise NotImplementedError


class PNorm(NormSpec):
    kind = "p"

    def __init__(self, dim: int, p: float):
        if dim < 1:
            raise NormSpecError("dim must be >= 1")
        p = float(p)
        if not (p >= 1.0):
            raise NormSpecError(f"invalid p {p} < 1")
        self.dim = int(dim)
        self.p = p

    def to_dict(self):
        return {"kind": "p", "dim": self.dim, "p": "inf" if self.p == INF else self.p}


def euclid(dim: int) -> PNorm:
    return PNorm(dim, 2.0)


class MaxAbsFunctionals(NormSpec):
    """max_i |<a_i, x>| over a spanning family of real covectors."""

    kind = "max_abs"

    def __init__(self, rows):
        m = _as_real_matrix(rows, "rows")
        if _rank(m) < m.shape[1]:
            raise NormSpecError("rows do not span the space; norm would be degenerate")
        self.rows = m
        self.dim = m.shape[1]

    def to_dict(self):
        return {"kind": "max_abs", "rows": self.rows.tolist()}


class PolytopeVertices(NormSpec):
    """Gauge of the convex hull of a symmetric, spanning vertex set."""

    kind = "polytope"

    def __init__(self, vertices):
        m = _as_real_matrix(vertices, "vertices")
        scale = max(float(np.max(np.abs(m))), 1.0)
        for v in m:
            if not any(np.max(np.abs(v + w)) <= 1e-9 * scale for w in m):
                raise NormSpecError("vertex set is not symmetric (missing -v)")
        if _rank(m) < m.shape[1]:
            raise NormSpecError("vertices do not span the space")
        self.vertices = m
        self.dim = m.shape[1]
        self._solver = None

    def to_dict(self):
        return {"kind": "polytope", "vertices": self.vertices.tolist()}

    def solver(self) -> "GaugeSolver":
        if self._solver is None:
            self._solver = GaugeSolver(self.vertices)
        return self._solver


class DirectSum(NormSpec):
    """Outer p-norm of the block norms of consecutive slices."""

    kind = "direct_sum"

    def __init__(self, outer_p: float, parts: Sequence[NormSpec]):
        outer_p = float(outer_p)
        if not (outer_p >= 1.0):
            raise NormSpecError(f"invalid outer_p {outer_p} < 1")
        parts = tuple(parts)
        if not parts:
            raise NormSpecError("direct sum needs at least one part")
        self.outer_p = outer_p
        self.parts = parts
        self.dim = sum(p.dim for p in parts)
        self.offsets = np.cumsum([0] + [p.dim for p in parts])

    def slices(self):
        return [slice(self.offsets[i], self.offsets[i + 1]) for i in range(len(self.parts))]

    def to_dict(self):
        return {
            "kind": "direct_sum",
            "outer_p": "inf" if self.outer_p == INF else self.outer_p,
            "parts": [p.to_dict() for p in self.parts],
        }


class SchattenOne(NormSpec):
    """Sum of singular values of the n x n array read row-major from the vector."""

    kind = "schatten1"

    def __init__(self, n: int):
        if n < 1:
            raise NormSpecError("n must be >= 1")
        self.n = int(n)
        self.dim = self.n * self.n

    def to_dict(self):
        return {"kind": "schatten1", "n": self.n}


class SchattenInf(NormSpec):
    """Largest singular value of the n x n array read row-major from the vector."""

    kind = "schatten_inf"

    def __init__(self, n: int):
        if n < 1:
            raise NormSpecError("n must be >= 1")
        self.n = int(n)
        self.dim = self.n * self.n

    def to_dict(self):
        return {"kind": "schatten_inf", "n": self.n}


class Quadratic(NormSpec):
    """sqrt(x^H A x) for a hermitian positive-definite A."""

    kind = "quadratic"

    def __init__(self, a):
        m = np.asarray(a)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NormSpecError("a must be square")
        if not np.all(np.isfinite(m if not np.iscomplexobj(m) else m.view(float))):
            raise NormSpecError("a has non-finite entries")
        m = m.astype(complex) if np.iscomplexobj(m) else m.astype(float)
        scale = max(float(np.max(np.abs(m))), 1e-300)
        if np.max(np.abs(m - m.conj().T)) > 1e-10 * scale:
            raise NormSpecError("a is not hermitian")
        m = 0.5 * (m + m.conj().T)
        w = np.linalg.eigvalsh(m)
        if w[0] <= 1e-10 * max(w[-1], 0.0):
            raise NormSpecError("a is not positive definite")
        self.a = m
        self.dim = m.shape[0]

    def to_dict(self):
        return {"kind": "quadratic", "a": _encode_matrix(self.a)}


# ---------------------------------------------------------------------------
# gauge machinery for polytope norms


class GaugeSolver:
    """Gauge of conv(vertices) for a symmetric spanning set.

    After reducing the set to one representative per +-pair (W, k x n), the
    gauge of f is min ||c||_1 over solutions of W^T c = f. A square W gives a
    unique solve, k = n + 1 leaves a one-dimensional family whose l1 minimum
    sits on a kink, and anything wider goes through the simplex.
    """

    def __init__(self, vertices: np.ndarray):
        self.vertices = np.asarray(vertices, dtype=float)
        w = _reduce_sign_pairs(self.vertices)
        self.w = w
        k, n = w.shape
        self.n = n
        self.mode = "lp"
        if k == n:
            cond = np.linalg.cond(w)
            if cond < 1e9:
                self.mode = "solve"
                self._inv_wt = np.linalg.inv(w.T)
        elif k == n + 1:
            u, sv, vt = np.linalg.svd(w.T)
            if sv[n - 1] > 1e-10 * sv[0]:
                self.mode = "kink"
                self._pinv = np.linalg.pinv(w.T)
                self._null = vt[-1]

    def gauge_many(self, f: np.ndarray) -> np.ndarray:
        f = np.atleast_2d(np.asarray(f, dtype=float))
        if self.mode == "solve":
            c = self._inv_wt @ f.T
            return np.sum(np.abs(c), axis=0)
        if self.mode == "kink":
            c0 = f @ self._pinv.T
            z = self._null
            live = np.abs(z) > 1e-13
            with np.errstate(divide="ignore", invalid="ignore"):
                t = np.where(live, -c0 / z, 0.0)
            # candidate values ||c0 + t_j z||_1 for every kink t_j
            vals = np.sum(np.abs(c0[:, None, :] + t[:, :, None] * z), axis=2)
            vals[:, ~live] = np.inf
            return np.min(vals, axis=1)
        return np.array([self._gauge_lp(x) for x in f])

    def gauge(self, f) -> float:
        return float(self.gauge_many(np.asarray(f, dtype=float)[None, :])[0])

    def _gauge_lp(self, f: np.ndarray) -> float:
        a = np.hstack([self.w.T, -self.w.T])
        c = np.ones(a.shape[1])
        return lp_solve(c, a, f).value

    def norming_dual(self, f: np.ndarray) -> np.ndarray:
        """Covector y with <y, f> = gauge(f) and max_i |<w_i, y>| = 1."""
        f = np.asarray(f, dtype=float)
        if self.mode == "solve":
            c = self._inv_wt @ f
            return np.linalg.solve(self.w, np.sign(c))
        a = np.hstack([self.w.T, -self.w.T])
        cost = np.ones(a.shape[1])
        return lp_solve(cost, a, f).dual


def gauge_lp(points, f) -> float:
    """min { t >= 0 : f in t * conv(points) } by linear programming.

    The point set must be symmetric and spanning; this is the reference LP
    path, independent of the paired fast paths in GaugeSolver.
    """
    pts = PolytopeVertices(points).vertices  # reuse validation
    f = np.asarray(f, dtype=float).ravel()
    if f.size != pts.shape[1]:
        raise DimensionMismatch("functional dimension does not match the points")
    if np.max(np.abs(f)) == 0.0:
        return 0.0
    c = np.ones(pts.shape[0])
    return lp_solve(c, pts.T, f).value


# ---------------------------------------------------------------------------
# evaluation


def _check_vector(spec: NormSpec, v) -> np.ndarray:
    x = np.asarray(v)
    if x.ndim != 1:
        x = x.ravel()
    if x.size != spec.dim:
        raise DimensionMismatch(f"vector has dim {x.size}, spec expects {spec.dim}")
    x = x.astype(complex) if np.iscomplexobj(x) else x.astype(float)
    if not np.all(np.isfinite(x.view(float))):
        raise NormSpecError("vector has non-finite entries")
    if np.iscomplexobj(x) and spec.kind in ("max_abs", "polytope"):
        raise NormSpecError(f"{spec.kind} norms accept real vectors only")
    return x


def _pnorm_rows(x: np.ndarray, p: float) -> np.ndarray:
    ax = np.abs(x)
    if p == INF:
        return ax.max(axis=-1)
    if p == 1.0:
        return ax.sum(axis=-1)
    if p == 2.0:
        return np.sqrt(np.sum(ax * ax, axis=-1))
    m = ax.max(axis=-1)
    safe = np.where(m > 0.0, m, 1.0)
    return safe * np.sum((ax / safe[..., None]) ** p, axis=-1) ** (1.0 / p) * (m > 0.0)


def norm_eval_many(spec: NormSpec, xs: np.ndarray) -> np.ndarray:
    """Norms of the rows of xs (shape (N, dim)) under spec."""
    xs = np.atleast_2d(np.asarray(xs))
    if xs.shape[1] != spec.dim:
        raise DimensionMismatch(f"rows have dim {xs.shape[1]}, spec expects {spec.dim}")
    if np.iscomplexobj(xs) and spec.kind in ("max_abs", "polytope"):
        raise NormSpecError(f"{spec.kind} norms accept real vectors only")
    if isinstance(spec, PNorm):
        return _pnorm_rows(xs, spec.p)
    if isinstance(spec, MaxAbsFunctionals):
        return np.max(np.abs(xs @ spec.rows.T), axis=1)
    if isinstance(spec, PolytopeVertices):
        return spec.solver().gauge_many(xs)
    if isinstance(spec, DirectSum):
        blocks = np.stack(
            [norm_eval_many(part, xs[:, sl]) for part, sl in zip(spec.parts, spec.slices())],
            axis=1,
        )
        return _pnorm_rows(blocks, spec.outer_p)
    if isinstance(spec, (SchattenOne, SchattenInf)):
        mats = xs.reshape(xs.shape[0], spec.n, spec.n)
        sv = np.linalg.svd(mats, compute_uv=False)
        return sv.sum(axis=1) if isinstance(spec, SchattenOne) else sv[:, 0]
    if isinstance(spec, Quadratic):
        q = np.einsum("ni,ij,nj->n", xs.conj(), spec.a, xs).real
        return np.sqrt(np.clip(q, 0.0, None))
    raise NormSpecError(f"unknown spec kind {spec!r}")


def norm_eval(spec: NormSpec, v) -> float:
    """The norm of v under spec; absolutely homogeneous, zero only at zero."""
    x = _check_vector(spec, v)
    return float(norm_eval_many(spec, x[None, :])[0])


def dual(spec: NormSpec) -> NormSpec:
    """Structural dual norm spec (the norm of the polar unit ball)."""
    if isinstance(spec, PNorm):
        return PNorm(spec.dim, conjugate_exponent(spec.p))
    if isinstance(spec, MaxAbsFunctionals):
        w = _reduce_sign_pairs(spec.rows)
        return PolytopeVertices(np.vstack([w, -w]))
    if isinstance(spec, PolytopeVertices):
        return MaxAbsFunctionals(_reduce_sign_pairs(spec.vertices))
    if isinstance(spec, DirectSum):
        return DirectSum(conjugate_exponent(spec.outer_p), [dual(p) for p in spec.parts])
    if isinstance(spec, SchattenOne):
        return SchattenInf(spec.n)
    if isinstance(spec, SchattenInf):
        return SchattenOne(spec.n)
    if isinstance(spec, Quadratic):
        return Quadratic(np.linalg.inv(spec.a).conj())
    raise NormSpecError(f"unknown spec kind {spec!r}")


def dual_eval(spec: NormSpec, f) -> float:
    """Dual norm of the covector f: sup { |<f, x>| : norm(x) <= 1 }."""
    return norm_eval(dual(spec), f)


def dual_eval_many(spec: NormSpec, fs: np.ndarray) -> np.ndarray:
    return norm_eval_many(dual(spec), fs)


def pairing(f, x):
    """Bilinear duality pairing <f, x> = sum_j f_j x_j."""
    f = np.asarray(f).ravel()
    x = np.asarray(x).ravel()
    val = np.sum(f * x)
    return complex(val) if np.iscomplexobj(val) else float(val)


def conj_spec(spec: NormSpec) -> NormSpec:
    """Spec of x -> norm(conj(x)); differs from spec only for complex
    quadratic forms."""
    if isinstance(spec, Quadratic):
        return Quadratic(spec.a.conj())
    if isinstance(spec, DirectSum):
        return DirectSum(spec.outer_p, [conj_spec(p) for p in spec.parts])
    return spec


# ---------------------------------------------------------------------------
# sampling and norming functionals


def sample_sphere(spec: NormSpec, count: int, seed: int, field: str = "real") -> np.ndarray:
    """count unit vectors of spec's norm, deterministic per seed.

    Gaussian directions rescaled by their own norm; for a fixed seed the
    stream is prefix-stable, so the first k rows of a larger draw coincide
    with a smaller draw.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    if field == "complex":
        z = rng.standard_normal((count, 2 * spec.dim))
        dirs = z[:, : spec.dim] + 1j * z[:, spec.dim :]
    elif field == "real":
        dirs = rng.standard_normal((count, spec.dim))
    else:
        raise ValueError(f"unknown field {field!r}")
    norms = norm_eval_many(spec, dirs)
    bad = norms < 1e-12
    if np.any(bad):
        e1 = np.zeros(spec.dim, dtype=dirs.dtype)
        e1[0] = 1.0
        dirs[bad] = e1
        norms[bad] = norm_eval(spec, e1)
    return dirs / norms[:, None]


def _phase(z):
    a = abs(z)
    return z / a if a > 0 else 1.0


def norming_functional(spec: NormSpec, x) -> np.ndarray:
    """A covector f with <f, x> = norm(x) and dual norm 1 (x != 0)."""
    x = _check_vector(spec, x)
    nx = norm_eval(spec, x)
    if nx <= 0.0:
        raise NormSpecError("norming functional of the zero vector is undefined")
    if isinstance(spec, PNorm):
        p = spec.p
        if p == INF:
            j = int(np.argmax(np.abs(x)))
            f = np.zeros(spec.dim, dtype=x.dtype)
            f[j] = np.conj(_phase(x[j]))
            return f
        if p == 1.0:
            out = np.where(np.abs(x) > 0, np.conj(x / np.where(np.abs(x) > 0, np.abs(x), 1.0)), 0.0)
            return out.astype(x.dtype)
        mags = np.abs(x)
        f = np.conj(np.where(mags > 0, x / np.where(mags > 0, mags, 1.0), 0.0))
        return f * (mags / nx) ** (p - 1.0)
    if isinstance(spec, MaxAbsFunctionals):
        prods = spec.rows @ x
        i = int(np.argmax(np.abs(prods)))
        return np.sign(prods[i]) * spec.rows[i]
    if isinstance(spec, PolytopeVertices):
        return spec.solver().norming_dual(x)
    if isinstance(spec, DirectSum):
        block_norms = np.array([norm_eval(p, x[sl]) for p, sl in zip(spec.parts, spec.slices())])
        outer = PNorm(len(spec.parts), spec.outer_p)
        g = norming_functional(outer, block_norms) if block_norms.max() > 0 else np.zeros(len(spec.parts))
        f = np.zeros(spec.dim, dtype=x.dtype)
        for j, (p, sl) in enumerate(zip(spec.parts, spec.slices())):
            if g[j] != 0 and block_norms[j] > 0:
                f[sl] = g[j].real * norming_functional(p, x[sl])
        return f
    if isinstance(spec, (SchattenOne, SchattenInf)):
        t = x.reshape(spec.n, spec.n)
        u, sv, vh = np.linalg.svd(t)
        if isinstance(spec, SchattenOne):
            # truncate to the numerical rank: the rank-r part is already a
            # norming functional and vanishes wherever it can
            r = int(np.sum(sv > 1e-12 * sv[0]))
            g = np.conj(u[:, :r] @ vh[:r, :])
        else:
            g = np.conj(np.outer(u[:, 0], vh[0, :]))
        return g.ravel()
    if isinstance(spec, Quadratic):
        return np.conj(spec.a @ x) / nx
    raise NormSpecError(f"unknown spec kind {spec!r}")


# ---------------------------------------------------------------------------
# polyhedral canonicalization (used by the exact LP optimization paths)


def polyhedral_rows(spec: NormSpec):
    """Rows R with norm(x) = max_i |<R_i, x>|, when the kind admits them."""
    if isinstance(spec, MaxAbsFunctionals):
        return spec.rows
    if isinstance(spec, PNorm) and spec.p == INF:
        return np.eye(spec.dim)
    return None


def polyhedral_vertices(spec: NormSpec):
    """Symmetric vertex set V with the unit ball conv(V), when available."""
    if isinstance(spec, PolytopeVertices):
        return spec.vertices
    if isinstance(spec, PNorm) and spec.p == 1.0:
        eye = np.eye(spec.dim)
        return np.vstack([eye, -eye])
    return None


def is_polyhedral(spec: NormSpec) -> bool:
    return polyhedral_rows(spec) is not None or polyhedral_vertices(spec) is not None


def is_smooth(spec: NormSpec) -> bool:
    """True when the exact gradient route applies (p in (1, inf), quadratic)."""
    if isinstance(spec, Quadratic):
        return True
    return isinstance(spec, PNorm) and 1.0 < spec.p < INF


# ---------------------------------------------------------------------------
# JSON encoding


def _encode_matrix(m: np.ndarray):
    if np.iscomplexobj(m):
        return [[[float(z.real), float(z.imag)] for z in row] for row in m]
    return [[float(z) for z in row] for row in m]


def _decode_matrix(data, name: str) -> np.ndarray:
    arr = np.asarray(data, dtype=object)
    try:
        if arr.ndim == 3:  # [re, im] pairs
            flat = np.asarray(data, dtype=float)
            return flat[..., 0] + 1j * flat[..., 1]
        return np.asarray(data, dtype=float)
    except (ValueError, TypeError) as exc:
        raise NormSpecError(f"cannot decode {name}: {exc}") from None


def _decode_p(value, key: str = "p") -> float:
    if value == "inf":
        return INF
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    raise NormSpecError(f'{key} must be a number or "inf", got {value!r}')


def _expect_keys(d: dict, keys: set):
    extra = set(d) - keys
    if extra:
        raise NormSpecError(f"unknown keys in norm spec: {sorted(extra)}")
    missing = keys - set(d)
    if missing:
        raise NormSpecError(f"missing keys in norm spec: {sorted(missing)}")


def _decode_int(value, key: str) -> int:
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    raise NormSpecError(f"{key} must be an integer, got {value!r}")


def spec_from_dict(d: dict) -> NormSpec:
    """Strict decoder for the JSON wire format; unknown keys are rejected."""
    if not isinstance(d, dict) or "kind" not in d:
        raise NormSpecError("norm spec must be an object with a 'kind' key")
    kind = d["kind"]
    if kind == "p":
        _expect_keys(d, {"kind", "dim", "p"})
        return PNorm(_decode_int(d["dim"], "dim"), _decode_p(d["p"]))
    if kind == "max_abs":
        _expect_keys(d, {"kind", "rows"})
        return MaxAbsFunctionals(_decode_matrix(d["rows"], "rows"))
    if kind == "polytope":
        _expect_keys(d, {"kind", "vertices"})
        return PolytopeVertices(_decode_matrix(d["vertices"], "vertices"))
    if kind == "direct_sum":
        _expect_keys(d, {"kind", "outer_p", "parts"})
        if not isinstance(d["parts"], (list, tuple)):
            raise NormSpecError("parts must be a list of norm specs")
        return DirectSum(_decode_p(d["outer_p"], "outer_p"), [spec_from_dict(p) for p in d["parts"]])
    if kind == "schatten1":
        _expect_keys(d, {"kind", "n"})
        return SchattenOne(_decode_int(d["n"], "n"))
    if kind == "schatten_inf":
        _expect_keys(d, {"kind", "n"})
        return SchattenInf(_decode_int(d["n"], "n"))
    if kind == "quadratic":
        _expect_keys(d, {"kind", "a"})
        return Quadratic(_decode_matrix(d["a"], "a"))
    raise NormSpecError(f"unknown norm kind {kind!r}")


def spec_to_json(spec: NormSpec) -> str:
    return json.dumps(spec.to_dict(), sort_keys=True)


def spec_from_json(text: str) -> NormSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NormSpecError(f"invalid JSON: {exc}") from None
    return spec_from_dict(data)
