"""Candidate maps of a normed space into its dual, represented as scalar
arrays of the sesquilinear pairing <map(x), y> = sum_ij conj(x_i) A_ij y_j,
together with every hypothesis check and conclusion verifier needed to decide
whether such a map forces an inner-product structure.

Checks: hermitian symmetry of the array, definiteness of the induced
quadratic form (with explicit witnesses from a Jacobi eigendecomposition),
kernel orthogonality of each point against the null space of its own
covector, isometry onto the dual norm, and operator gain bounds. Verifiers
bundle the checks into hypothesis/conclusion reports:

- verify_isometric_embedding: isometry + hermitian + kernel orthogonality
  force (x, x) = norm(x)^2;
- verify_isometric_isomorphism: isometry + surjectivity + hermitian +
  definiteness force the same identity plus Cauchy-Schwarz;
- verify_norm_equivalence: hermitian + definiteness + injectivity force
  two-sided equivalence with the induced quadratic norm, with explicit
  constants from the gain extremes;
- verify_form_continuity: the induced quadratic topology is dominated by the
  norm topology.

Hypothesis checks on sampled spheres are falsification-complete but
verification-approximate for non-polyhedral norms; reports carry sample
counts. A FAIL always carries a concrete witness vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import norms as nr
from .linalg import DegenerateFunctional, hermitian_part, invertibility, jacobi_eigh, kernel_basis
from .optim import GainResult, extremize_gain
from .orthogonality import BJResult, bj_orthogonal_subspace

TOL_EXACT = 1e-9
TOL_SAMPLED = 1e-6
DEFAULT_SAMPLES = 10_000
DEFAULT_SEED = 42


class EmbeddingError(ValueError):
    pass


class FormNotDefinite(EmbeddingError):
    def __init__(self, message: str, witness=None, classification: str = ""):
        super().__init__(message)
        self.witness = witness
        self.classification = classification


def encode_vector(v) -> list:
    if isinstance(v, tuple):  # witness pairs
        return [encode_vector(e) for e in v]
    v = np.asarray(v).ravel()
    if np.iscomplexobj(v):
        return [[float(z.real), float(z.imag)] for z in v]
    return [float(z) for z in v]


class EmbeddingSpec:
    """n x n scalar array A with semantics <map(x), y> = conj(x) . A y."""

    def __init__(self, matrix, field: str | None = None):
        m = np.asarray(matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise EmbeddingError("matrix must be square")
        if field not in (None, "real", "complex"):
            raise EmbeddingError(f"unknown field {field!r}")
        if field == "real" and np.iscomplexobj(m):
            if np.any(m.imag != 0.0):
                raise EmbeddingError("field is 'real' but the matrix has complex entries")
            m = m.real
        if field == "complex" or np.iscomplexobj(m):
            m = m.astype(complex)
            self.field = "complex"
        else:
            try:
                m = m.astype(float)
            except (TypeError, ValueError) as exc:
                raise EmbeddingError(f"matrix entries are not numeric: {exc}") from None
            self.field = "real"
        if not np.all(np.isfinite(m.view(float))):
            raise EmbeddingError("matrix has non-finite entries")
        self.matrix = m
        self.dim = m.shape[0]

    @classmethod
    def identity(cls, dim: int, field: str = "real") -> "EmbeddingSpec":
        return cls(np.eye(dim), field=field)

    def covector(self, x) -> np.ndarray:
        x = np.asarray(x).ravel()
        return np.conj(x) @ self.matrix

    def covector_many(self, xs: np.ndarray) -> np.ndarray:
        return np.conj(np.atleast_2d(xs)) @ self.matrix

    def form(self, x, y):
        x = np.asarray(x).ravel()
        y = np.asarray(y).ravel()
        val = np.conj(x) @ self.matrix @ y
        return complex(val) if self.field == "complex" else float(val)

    def form_quad_many(self, xs: np.ndarray) -> np.ndarray:
        xs = np.atleast_2d(xs)
        return np.einsum("ni,ij,nj->n", np.conj(xs), self.matrix, xs)

    def to_dict(self) -> dict:
        return {
            "field": self.field,
            "matrix": [
                [[float(z.real), float(z.imag)] for z in row] for row in self.matrix
            ] if self.field == "complex" else [[float(z) for z in row] for row in self.matrix],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EmbeddingSpec":
        if not isinstance(d, dict):
            raise EmbeddingError("embedding spec must be an object")
        extra = set(d) - {"field", "matrix"}
        if extra:
            raise EmbeddingError(f"unknown keys in embedding spec: {sorted(extra)}")
        if "matrix" not in d:
            raise EmbeddingError("embedding spec needs a 'matrix' key")
        field = d.get("field", "real")
        mat = nr._decode_matrix(d["matrix"], "matrix")
        if field == "complex" and not np.iscomplexobj(mat):
            mat = mat.astype(complex)
        return cls(mat, field=field)

    def __repr__(self):
        return f"EmbeddingSpec(dim={self.dim}, field={self.field})"


# ---------------------------------------------------------------------------
# hypothesis checks


def hermitian_deviation(emb: EmbeddingSpec) -> float:
    a = emb.matrix
    return float(np.max(np.abs(a - a.conj().T)))


def check_hermitian(emb: EmbeddingSpec, tol: float = TOL_EXACT) -> bool:
    """<map(x), y> = conj(<map(y), x>) for all x, y, i.e. A = A^H entrywise."""
    return hermitian_deviation(emb) <= tol


@dataclass
class Definiteness:
    classification: str  # positive | negative | indefinite | degenerate
    eigenvalues: np.ndarray
    witness: np.ndarray | None

    @property
    def is_definite(self) -> bool:
        return self.classification in ("positive", "negative")

    @property
    def sign(self) -> int:
        return {"positive": 1, "negative": -1}.get(self.classification, 0)


def definiteness(emb: EmbeddingSpec, tol: float = TOL_EXACT) -> Definiteness:
    """Spectral classification of the hermitian form, with witnesses.

    Jacobi eigendecomposition keeps eigenvector witnesses at hand: for a
    mixed spectrum the vector x = u / sqrt(l+) + v / sqrt(-l-) built from a
    positive and a negative eigenpair satisfies <map(x), x> = 0 with x != 0;
    a near-null eigenvector witnesses degeneracy.
    """
    if not check_hermitian(emb, tol=max(tol, TOL_EXACT)):
        raise EmbeddingError("definiteness is defined for hermitian specs only")
    h = hermitian_part(emb.matrix)
    w, v = jacobi_eigh(h)
    scale = max(float(np.max(np.abs(w))), 0.0)
    zero_tol = tol * scale  # relative: uniform rescaling keeps the verdict
    if np.any(np.abs(w) <= zero_tol):
        idx = int(np.argmin(np.abs(w)))
        return Definiteness("degenerate", w, v[:, idx].copy())
    if w[0] > 0:
        return Definiteness("positive", w, None)
    if w[-1] < 0:
        return Definiteness("negative", w, None)
    lp, up = w[-1], v[:, -1]
    lm, um = w[0], v[:, 0]
    witness = up / np.sqrt(lp) + um / np.sqrt(-lm)
    return Definiteness("indefinite", w, witness)


def functional_kernel(emb: EmbeddingSpec, x) -> np.ndarray:
    """Basis (columns) of Ker(map(x)); raises DegenerateFunctional on map(x)=0."""
    x = np.asarray(x).ravel()
    w = emb.covector(x)
    scale = float(np.max(np.abs(emb.matrix))) * float(np.max(np.abs(x)) or 1.0)
    return kernel_basis(w, tol=1e-12 * max(scale, 1.0))


@dataclass
class KernelOrthogonality:
    passed: bool
    witness: np.ndarray | None
    witness_result: BJResult | None
    checked: int
    note: str


def _quad_dual_norms(norm: nr.NormSpec, covs: np.ndarray) -> np.ndarray:
    """Dual norms of covector rows when norm is quadratic/euclidean."""
    return nr.norm_eval_many(nr.dual(norm), covs)


def check_kernel_orthogonality(emb: EmbeddingSpec, norm: nr.NormSpec,
                               samples: int = 2000, seed: int = DEFAULT_SEED,
                               tol: float = TOL_SAMPLED) -> KernelOrthogonality:
    """Each candidate x must be BJ-orthogonal to Ker(map(x)).

    Candidates: the standard basis, the definiteness witness when the form is
    not definite (a point lying in its own kernel is the canonical failure),
    then the sampled unit sphere. Stops at the first failure.
    """
    n = emb.dim
    cands = [np.eye(n)[i] for i in range(n)]
    if check_hermitian(emb):
        d = definiteness(emb)
        if d.witness is not None:
            cands.append(d.witness / max(np.max(np.abs(d.witness)), 1e-300))
    pts = nr.sample_sphere(norm, samples, seed,
                           field="complex" if emb.field == "complex" else "real")

    is_quad = isinstance(norm, nr.Quadratic) or (isinstance(norm, nr.PNorm) and norm.p == 2.0)
    checked = 0

    def test_one(x: np.ndarray):
        nonlocal checked
        checked += 1
        try:
            basis = functional_kernel(emb, x)
        except DegenerateFunctional:
            return KernelOrthogonality(False, x, None, checked,
                                       "map(x) is the zero functional")
        res = bj_orthogonal_subspace(norm, x, basis, tol=tol)
        if not res.orthogonal:
            return KernelOrthogonality(False, x, res, checked, "")
        return None

    for x in cands:
        hit = test_one(np.asarray(x, dtype=pts.dtype))
        if hit is not None:
            return hit

    if is_quad:
        covs = emb.covector_many(pts)
        cn = np.sqrt(np.sum(np.abs(covs) ** 2, axis=1))
        degen = cn <= 1e-12 * max(float(np.max(np.abs(emb.matrix))), 1.0)
        if np.any(degen):
            i = int(np.argmax(degen))
            checked += i + 1
            return KernelOrthogonality(False, pts[i], None, checked,
                                       "map(x) is the zero functional")
        duals = _quad_dual_norms(norm, covs)
        mins = np.abs(np.einsum("ni,ni->n", covs, pts)) / duals
        margins = mins - 1.0  # sampled points are unit vectors
        bad = margins < -tol
        checked += pts.shape[0]
        if np.any(bad):
            i = int(np.argmax(bad))
            res = bj_orthogonal_subspace(norm, pts[i], functional_kernel(emb, pts[i]), tol=tol)
            return KernelOrthogonality(False, pts[i], res, checked, "")
        return KernelOrthogonality(True, None, None, checked,
                                   f"basis + {pts.shape[0]} sampled points (exact projection route)")

    for x in pts:
        hit = test_one(x)
        if hit is not None:
            return hit
    return KernelOrthogonality(True, None, None, checked,
                               f"basis + {pts.shape[0]} sampled points")


@dataclass
class IsometryCheck:
    max_deviation: float
    worst: np.ndarray
    checked: int


def _unit_probes(norm: nr.NormSpec, field: str) -> np.ndarray:
    """Deterministic sphere probes: basis and sign directions, polyhedral
    rows/vertices. Exact extremal layouts make deviations like the l1
    contraction value reproducible."""
    n = norm.dim
    probes = [np.eye(n)]
    if field == "real":
        if n <= 8:
            signs = np.ones((2 ** (n - 1), n))
            for i in range(signs.shape[0]):
                for j in range(1, n):
                    if (i >> (j - 1)) & 1:
                        signs[i, j] = -1.0
            probes.append(signs)
        rows = nr.polyhedral_rows(norm)
        if rows is not None:
            probes.append(rows)
        verts = nr.polyhedral_vertices(norm)
        if verts is not None:
            probes.append(verts)
    pts = np.vstack(probes)
    if field == "complex":
        pts = pts.astype(complex)
    return pts / nr.norm_eval_many(norm, pts)[:, None]


def check_isometry(emb: EmbeddingSpec, norm: nr.NormSpec, samples: int = DEFAULT_SAMPLES,
                   seed: int = DEFAULT_SEED) -> IsometryCheck:
    """max over unit vectors of |dual_norm(map(x)) - 1| (0 for an isometry)."""
    pts = np.vstack([
        _unit_probes(norm, emb.field),
        nr.sample_sphere(norm, samples, seed, field="complex" if emb.field == "complex" else "real"),
    ])
    covs = emb.covector_many(pts)
    devs = np.abs(nr.dual_eval_many(norm, covs) - 1.0)
    i = int(np.argmax(devs))
    return IsometryCheck(float(devs[i]), pts[i].copy(), pts.shape[0])


@dataclass
class OperatorBounds:
    delta: float
    phi_norm: float
    arg_min: np.ndarray
    arg_max: np.ndarray
    samples: int
    exact_delta: bool = False
    exact_phi: bool = False

    def __post_init__(self):
        if self.delta > self.phi_norm + 1e-12:
            raise EmbeddingError("operator bounds out of order")


def operator_bounds(emb: EmbeddingSpec, norm: nr.NormSpec, samples: int = 2000,
                    seed: int = DEFAULT_SEED) -> OperatorBounds:
    """delta = inf, phi_norm = sup of dual_norm(map(x)) / norm(x).

    The covector of x is conj(x) A = (A^T conj(x))^T, so the gain of the
    linear map A^T over conj-adjusted norms realizes both constants.
    """
    gain: GainResult = extremize_gain(emb.matrix.T, nr.conj_spec(norm), nr.dual(norm),
                                      samples=samples, seed=seed)
    arg_min = np.conj(gain.arg_min)
    arg_max = np.conj(gain.arg_max)
    return OperatorBounds(gain.low, gain.high, arg_min, arg_max, gain.samples,
                          gain.exact_low, gain.exact_high)


# ---------------------------------------------------------------------------
# induced form


@dataclass
class InducedForm:
    embedding: EmbeddingSpec
    sign: int
    definiteness: Definiteness

    def inner(self, x, y):
        return self.sign * self.embedding.form(x, y)

    def norm_of(self, x) -> float:
        q = self.sign * np.real(self.embedding.form(x, x))
        return float(np.sqrt(max(q, 0.0)))

    def norm_many(self, xs: np.ndarray) -> np.ndarray:
        q = self.sign * np.real(self.embedding.form_quad_many(xs))
        return np.sqrt(np.clip(q, 0.0, None))


def induced_form(emb: EmbeddingSpec, tol: float = TOL_EXACT) -> InducedForm:
    """Sign-normalized inner product candidate (x, y) = s <map(x), y>.

    The sign comes from the one-signed spectrum; a 1 x 1 real space reduces to
    the sign of the single entry. Indefinite or degenerate forms are rejected
    with their witness.
    """
    d = definiteness(emb, tol=tol)
    if not d.is_definite:
        raise FormNotDefinite(
            f"form is {d.classification}; no induced inner product",
            witness=d.witness, classification=d.classification)
    return InducedForm(embedding=emb, sign=d.sign, definiteness=d)


def symmetrize(emb: EmbeddingSpec) -> EmbeddingSpec:
    """Hermitian average (A + A^H) / 2; inherits any coercivity lower bound."""
    return EmbeddingSpec(hermitian_part(emb.matrix), field=emb.field)


@dataclass
class CoercivityResult:
    m: float
    arg_min: np.ndarray
    exact: bool


def coercivity(emb: EmbeddingSpec, norm: nr.NormSpec, samples: int = 2000,
               seed: int = DEFAULT_SEED) -> CoercivityResult:
    """m = min over the unit sphere of Re <map(x), x>."""
    sym = hermitian_part(emb.matrix)
    quad = None
    if isinstance(norm, nr.Quadratic):
        quad = norm.a
    elif isinstance(norm, nr.PNorm) and norm.p == 2.0:
        quad = np.eye(norm.dim)
    if quad is not None and emb.field == "real":
        ell = np.linalg.cholesky(quad)
        k = np.linalg.solve(ell, np.linalg.solve(ell, sym.T).T)
        w, v = np.linalg.eigh(0.5 * (k + k.T))
        arg = np.linalg.solve(ell.T, v[:, 0])
        arg /= nr.norm_eval(norm, arg)
        return CoercivityResult(float(w[0]), arg, True)

    pts = np.vstack([
        _unit_probes(norm, emb.field),
        nr.sample_sphere(norm, samples, seed, field="complex" if emb.field == "complex" else "real"),
    ])
    vals = np.real(emb.form_quad_many(pts))
    i = int(np.argmin(vals))
    best, arg = float(vals[i]), pts[i].copy()

    if emb.field == "real":
        def obj(d):
            nd = nr.norm_eval(norm, d)
            return float(np.real(emb.form(d, d))) / (nd * nd)

        d = arg.copy()
        h = 0.25
        for _ in range(48):
            moved = False
            for j in range(d.size):
                for s in (1.0, -1.0):
                    cand = d.copy()
                    cand[j] += s * h
                    if np.max(np.abs(cand)) < 1e-12:
                        continue
                    val = obj(cand)
                    if val < best - 1e-15:
                        best, d = val, cand
                        moved = True
            if not moved:
                h *= 0.5
                if h < 1e-11:
                    break
        arg = d / nr.norm_eval(norm, d)
    return CoercivityResult(best, arg, False)


def induced_norm_deviation(emb: EmbeddingSpec, norm: nr.NormSpec, expected: nr.NormSpec,
                           samples: int = 2000, seed: int = DEFAULT_SEED):
    """max over sampled unit vectors of | induced |x| - expected(x) |.

    Finite-dimensional completion identity: the induced quadratic norm of the
    map should coincide with the expected Hilbert norm.
    """
    form = induced_form(emb)
    pts = nr.sample_sphere(norm, samples, seed,
                           field="complex" if emb.field == "complex" else "real")
    devs = np.abs(form.norm_many(pts) - nr.norm_eval_many(expected, pts))
    i = int(np.argmax(devs))
    return float(devs[i]), pts[i].copy()


# ---------------------------------------------------------------------------
# inner-product detection


def parallelogram_defect_at(norm: nr.NormSpec, x, y) -> float:
    """| ||x+y||^2 + ||x-y||^2 - 2 ||x||^2 - 2 ||y||^2 | (Jordan-von Neumann)."""
    x = np.asarray(x)
    y = np.asarray(y)
    s = nr.norm_eval(norm, x + y) ** 2 + nr.norm_eval(norm, x - y) ** 2
    r = 2.0 * nr.norm_eval(norm, x) ** 2 + 2.0 * nr.norm_eval(norm, y) ** 2
    return abs(s - r)


def parallelogram_defect(norm: nr.NormSpec, samples: int = 2000, seed: int = 11,
                         field: str = "real"):
    """Max parallelogram-law defect over canonical basis pairs and sampled
    unit pairs. Zero (within tolerance) exactly for inner-product norms."""
    n = norm.dim
    eye = np.eye(n)
    base = eye / nr.norm_eval_many(norm, eye)[:, None]
    xs = [base[i] for i in range(n) for j in range(i + 1, n)]
    ys = [base[j] for i in range(n) for j in range(i + 1, n)]
    pts = nr.sample_sphere(norm, 2 * samples, seed, field=field)
    x_arr = np.vstack([np.atleast_2d(np.array(xs, dtype=pts.dtype)), pts[0::2]]) if xs else pts[0::2]
    y_arr = np.vstack([np.atleast_2d(np.array(ys, dtype=pts.dtype)), pts[1::2]]) if ys else pts[1::2]
    lhs = nr.norm_eval_many(norm, x_arr + y_arr) ** 2 + nr.norm_eval_many(norm, x_arr - y_arr) ** 2
    rhs = 2.0 * nr.norm_eval_many(norm, x_arr) ** 2 + 2.0 * nr.norm_eval_many(norm, y_arr) ** 2
    defects = np.abs(lhs - rhs)
    i = int(np.argmax(defects))
    return float(defects[i]), (x_arr[i].copy(), y_arr[i].copy())


# ---------------------------------------------------------------------------
# verification reports


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float | None = None
    witness: object | None = None
    note: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": bool(self.passed)}
        if self.value is not None:
            out["value"] = float(self.value)
        if self.witness is not None:
            out["witness"] = encode_vector(self.witness)
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    name: str
    hypotheses: dict
    conclusions: dict
    applicable: bool
    samples: int
    seed: int
    tolerances: dict
    notes: list = dc_field(default_factory=list)

    def violations(self) -> list:
        if not self.applicable:
            return []
        return [c.name for c in self.conclusions.values() if not c.passed]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "applicable": bool(self.applicable),
            "hypotheses": {k: v.to_dict() for k, v in self.hypotheses.items()},
            "conclusions": {k: v.to_dict() for k, v in self.conclusions.items()},
            "violations": self.violations(),
            "samples": int(self.samples),
            "seed": int(self.seed),
            "tolerances": {k: float(v) for k, v in self.tolerances.items()},
            "notes": list(self.notes),
        }


def _hyp_isometry(emb, norm, samples, seed, tol) -> CheckResult:
    iso = check_isometry(emb, norm, samples=samples, seed=seed)
    return CheckResult("isometry", iso.max_deviation <= tol, iso.max_deviation, iso.worst,
                       f"max deviation over {iso.checked} unit vectors")


def _hyp_hermitian(emb, tol) -> CheckResult:
    dev = hermitian_deviation(emb)
    witness = None
    if dev > tol:
        a = emb.matrix
        i, j = np.unravel_index(np.argmax(np.abs(a - a.conj().T)), a.shape)
        eye = np.eye(emb.dim)
        witness = [eye[i], eye[j]]
    return CheckResult("hermitian", dev <= tol, dev, witness=witness)


def _hyp_definiteness(emb) -> CheckResult:
    try:
        d = definiteness(emb)
    except EmbeddingError:
        return CheckResult("definiteness", False, note="not hermitian")
    return CheckResult("definiteness", d.is_definite, witness=d.witness,
                       note=d.classification)


def _hyp_invertible(emb, name="surjectivity") -> CheckResult:
    ok, cond, smin, smax = invertibility(emb.matrix)
    if ok:
        return CheckResult(name, True, smin / smax, note=f"condition number {cond:.6e}")
    u, _, _ = np.linalg.svd(emb.matrix)
    # x = conj(u_min) has covector conj(x) A = u_min^T A ~ 0
    return CheckResult(name, False, (smin / smax if smax > 0 else 0.0),
                       witness=np.conj(u[:, -1]),
                       note=f"smallest singular value {smin:.3e}; the witness direction "
                            "is annihilated by the map")


def _form_failure_note(exc: EmbeddingError) -> str:
    cls = getattr(exc, "classification", "") or "not hermitian"
    return f"form is {cls}"


def _norm_identity_conclusion(emb, norm, samples, seed, tol, field) -> CheckResult:
    try:
        form = induced_form(emb)
    except EmbeddingError as exc:
        return CheckResult("norm_identity", False, witness=getattr(exc, "witness", None),
                           note=f"{_form_failure_note(exc)}; identity unverifiable")
    pts = nr.sample_sphere(norm, samples, seed, field=field)
    devs = np.abs(form.norm_many(pts) ** 2 - 1.0)
    i = int(np.argmax(devs))
    return CheckResult("norm_identity", devs[i] <= tol, float(devs[i]), pts[i].copy(),
                       f"max |(x,x) - norm(x)^2| over {pts.shape[0]} unit samples, sign {form.sign:+d}")


def verify_isometric_embedding(emb: EmbeddingSpec, norm: nr.NormSpec,
                               samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                               tol_exact: float = TOL_EXACT,
                               tol_sampled: float = TOL_SAMPLED) -> VerificationReport:
    """Isometry + hermitian + kernel orthogonality force (x,x) = norm(x)^2."""
    field = "complex" if emb.field == "complex" else "real"
    hyps = {
        "isometry": _hyp_isometry(emb, norm, samples, seed, tol_sampled),
        "hermitian": _hyp_hermitian(emb, tol_exact),
    }
    ko = check_kernel_orthogonality(emb, norm, samples=samples, seed=seed, tol=tol_sampled)
    hyps["kernel_orthogonality"] = CheckResult(
        "kernel_orthogonality", ko.passed,
        None if ko.witness_result is None else ko.witness_result.margin,
        ko.witness, ko.note or f"{ko.checked} candidates checked")
    applicable = all(h.passed for h in hyps.values())
    concl = {"norm_identity": _norm_identity_conclusion(emb, norm, samples, seed, tol_sampled, field)}
    notes = [] if applicable else ["hypotheses failed; conclusions are informational"]
    return VerificationReport("isometric_embedding", hyps, concl, applicable,
                              samples, seed,
                              {"exact": tol_exact, "sampled": tol_sampled}, notes)


def verify_isometric_isomorphism(emb: EmbeddingSpec, norm: nr.NormSpec,
                                 samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                                 tol_exact: float = TOL_EXACT,
                                 tol_sampled: float = TOL_SAMPLED) -> VerificationReport:
    """Isometry + surjectivity + hermitian + definiteness force the norm
    identity and Cauchy-Schwarz for the induced inner product."""
    field = "complex" if emb.field == "complex" else "real"
    hyps = {
        "isometry": _hyp_isometry(emb, norm, samples, seed, tol_sampled),
        "surjectivity": _hyp_invertible(emb),
        "hermitian": _hyp_hermitian(emb, tol_exact),
        "definiteness": _hyp_definiteness(emb),
    }
    applicable = all(h.passed for h in hyps.values())
    concl = {"norm_identity": _norm_identity_conclusion(emb, norm, samples, seed, tol_sampled, field)}
    try:
        form = induced_form(emb)
        pts = nr.sample_sphere(norm, 2 * samples, seed + 1, field=field)
        xs, ys = pts[0::2], pts[1::2]
        inner = np.einsum("ni,ij,nj->n", np.conj(xs), form.sign * emb.matrix, ys)
        viol = np.abs(inner) - form.norm_many(xs) * form.norm_many(ys)
        i = int(np.argmax(viol))
        concl["cauchy_schwarz"] = CheckResult(
            "cauchy_schwarz", viol[i] <= tol_sampled, float(viol[i]), (xs[i], ys[i]),
            f"max |(x,y)| - |x||y| over {xs.shape[0]} sampled pairs")
    except EmbeddingError as exc:
        concl["cauchy_schwarz"] = CheckResult(
            "cauchy_schwarz", False, witness=getattr(exc, "witness", None),
            note=_form_failure_note(exc))
    notes = [] if applicable else ["hypotheses failed; conclusions are informational"]
    return VerificationReport("isometric_isomorphism", hyps, concl, applicable,
                              samples, seed,
                              {"exact": tol_exact, "sampled": tol_sampled}, notes)


def verify_norm_equivalence(emb: EmbeddingSpec, norm: nr.NormSpec,
                            samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                            tol_exact: float = TOL_EXACT,
                            tol_sampled: float = TOL_SAMPLED,
                            gain_samples: int | None = None) -> VerificationReport:
    """Hermitian + definite + injective (range closure is automatic in finite
    dimension) force |x|^2 <= phi_norm * norm(x)^2 and
    norm(x) <= delta^-1 phi_norm^(1/2) |x|."""
    field = "complex" if emb.field == "complex" else "real"
    hyps = {
        "hermitian": _hyp_hermitian(emb, tol_exact),
        "definiteness": _hyp_definiteness(emb),
        "injectivity": _hyp_invertible(emb, name="injectivity"),
        "closed_range": CheckResult("closed_range", True, note="automatic in finite dimension"),
    }
    applicable = all(h.passed for h in hyps.values())
    gb = operator_bounds(emb, norm, samples=gain_samples or min(samples, 2000), seed=seed)
    concl = {}
    try:
        form = induced_form(emb)
        pts = nr.sample_sphere(norm, samples, seed, field=field)
        ind = form.norm_many(pts)
        upper = ind ** 2 - gb.phi_norm  # unit sphere, so norm(x)^2 = 1
        iu = int(np.argmax(upper))
        concl["upper_bound"] = CheckResult(
            "upper_bound", upper[iu] <= tol_sampled, float(upper[iu]), pts[iu].copy(),
            f"|x|^2 - phi_norm over {pts.shape[0]} unit samples; phi_norm {gb.phi_norm:.12g}"
            + (" (exact)" if gb.exact_phi else " (sampled estimate)"))
        if gb.delta > 0.0:
            lower = 1.0 - (np.sqrt(gb.phi_norm) / gb.delta) * ind
            il = int(np.argmax(lower))
            concl["lower_bound"] = CheckResult(
                "lower_bound", lower[il] <= tol_sampled, float(lower[il]), pts[il].copy(),
                f"1 - delta^-1 phi_norm^(1/2) |x| over {pts.shape[0]} unit samples; delta {gb.delta:.12g}"
                + (" (exact)" if gb.exact_delta else " (sampled estimate)"))
        else:
            concl["lower_bound"] = CheckResult(
                "lower_bound", False, note="delta = 0: the map is not injective")
    except EmbeddingError as exc:
        for key in ("upper_bound", "lower_bound"):
            concl[key] = CheckResult(key, False, witness=getattr(exc, "witness", None),
                                     note=_form_failure_note(exc))
    notes = [f"delta {gb.delta:.12g}, phi_norm {gb.phi_norm:.12g}"]
    if not applicable:
        notes.append("hypotheses failed; conclusions are informational")
    return VerificationReport("norm_equivalence", hyps, concl, applicable,
                              samples, seed,
                              {"exact": tol_exact, "sampled": tol_sampled}, notes)


def verify_form_continuity(emb: EmbeddingSpec, norm: nr.NormSpec,
                           samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                           tol_exact: float = TOL_EXACT,
                           tol_sampled: float = TOL_SAMPLED) -> VerificationReport:
    """Hermitian + definite force |x| <= phi_norm^(1/2) norm(x): the induced
    quadratic topology is dominated by (weaker than) the norm topology."""
    field = "complex" if emb.field == "complex" else "real"
    hyps = {
        "hermitian": _hyp_hermitian(emb, tol_exact),
        "definiteness": _hyp_definiteness(emb),
    }
    applicable = all(h.passed for h in hyps.values())
    gb = operator_bounds(emb, norm, samples=min(samples, 2000), seed=seed)
    concl = {}
    try:
        form = induced_form(emb)
        pts = nr.sample_sphere(norm, samples, seed, field=field)
        viol = form.norm_many(pts) - np.sqrt(gb.phi_norm)
        i = int(np.argmax(viol))
        concl["domination"] = CheckResult(
            "domination", viol[i] <= tol_sampled, float(viol[i]), pts[i].copy(),
            f"|x| - phi_norm^(1/2) over {pts.shape[0]} unit samples; phi_norm {gb.phi_norm:.12g}")
    except EmbeddingError as exc:
        concl["domination"] = CheckResult("domination", False, witness=getattr(exc, "witness", None),
                                          note=_form_failure_note(exc))
    notes = [] if applicable else ["hypotheses failed; conclusions are informational"]
    return VerificationReport("form_continuity", hyps, concl, applicable,
                              samples, seed,
                              {"exact": tol_exact, "sampled": tol_sampled}, notes)


VERIFIERS = {
    "isometric_embedding": verify_isometric_embedding,
    "isometric_isomorphism": verify_isometric_isomorphism,
    "norm_equivalence": verify_norm_equivalence,
    "form_continuity": verify_form_continuity,
}


def run_verifiers(emb: EmbeddingSpec, norm: nr.NormSpec, samples: int = DEFAULT_SAMPLES,
                  seed: int = DEFAULT_SEED, tol_exact: float = TOL_EXACT,
                  tol_sampled: float = TOL_SAMPLED) -> dict:
    return {name: fn(emb, norm, samples=samples, seed=seed,
                     tol_exact=tol_exact, tol_sampled=tol_sampled)
            for name, fn in VERIFIERS.items()}
