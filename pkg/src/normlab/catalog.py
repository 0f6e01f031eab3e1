"""Built-in named spaces and dual-space maps with expected verdicts, plus a
seeded random-instance generator. Each entry records what every hypothesis
check should report, so the whole table doubles as an executable regression
suite for the verifiers.

Names: euclid(n), pnorm(n,p), sz3, l1_incl(n), schatten1(n), ypsum(p,k);
parenthesized arguments, with trailing digits accepted for the single-argument
families (euclid3, l1_incl4).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import norms as nr
from .embedding import (
    EmbeddingSpec,
    TOL_EXACT,
    TOL_SAMPLED,
    check_hermitian,
    check_isometry,
    check_kernel_orthogonality,
    definiteness,
    induced_norm_deviation,
    parallelogram_defect,
    verify_form_continuity,
    verify_isometric_embedding,
    verify_isometric_isomorphism,
    verify_norm_equivalence,
)

INNER_PRODUCT_TOL = 1e-9


@dataclass
class CatalogEntry:
    name: str
    space: nr.NormSpec
    mapping: EmbeddingSpec
    expected: dict
    note: str = ""
    completion_target: nr.NormSpec | None = None
    completion_tol: float = 1e-9

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "space": self.space.to_dict(),
            "mapping": self.mapping.to_dict(),
            "expected": dict(self.expected),
            "note": self.note,
        }
        if self.completion_target is not None:
            out["completion_target"] = self.completion_target.to_dict()
            out["completion_tol"] = self.completion_tol
        return out


def _expected(hermitian, isometry, defn, kernel_orth, applicable, inner):
    return {
        "hermitian": hermitian,
        "isometry": isometry,
        "definiteness": defn,
        "kernel_orthogonality": kernel_orth,
        "applicable": sorted(applicable),
        "inner_product_norm": inner,
    }


_ALL = ["isometric_embedding", "isometric_isomorphism", "norm_equivalence", "form_continuity"]
_EQUIV_ONLY = ["norm_equivalence", "form_continuity"]

SZ_ROWS = np.array([
    [0.0, 1.0, 1.0],
    [0.0, 1.0, -1.0],
    [1.0, 0.0, 0.5],
    [1.0, 0.0, -0.5],
])
SZ_REVERSAL = np.array([
    [0.0, 0.0, 1.0],
    [0.0, 1.0, 0.0],
    [1.0, 0.0, 0.0],
])


def _euclid_entry(n: int) -> CatalogEntry:
    return CatalogEntry(
        name=f"euclid({n})",
        space=nr.euclid(n),
        mapping=EmbeddingSpec.identity(n),
        expected=_expected(True, True, "positive", True, _ALL, True),
        note="euclidean space with the canonical self-duality; the model case "
             "every verifier must accept",
        completion_target=nr.euclid(n),
        completion_tol=1e-12,
    )


def _pnorm_entry(n: int, p: float, name: str | None = None) -> CatalogEntry:
    is_euclid = p == 2.0
    p_str = "inf" if p == nr.INF else f"{p:g}"
    return CatalogEntry(
        name=name or f"pnorm({n},{p_str})",
        space=nr.PNorm(n, p),
        mapping=EmbeddingSpec.identity(n),
        expected=_expected(True, is_euclid, "positive", is_euclid,
                           _ALL if is_euclid else _EQUIV_ONLY, is_euclid),
        note="identity pairing of a p-normed space with its conjugate-exponent "
             "dual; a contraction or expansion unless p = 2",
    )


def _l1_incl_entry(n: int) -> CatalogEntry:
    e = _pnorm_entry(n, 1.0, name=f"l1_incl({n})")
    e.note = ("inclusion of the absolute-sum space into its max-norm dual; "
              "the induced quadratic norm is exactly the euclidean one")
    e.completion_target = nr.euclid(n)
    e.completion_tol = 1e-12
    return e


def _schatten1_entry(n: int) -> CatalogEntry:
    if n > 6:
        raise nr.NormSpecError("schatten1 entries are capped at n <= 6")
    return CatalogEntry(
        name=f"schatten1({n})",
        space=nr.SchattenOne(n),
        mapping=EmbeddingSpec.identity(n * n),
        expected=_expected(True, n == 1, "positive", n == 1,
                           _ALL if n == 1 else _EQUIV_ONLY, n == 1),
        note="trace-norm space paired with its operator-norm dual through "
             "T -> trace(T* .); the induced quadratic norm is Frobenius",
        completion_target=nr.euclid(n * n),
        completion_tol=1e-9,
    )


def _ypsum_entry(p: float, k: int) -> CatalogEntry:
    q = nr.conjugate_exponent(p)
    space = nr.DirectSum(2.0, [nr.PNorm(k, p), nr.PNorm(k, q)])
    swap = np.block([
        [np.zeros((k, k)), np.eye(k)],
        [np.eye(k), np.zeros((k, k))],
    ])
    p_str = "inf" if p == nr.INF else f"{p:g}"
    return CatalogEntry(
        name=f"ypsum({p_str},{k})",
        space=space,
        mapping=EmbeddingSpec(swap),
        expected=_expected(True, True, "indefinite", False, [], p == 2.0),
        note="a space summed with its own dual under the outer-2 norm; the "
             "block swap is an isometric self-pairing whose form vanishes on "
             "(x, 0), so it never induces an inner product",
    )


def _sz3_entry() -> CatalogEntry:
    return CatalogEntry(
        name="sz3",
        space=nr.MaxAbsFunctionals(SZ_ROWS),
        mapping=EmbeddingSpec(SZ_REVERSAL),
        expected=_expected(True, True, "indefinite", False, [], False),
        note="self-dual max-type norm on R^3 under coordinate reversal; the "
             "form vanishes at the first basis vector, so the space carries "
             "no inner product despite the isometry onto its dual",
    )


_BUILTIN_RE = re.compile(r"^([a-z0-9_]+?)(?:\(([^)]*)\)|(\d+))?$")


def _parse_args(text: str | None, trail: str | None):
    if text is None and trail is None:
        return []
    if trail is not None:
        return [int(trail)]
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok == "inf":
            out.append(nr.INF)
        elif re.fullmatch(r"-?\d+", tok):
            out.append(int(tok))
        else:
            out.append(float(tok))
    return out


def builtin(name: str) -> CatalogEntry:
    """Look up a named entry, e.g. 'sz3', 'euclid(3)', 'pnorm(2,inf)'."""
    m = _BUILTIN_RE.match(name.strip())
    if not m:
        raise KeyError(f"unknown catalog name {name!r}")
    base = m.group(1)
    args = _parse_args(m.group(2), m.group(3))
    try:
        if base == "sz3" and not args or (base == "sz" and args == [3]):
            return _sz3_entry()
        if base == "euclid" and len(args) == 1:
            return _euclid_entry(int(args[0]))
        if base == "pnorm" and len(args) == 2:
            return _pnorm_entry(int(args[0]), float(args[1]))
        if base == "l1_incl" and len(args) == 1:
            return _l1_incl_entry(int(args[0]))
        if base == "schatten1" and len(args) == 1:
            return _schatten1_entry(int(args[0]))
        if base == "ypsum" and len(args) == 2:
            return _ypsum_entry(float(args[0]), int(args[1]))
    except (ValueError, nr.NormSpecError) as exc:
        raise KeyError(f"bad arguments for catalog name {name!r}: {exc}") from None
    raise KeyError(f"unknown catalog name {name!r}")


DEFAULT_ROSTER = (
    "euclid(2)", "euclid(3)", "pnorm(2,1)", "pnorm(2,inf)", "pnorm(3,1.5)",
    "sz3", "l1_incl(3)", "schatten1(2)", "schatten1(3)", "ypsum(2,2)", "ypsum(4,2)",
)


# ---------------------------------------------------------------------------
# random instances


def _rng_for(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


def _random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    g = rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    return q * np.sign(np.diag(r))


def random_instance(seed: int, dim: int, kind: str, index: int = 0) -> CatalogEntry:
    """Seeded instance families for property runs.

    spd-hilbert: an SPD array with its own induced quadratic norm (the
    constructed Riesz case; every verifier must accept). polyhedral: random
    square spanning functional rows with the identity pairing. perturbed: a
    symmetric array with a controlled spectrum on the euclidean space, cycling
    through positive / negative / indefinite / degenerate shapes.
    """
    if not 1 <= dim <= 8:
        raise ValueError("dim must be between 1 and 8")
    rng = _rng_for(seed, index)
    if kind == "spd-hilbert":
        q = _random_orthogonal(rng, dim)
        eigs = rng.uniform(0.6, 1.8, size=dim)
        a = q @ np.diag(eigs) @ q.T
        a = 0.5 * (a + a.T)
        return CatalogEntry(
            name=f"spd-hilbert[{seed}/{index}] dim {dim}",
            space=nr.Quadratic(a),
            mapping=EmbeddingSpec(a),
            expected=_expected(True, True, "positive", True, _ALL, True),
            note="SPD array paired with its own induced quadratic norm",
        )
    if kind == "polyhedral":
        if dim < 2:
            raise ValueError("polyhedral instances need dim >= 2")
        q = _random_orthogonal(rng, dim)
        rows = q * rng.uniform(0.7, 1.6, size=dim)[:, None]
        return CatalogEntry(
            name=f"polyhedral[{seed}/{index}] dim {dim}",
            space=nr.MaxAbsFunctionals(rows),
            mapping=EmbeddingSpec.identity(dim),
            expected=_expected(True, False, "positive", False, _EQUIV_ONLY, False),
            note="random square spanning rows; identity pairing",
        )
    if kind == "perturbed":
        q = _random_orthogonal(rng, dim)
        variant = ["positive", "negative", "indefinite", "degenerate"][index % 4]
        mags = rng.uniform(0.2, 0.8, size=dim)
        if variant == "positive":
            eigs = mags
        elif variant == "negative":
            eigs = -mags
        elif variant == "indefinite":
            signs = np.ones(dim)
            signs[: max(1, dim // 2)] = -1.0
            eigs = mags * signs
            if dim == 1:
                variant = "negative"
        else:
            eigs = mags.copy()
            eigs[0] = 0.0
        a = q @ np.diag(eigs) @ q.T
        a = 0.5 * (a + a.T)
        definite = variant in ("positive", "negative")
        # in dimension 1 every functional has a trivial kernel, so the kernel
        # orthogonality condition holds vacuously (unless the map vanishes)
        kernel_orth = dim == 1 and variant != "degenerate"
        return CatalogEntry(
            name=f"perturbed[{seed}/{index}] dim {dim} {variant}",
            space=nr.euclid(dim),
            mapping=EmbeddingSpec(a),
            expected=_expected(True, False, variant,
                               kernel_orth, _EQUIV_ONLY if definite else [], True),
            note="hermitian array with a controlled spectrum on euclidean space",
        )
    raise ValueError(f"unknown instance kind {kind!r}")


# ---------------------------------------------------------------------------
# evaluation against expectations


@dataclass
class EntryOutcome:
    name: str
    expected: dict
    computed: dict
    details: dict
    match: bool
    mismatches: list
    violations: list
    reports: dict | None = None

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "expected": dict(self.expected),
            "computed": dict(self.computed),
            "details": dict(self.details),
            "match": bool(self.match),
            "mismatches": list(self.mismatches),
            "violations": list(self.violations),
        }
        if self.reports is not None:
            out["reports"] = {k: v.to_dict() for k, v in self.reports.items()}
        return out


_VERIFIER_FNS = {
    "isometric_embedding": verify_isometric_embedding,
    "isometric_isomorphism": verify_isometric_isomorphism,
    "norm_equivalence": verify_norm_equivalence,
    "form_continuity": verify_form_continuity,
}


def evaluate_entry(entry: CatalogEntry, samples: int = 2000, seed: int = 42,
                   tol_exact: float = TOL_EXACT, tol_sampled: float = TOL_SAMPLED,
                   keep_reports: bool = False) -> EntryOutcome:
    """Recompute every expected verdict for an entry and diff the tables.

    Conclusion checks run for each verifier whose hypotheses pass; any failed
    conclusion there is a genuine violation of the mathematics and lands in
    `violations`.
    """
    emb, space = entry.mapping, entry.space
    details: dict = {}
    computed: dict = {}

    computed["hermitian"] = check_hermitian(emb, tol_exact)
    iso = check_isometry(emb, space, samples=samples, seed=seed)
    computed["isometry"] = iso.max_deviation <= tol_sampled
    details["isometry_deviation"] = iso.max_deviation
    if computed["hermitian"]:
        d = definiteness(emb)
        computed["definiteness"] = d.classification
    else:
        computed["definiteness"] = "n/a"
    ko = check_kernel_orthogonality(emb, space, samples=samples, seed=seed, tol=tol_sampled)
    computed["kernel_orthogonality"] = ko.passed
    if ko.witness is not None:
        details["kernel_witness"] = [float(np.real(t)) for t in np.ravel(ko.witness)]

    reports = {}
    applicable = []
    violations = []
    for name, fn in _VERIFIER_FNS.items():
        rep = fn(emb, space, samples=samples, seed=seed,
                 tol_exact=tol_exact, tol_sampled=tol_sampled)
        reports[name] = rep
        if rep.applicable:
            applicable.append(name)
            violations.extend(f"{name}:{v}" for v in rep.violations())
    computed["applicable"] = sorted(applicable)

    defect, _pair = parallelogram_defect(space, samples=min(samples, 1000), seed=seed)
    computed["inner_product_norm"] = defect <= INNER_PRODUCT_TOL
    details["parallelogram_defect"] = defect

    if entry.completion_target is not None:
        dev, _ = induced_norm_deviation(emb, space, entry.completion_target,
                                        samples=min(samples, 2000), seed=seed)
        details["completion_deviation"] = dev
        computed["completion"] = dev <= entry.completion_tol

    expected = dict(entry.expected)
    if entry.completion_target is not None and expected and "completion" not in expected:
        expected["completion"] = True
    mismatches = [k for k in expected if computed.get(k) != expected[k]]
    return EntryOutcome(
        name=entry.name, expected=expected, computed=computed, details=details,
        match=not mismatches and not violations, mismatches=mismatches,
        violations=violations, reports=reports if keep_reports else None)


@dataclass
class MasterReport:
    seed: int
    samples: int
    instance_samples: int
    outcomes: list = dc_field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return all(o.match for o in self.outcomes)

    def to_dict(self) -> dict:
        return {
            "seed": int(self.seed),
            "samples": int(self.samples),
            "instance_samples": int(self.instance_samples),
            "all_match": bool(self.all_match),
            "entries": [o.to_dict() for o in self.outcomes],
        }


def run_all(seed: int = 42, samples: int = 10_000, instances: int = 200,
            instance_samples: int = 400, dims=(2, 3, 4)) -> MasterReport:
    """Every builtin plus seeded random instances, diffed against expectations."""
    report = MasterReport(seed=seed, samples=samples, instance_samples=instance_samples)
    for name in DEFAULT_ROSTER:
        entry = builtin(name)
        report.outcomes.append(evaluate_entry(entry, samples=samples, seed=seed))
    kinds = ("spd-hilbert", "polyhedral", "perturbed")
    for i in range(instances):
        kind = kinds[i % len(kinds)]
        dim = dims[(i // len(kinds)) % len(dims)]
        entry = random_instance(seed, dim, kind, index=i)
        report.outcomes.append(evaluate_entry(entry, samples=instance_samples, seed=seed + i + 1))
    return report
