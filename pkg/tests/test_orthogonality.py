import math

import numpy as np
import pytest

import normlab as nl
from normlab import norms as nr
from normlab.catalog import builtin
from normlab.orthogonality import bj_orthogonal, bj_orthogonal_subspace, bj_symmetry_scan

LINF2 = nr.PNorm(2, math.inf)
SZ = builtin("sz3").space


def test_euclid_pair():
    res = bj_orthogonal(nl.euclid(2), [1, 0], [0, 1])
    assert res.orthogonal
    assert res.min_value == pytest.approx(1.0, abs=1e-12)
    assert res.witness == pytest.approx(0.0, abs=1e-12)
    assert res.certified


def test_linf_orthogonal_pair():
    res = bj_orthogonal(LINF2, [1, 1], [0, 1])
    assert res.orthogonal
    assert res.min_value == pytest.approx(1.0, abs=1e-10)


def test_linf_non_orthogonal_pair():
    res = bj_orthogonal(LINF2, [0, 1], [1, 1])
    assert not res.orthogonal
    assert res.min_value == pytest.approx(0.5, abs=1e-10)
    assert res.witness == pytest.approx(-0.5, abs=1e-9)
    assert res.certified
    # the witness scalar achieves the reported minimum
    achieved = nl.norm_eval(LINF2, np.array([0.0, 1.0]) + res.witness * np.array([1.0, 1.0]))
    assert achieved == pytest.approx(res.min_value, abs=1e-9)


def test_zero_vectors_trivially_orthogonal():
    res = bj_orthogonal(nl.euclid(2), [0, 0], [1, 1])
    assert res.orthogonal and res.min_value == 0.0
    res = bj_orthogonal(nl.euclid(2), [1, 1], [0, 0])
    assert res.orthogonal and res.min_value == pytest.approx(math.sqrt(2.0))


def test_tol_validation():
    with pytest.raises(ValueError):
        bj_orthogonal(nl.euclid(2), [1, 0], [0, 1], tol=0.0)
    with pytest.raises(nr.DimensionMismatch):
        bj_orthogonal(nl.euclid(2), [1, 0, 0], [0, 1])


def test_subspace_queries():
    res = bj_orthogonal_subspace(nl.euclid(3), [1, 0, 0], [[0, 1, 0], [0, 0, 1]])
    assert res.orthogonal
    res = bj_orthogonal_subspace(nr.PNorm(2, 1.0), [2, 1], [[1, -2]])
    assert not res.orthogonal
    assert res.min_value == pytest.approx(2.5, abs=1e-10)
    assert res.base_norm == pytest.approx(3.0)
    # x inside the span: the negating combination reaches zero
    res = bj_orthogonal_subspace(SZ, [1, 0, 0], np.eye(3)[:, :2])
    assert not res.orthogonal
    assert res.min_value == pytest.approx(0.0, abs=1e-10)


def test_scaling_invariance():
    rng = np.random.default_rng(31)
    for spec in (LINF2, nl.euclid(2)):
        for _ in range(40):
            x = rng.standard_normal(2)
            y = rng.standard_normal(2)
            base = bj_orthogonal(spec, x, y)
            scaled = bj_orthogonal(spec, 3.0 * x, -2.0 * y)
            assert base.orthogonal == scaled.orthogonal
            assert scaled.margin == pytest.approx(3.0 * base.margin, abs=1e-8)


def test_scaling_invariance_extreme_magnitudes():
    # the verdict threshold reads at unit scale, so verdicts survive rescaling
    # by many orders of magnitude
    rng = np.random.default_rng(35)
    rows = rng.standard_normal((4, 3))
    rows[:3] += np.eye(3)
    spec = nr.MaxAbsFunctionals(rows)
    for scale in (1e-8, 1e6):
        for _ in range(30):
            x = rng.standard_normal(3)
            y = rng.standard_normal(3)
            assert (bj_orthogonal(spec, x, y).orthogonal
                    == bj_orthogonal(spec, scale * x, scale * y).orthogonal)


def test_relation_homogeneity_on_orthogonal_pairs():
    # once orthogonal, no scalar in the bracket beats the base norm
    rng = np.random.default_rng(32)
    wit = bj_symmetry_scan(SZ, 50, seed=5)
    pairs = [(w.x, w.y) for w in wit[:5]] or [(np.array([1.0, 1.0]), np.array([0.0, 1.0]))]
    for x, y in pairs:
        nx = nl.norm_eval(SZ if x.size == 3 else LINF2, x)
        spec = SZ if x.size == 3 else LINF2
        bound = 2.0 * nx / nl.norm_eval(spec, y)
        for t in rng.uniform(-bound, bound, size=100):
            assert nl.norm_eval(spec, x + t * y) >= nx - 1e-8


def test_hilbert_consistency_with_inner_product():
    rng = np.random.default_rng(33)
    spec = nl.euclid(3)
    tol = 1e-8
    for i in range(2000):
        x = rng.standard_normal(3)
        z = rng.standard_normal(3)
        if i % 2 == 0:
            y = z - (z @ x) / (x @ x) * x  # constructed orthogonal
            if np.linalg.norm(y) < 1e-9:
                continue
        else:
            y = z
        ip_orth = abs(x @ y) <= tol * np.linalg.norm(x) * np.linalg.norm(y)
        res = bj_orthogonal(spec, x, y, tol=tol)
        assert res.orthogonal == ip_orth


def test_symmetry_scan_empty_for_euclid():
    assert bj_symmetry_scan(nl.euclid(2), 2000, seed=6) == []
    assert bj_symmetry_scan(nl.euclid(3), 1000, seed=7) == []


def test_symmetry_scan_finds_linf_witnesses():
    wit = bj_symmetry_scan(LINF2, 2000, seed=8, max_witnesses=20)
    assert wit
    for w in wit[:10]:
        fwd = bj_orthogonal(LINF2, w.x, w.y)
        bwd = bj_orthogonal(LINF2, w.y, w.x)
        assert fwd.orthogonal and not bwd.orthogonal
    # the canonical witness shape: x with tied coordinates, y on an axis
    fwd = bj_orthogonal(LINF2, [1, 1], [0, 1])
    bwd = bj_orthogonal(LINF2, [0, 1], [1, 1])
    assert fwd.orthogonal and not bwd.orthogonal


def test_symmetry_scan_finds_sz_witnesses():
    wit = bj_symmetry_scan(SZ, 2000, seed=9, max_witnesses=20)
    assert wit
    for w in wit[:10]:
        assert bj_orthogonal(SZ, w.x, w.y).orthogonal
        assert not bj_orthogonal(SZ, w.y, w.x).orthogonal


def test_lp_and_golden_routes_agree():
    # two independent algorithms for the same minimization: certified LP vs
    # golden-section inside the sound bracket
    rng = np.random.default_rng(99)
    from normlab.optim import minimize_1d_convex

    worst = 0.0
    for _ in range(100):
        rows = rng.standard_normal((4, 3))
        if np.linalg.matrix_rank(rows) < 3:
            continue
        spec = nr.MaxAbsFunctionals(rows)
        x = rng.standard_normal(3)
        y = rng.standard_normal(3)
        lp = bj_orthogonal(spec, x, y)
        assert lp.certified
        bound = 2.0 * nl.norm_eval(spec, x) / nl.norm_eval(spec, y)
        golden = minimize_1d_convex(lambda t: nl.norm_eval(spec, x + t * y),
                                    (-bound, bound), tol=1e-10 * bound)
        worst = max(worst, abs(lp.min_value - golden.value))
    assert worst <= 1e-8


def test_complex_scalar_search():
    spec = nl.euclid(2)
    x = np.array([1.0 + 0j, 0.0])
    res = bj_orthogonal(spec, x, np.array([0.0, 1.0 + 0j]))
    assert res.orthogonal
    # y proportional to i*x: the minimizer lives off the real axis
    res = bj_orthogonal(spec, x, 1j * x)
    assert not res.orthogonal
    assert res.min_value == pytest.approx(0.0, abs=1e-9)
    assert complex(res.witness) == pytest.approx(1j, abs=1e-4)


def test_complex_pnorm_search_matches_modulus_structure():
    spec = nr.PNorm(2, 4.0)
    x = np.array([1.0 + 1j, 0.5 - 0.25j])
    res = bj_orthogonal(spec, x, 0.7j * x)
    assert not res.orthogonal
    assert res.min_value == pytest.approx(0.0, abs=1e-7)
