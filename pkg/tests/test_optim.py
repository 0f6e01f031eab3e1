import math

import numpy as np
import pytest

import normlab as nl
from normlab import norms as nr
from normlab.optim import OptimError, minimize_1d_convex, minimize_over_subspace


def test_golden_section_quadratic():
    res = minimize_1d_convex(lambda t: (t - 2.0) ** 2, (-10.0, 10.0), tol=1e-8)
    assert res.converged
    assert res.argmin == pytest.approx(2.0, abs=1e-6)
    assert res.value == pytest.approx(0.0, abs=1e-12)


def test_golden_section_flat_minimum():
    res = minimize_1d_convex(lambda t: max(1.0, abs(1.0 + t)), (-4.0, 4.0))
    assert res.value == pytest.approx(1.0, abs=1e-9)
    assert abs(1.0 + res.argmin) <= 1.0 + 1e-6  # any point of the flat region


def test_golden_section_kinks():
    res = minimize_1d_convex(lambda t: abs(2.0 + t) + abs(1.0 - 2.0 * t), (-6.0, 6.0))
    assert res.argmin == pytest.approx(0.5, abs=1e-6)
    assert res.value == pytest.approx(2.5, abs=1e-9)


def test_golden_section_rejects_non_finite():
    with pytest.raises(OptimError):
        minimize_1d_convex(lambda t: math.inf if t > 0 else -t, (-1.0, 1.0))


def test_golden_section_vs_dense_grid():
    # oracle: brute-force scan of 1e6 points; grid error is bounded by the
    # slope times the spacing, the golden value must sit inside that band
    rng = np.random.default_rng(21)
    lo, hi = -10.0, 10.0
    grid = np.linspace(lo, hi, 1_000_000)
    for _ in range(50):
        a = rng.uniform(-2.0, 2.0, size=6)
        b = rng.uniform(-5.0, 5.0, size=6)
        vals = np.abs(np.outer(grid, a) - b).sum(axis=1)
        grid_min = float(vals.min())
        res = minimize_1d_convex(lambda t: float(np.abs(a * t - b).sum()), (lo, hi), tol=1e-8)
        slope = float(np.abs(a).sum())
        spacing = (hi - lo) / (len(grid) - 1)
        assert res.value <= grid_min + 1e-8
        assert grid_min <= res.value + slope * spacing + 1e-8


def test_subspace_euclid_orthogonal_complement():
    res = minimize_over_subspace(nl.euclid(3), [1, 0, 0], [[0, 1, 0], [0, 0, 1]])
    assert res.value == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(res.argmin, [0.0, 0.0], atol=1e-10)
    assert res.certified


def test_subspace_l1_kink_instance():
    res = minimize_over_subspace(nr.PNorm(2, 1.0), [2, 1], [[1, -2]])
    assert res.certified and res.method == "exact-lp"
    assert res.value == pytest.approx(2.5, abs=1e-10)
    assert res.argmin[0] == pytest.approx(0.5, abs=1e-10)


def test_min_result_value_matches_argmin():
    # the reported value is the objective at the reported argmin
    rng = np.random.default_rng(25)
    for _ in range(20):
        rows = rng.standard_normal((4, 3))
        if np.linalg.matrix_rank(rows) < 3:
            continue
        norm = nr.MaxAbsFunctionals(rows)
        x = rng.standard_normal(3)
        basis = rng.standard_normal((3, 2))
        res = minimize_over_subspace(norm, x, basis)
        reval = nl.norm_eval(norm, x + basis @ res.argmin)
        assert abs(res.value - reval) <= 1e-9
    res = minimize_1d_convex(lambda t: abs(t - 1.0) + 0.5 * abs(t), (-4.0, 4.0))
    assert res.value == abs(res.argmin - 1.0) + 0.5 * abs(res.argmin)


def test_subspace_zero_vector():
    res = minimize_over_subspace(nr.MaxAbsFunctionals(np.eye(2)), [0, 0], [[1, 1]])
    assert res.value == 0.0


def test_subspace_dependent_basis_rejected():
    with pytest.raises(OptimError):
        minimize_over_subspace(nl.euclid(3), [1, 0, 0], [[0, 1, 0], [0, 2, 0]])


def test_subspace_smooth_descent_matches_projection():
    # p = 2 closed form vs descent through a nearby smooth exponent
    rng = np.random.default_rng(22)
    for _ in range(10):
        x = rng.standard_normal(3)
        basis = rng.standard_normal((3, 1))
        exact = minimize_over_subspace(nl.euclid(3), x, basis)
        near = minimize_over_subspace(nr.PNorm(3, 2.000001), x, basis, tol=1e-9)
        assert near.value == pytest.approx(exact.value, abs=1e-5)


def _reference_pattern_search(norm, x, basis, rounds=220):
    """Independent coordinate-descent oracle for the LP route."""
    b = np.column_stack([np.asarray(v, dtype=float) for v in basis])
    c = np.zeros(b.shape[1])
    val = nl.norm_eval(norm, x)
    h = 1.0
    for _ in range(rounds):
        improved = False
        for j in range(c.size):
            for s in (1.0, -1.0):
                cand = c.copy()
                cand[j] += s * h
                fc = nl.norm_eval(norm, x + b @ cand)
                if fc < val - 1e-15:
                    c, val = cand, fc
                    improved = True
        if not improved:
            h *= 0.5
            if h < 1e-9:
                break
    return val


def test_lp_route_matches_pattern_search_upper_bound():
    rng = np.random.default_rng(23)
    checked = 0
    for i in range(200):
        n = 2 + i % 2
        rows = rng.standard_normal((n + (i % 3), n))
        if np.linalg.matrix_rank(rows) < n:
            continue
        norm = nr.MaxAbsFunctionals(rows)
        x = rng.standard_normal(n)
        basis = [rng.standard_normal(n)]
        lp = minimize_over_subspace(norm, x, basis)
        assert lp.certified
        ps_val = _reference_pattern_search(norm, x, basis)
        assert lp.value <= ps_val + 1e-9  # the LP is never beaten
        assert ps_val - lp.value <= 1e-6  # and the search gets this close
        checked += 1
    assert checked >= 180


def test_extremize_gain_identity_euclid():
    g = nl.extremize_gain(np.eye(3), nl.euclid(3), nl.euclid(3), samples=100, seed=0)
    assert g.low == pytest.approx(1.0, abs=1e-12)
    assert g.high == pytest.approx(1.0, abs=1e-12)


def test_extremize_gain_l1_to_linf():
    g = nl.extremize_gain(np.eye(2), nr.PNorm(2, 1.0), nr.PNorm(2, math.inf),
                          samples=500, seed=1)
    assert g.low == pytest.approx(0.5, abs=1e-9)
    assert g.high == pytest.approx(1.0, abs=1e-9)
    np.testing.assert_allclose(np.abs(g.arg_min), [0.5, 0.5], atol=1e-9)


def test_extremize_gain_diagonal_map():
    g = nl.extremize_gain(np.diag([1.0, 2.0]), nl.euclid(2), nl.euclid(2),
                          samples=100, seed=2)
    assert g.low == pytest.approx(1.0, abs=1e-10)
    assert g.high == pytest.approx(2.0, abs=1e-10)


def test_extremize_gain_refines_non_exact_path():
    # direct sums have no exact probes: sampled + refined estimates must
    # still bracket a large fresh sample
    rng = np.random.default_rng(77)
    ds = nr.DirectSum(2.0, [nr.PNorm(2, 4.0), nr.PNorm(2, 4.0 / 3.0)])
    a = rng.standard_normal((4, 4)) + 1.5 * np.eye(4)
    g = nl.extremize_gain(a, ds, nr.dual(ds), samples=3000, seed=8)
    assert not (g.exact_low or g.exact_high)
    fresh = nl.sample_sphere(ds, 50_000, seed=123)
    ratios = nl.norm_eval_many(nr.dual(ds), fresh @ a.T)
    assert g.low <= ratios.min() + 1e-6
    assert g.high >= ratios.max() - 1e-3


def test_extremize_gain_brackets_fresh_ratios():
    # polyhedral norms in low dimension: no fresh sampled ratio escapes
    # [low - 1e-6, high + 1e-6]
    rng = np.random.default_rng(24)
    for dim in (2, 3, 4):
        rows = rng.standard_normal((dim, dim)) + np.eye(dim) * 1.5
        norm = nr.MaxAbsFunctionals(rows)
        a = rng.standard_normal((dim, dim)) + np.eye(dim)
        g = nl.extremize_gain(a, norm, nr.dual(norm), samples=2000, seed=3)
        fresh = nl.sample_sphere(norm, 100_000, seed=999)
        ratios = nl.norm_eval_many(nr.dual(norm), fresh @ a.T)
        assert np.min(ratios) >= g.low - 1e-6
        assert np.max(ratios) <= g.high + 1e-6
