import math

import numpy as np
import pytest

import normlab as nl
from normlab import norms as nr
from normlab.catalog import SZ_ROWS

SZ = nr.MaxAbsFunctionals(SZ_ROWS)


def catalog_norms():
    """Representative spec of every kind, as (label, spec) pairs."""
    spd = nl.random_instance(3, 3, "spd-hilbert").space
    return [
        ("euclid3", nr.euclid(3)),
        ("l1_2", nr.PNorm(2, 1.0)),
        ("linf_2", nr.PNorm(2, math.inf)),
        ("p1.5_3", nr.PNorm(3, 1.5)),
        ("sz3", SZ),
        ("sz3_dual", nr.dual(SZ)),
        ("dsum", nr.DirectSum(2.0, [nr.PNorm(2, 4.0), nr.PNorm(2, 4.0 / 3.0)])),
        ("schatten1_2", nr.SchattenOne(2)),
        ("schatten_inf_2", nr.SchattenInf(2)),
        ("quadratic3", spd),
    ]


# ---------------------------------------------------------------------------
# evaluation


def test_sz_norm_values():
    assert nl.norm_eval(SZ, [1, 1, 0]) == pytest.approx(1.0, abs=1e-15)
    assert nl.norm_eval(SZ, [0, 1, 1]) == pytest.approx(2.0, abs=1e-15)
    # the closed formula max(|y|+|z|, |x|+|z|/2) on extra spot points
    rng = np.random.default_rng(0)
    for _ in range(200):
        x, y, z = rng.standard_normal(3)
        direct = max(abs(y) + abs(z), abs(x) + 0.5 * abs(z))
        assert nl.norm_eval(SZ, [x, y, z]) == pytest.approx(direct, abs=1e-12)


def test_pnorm_values():
    assert nl.norm_eval(nr.PNorm(2, 1.0), [2, 1]) == 3.0
    assert nl.norm_eval(nr.PNorm(2, math.inf), [2, -5]) == 5.0
    assert nl.norm_eval(nr.euclid(2), [3, 4]) == pytest.approx(5.0)


def test_norm_errors():
    with pytest.raises(nr.NormSpecError):
        nr.PNorm(2, 0.5)
    with pytest.raises(nr.DimensionMismatch):
        nl.norm_eval(nr.euclid(3), [1, 2])
    with pytest.raises(nr.NormSpecError):
        nl.norm_eval(SZ, np.array([1j, 0, 0]))  # polyhedral kinds are real-only
    with pytest.raises(nr.NormSpecError):
        nr.MaxAbsFunctionals([[1.0, 0.0]])  # does not span R^2
    with pytest.raises(nr.NormSpecError):
        nr.PolytopeVertices([[1.0, 0.0], [0.0, 1.0]])  # not symmetric


def test_definiteness_zero_only_at_zero():
    rng = np.random.default_rng(1)
    for label, spec in catalog_norms():
        assert nl.norm_eval(spec, np.zeros(spec.dim)) == 0.0
        for _ in range(20):
            v = rng.standard_normal(spec.dim)
            assert nl.norm_eval(spec, v) > 1e-12, label


# ---------------------------------------------------------------------------
# duality


def test_structural_duals():
    assert nr.dual(nr.PNorm(4, 1.5)) == nr.PNorm(4, 3.0)
    assert nr.dual(nr.PNorm(4, 1.0)) == nr.PNorm(4, math.inf)
    assert nr.dual(nr.PNorm(4, math.inf)) == nr.PNorm(4, 1.0)
    assert nr.dual(nr.SchattenOne(3)) == nr.SchattenInf(3)
    assert nr.dual(nr.SchattenInf(3)) == nr.SchattenOne(3)
    d = nr.dual(SZ)
    assert isinstance(d, nr.PolytopeVertices)
    assert d.vertices.shape == (8, 3)  # the 8 signed rows
    ds = nr.dual(nr.DirectSum(2.0, [nr.PNorm(2, 4.0), nr.PNorm(3, 1.0)]))
    assert isinstance(ds, nr.DirectSum)
    assert ds.outer_p == 2.0
    assert ds.parts[0] == nr.PNorm(2, 4.0 / 3.0)
    assert ds.parts[1] == nr.PNorm(3, math.inf)


def test_dual_eval_cross_validated_by_sampled_sup():
    # independent oracle: sup <f, x> over a sampled unit sphere never exceeds
    # the structural dual norm (Holder) and approaches it from below
    pts = nl.sample_sphere(SZ, 20_000, seed=9)
    for f in [SZ_ROWS[0], SZ_ROWS[2], np.array([0.0, 0.0, 1.0]), np.array([1.0, 1.0, 0.0])]:
        sampled_sup = float(np.max(pts @ f))
        exact = nl.dual_eval(SZ, f)
        assert sampled_sup <= exact + 1e-9
        assert sampled_sup >= 0.95 * exact


def test_dual_eval_known_values():
    # (0,0,1) decomposes as 0.5*(0,1,1) + 0.5*(0,-1,1): dual norm 1
    assert nl.dual_eval(SZ, [0, 0, 1]) == pytest.approx(1.0, abs=1e-9)
    assert nl.dual_eval(SZ, [1, 0, 0]) == pytest.approx(1.0, abs=1e-9)
    assert nl.dual_eval(SZ, [1, 1, 0]) == pytest.approx(2.0, abs=1e-9)
    assert nl.dual_eval(nr.PNorm(2, 1.0), [1, 1]) == pytest.approx(1.0)  # max norm


def test_bipolar_round_trip():
    rng = np.random.default_rng(2)
    for label, spec in catalog_norms():
        roundtrip = nr.dual(nr.dual(spec))
        pts = rng.standard_normal((1000, spec.dim))
        orig = nl.norm_eval_many(spec, pts)
        back = nl.norm_eval_many(roundtrip, pts)
        assert np.max(np.abs(orig - back)) <= 1e-9 * np.max(orig), label


def test_bipolar_structural_exactness():
    # p-norm and polyhedral kinds round-trip with zero evaluation drift
    for spec in (nr.PNorm(3, 1.0), nr.PNorm(3, math.inf), SZ):
        roundtrip = nr.dual(nr.dual(spec))
        pts = np.random.default_rng(3).standard_normal((200, 3))
        assert np.array_equal(nl.norm_eval_many(spec, pts), nl.norm_eval_many(roundtrip, pts))


def test_holder_inequality():
    rng = np.random.default_rng(4)
    for label, spec in catalog_norms():
        xs = rng.standard_normal((300, spec.dim))
        fs = rng.standard_normal((300, spec.dim))
        lhs = np.abs(np.sum(xs * fs, axis=1))
        rhs = nl.dual_eval_many(spec, fs) * nl.norm_eval_many(spec, xs)
        assert np.max(lhs - rhs) <= 1e-9 * max(1.0, np.max(rhs)), label


# ---------------------------------------------------------------------------
# gauge machinery


def test_gauge_lp_examples():
    cross = np.vstack([np.eye(2), -np.eye(2)])
    assert nl.gauge_lp(cross, [0.5, 0.5]) == pytest.approx(1.0, abs=1e-10)
    sz_dual = np.vstack([SZ_ROWS, -SZ_ROWS])
    assert nl.gauge_lp(sz_dual, [0, 0, 1]) == pytest.approx(1.0, abs=1e-10)
    assert nl.gauge_lp(cross, [0.0, 0.0]) == 0.0
    with pytest.raises(nr.NormSpecError):
        nl.gauge_lp([[1.0, 0.0], [-1.0, 0.0]], [0.0, 1.0])  # fails to span


def test_gauge_fast_paths_match_simplex():
    rng = np.random.default_rng(6)
    for n, extra in [(2, 0), (3, 0), (3, 1), (4, 1), (3, 3), (4, 4)]:
        w = rng.standard_normal((n + extra, n))
        while np.linalg.matrix_rank(w) < n:
            w = rng.standard_normal((n + extra, n))
        verts = np.vstack([w, -w])
        solver = nr.GaugeSolver(verts)
        for _ in range(25):
            f = rng.standard_normal(n)
            fast = solver.gauge(f)
            reference = nl.gauge_lp(verts, f)
            assert fast == pytest.approx(reference, abs=1e-9), (n, extra, solver.mode)


# ---------------------------------------------------------------------------
# singular values


def test_singular_values_examples():
    np.testing.assert_allclose(nl.singular_values(np.eye(2)), [1.0, 1.0], atol=1e-12)
    np.testing.assert_allclose(nl.singular_values(np.diag([3.0, -4.0])), [4.0, 3.0], atol=1e-12)
    np.testing.assert_allclose(nl.singular_values([[0.0, 2.0], [0.0, 0.0]]), [2.0, 0.0], atol=1e-12)


def test_singular_values_cross_checked_by_gram_eigenvalues():
    rng = np.random.default_rng(7)
    for n in (2, 3, 4, 6, 8):
        t = rng.standard_normal((n, n))
        sv = nl.singular_values(t)
        sv_gram = nl.singular_values_by_gram(t)
        np.testing.assert_allclose(sv, sv_gram, atol=1e-10)
        assert nl.norm_eval(nr.SchattenOne(n), t.ravel()) == pytest.approx(sv.sum(), abs=1e-10)
        assert nl.norm_eval(nr.SchattenInf(n), t.ravel()) == pytest.approx(sv[0], abs=1e-12)


def test_singular_values_complex():
    rng = np.random.default_rng(8)
    t = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    np.testing.assert_allclose(nl.singular_values(t), nl.singular_values_by_gram(t), atol=1e-10)


# ---------------------------------------------------------------------------
# sampling


def test_sample_sphere_contract():
    for label, spec in catalog_norms():
        pts = nl.sample_sphere(spec, 200, seed=7)
        again = nl.sample_sphere(spec, 200, seed=7)
        assert pts.tobytes() == again.tobytes(), label
        assert np.max(np.abs(nl.norm_eval_many(spec, pts) - 1.0)) <= 1e-12, label


def test_sample_sphere_prefix_stability():
    spec = nr.euclid(3)
    small = nl.sample_sphere(spec, 100, seed=11)
    large = nl.sample_sphere(spec, 1000, seed=11)
    assert np.array_equal(small, large[:100])


def test_sample_sphere_complex():
    pts = nl.sample_sphere(nr.euclid(2), 50, seed=1, field="complex")
    assert np.iscomplexobj(pts)
    assert np.max(np.abs(nl.norm_eval_many(nr.euclid(2), pts) - 1.0)) <= 1e-12


# ---------------------------------------------------------------------------
# norm axioms, sampled


def test_homogeneity():
    rng = np.random.default_rng(12)
    for label, spec in catalog_norms():
        vs = rng.standard_normal((1000, spec.dim))
        ts = rng.uniform(-3.0, 3.0, size=1000)
        lhs = nl.norm_eval_many(spec, vs * ts[:, None])
        rhs = np.abs(ts) * nl.norm_eval_many(spec, vs)
        assert np.max(np.abs(lhs - rhs)) <= 1e-9 * np.max(rhs + 1e-30), label


def test_triangle_inequality():
    rng = np.random.default_rng(13)
    for label, spec in catalog_norms():
        us = rng.standard_normal((1000, spec.dim))
        vs = rng.standard_normal((1000, spec.dim))
        lhs = nl.norm_eval_many(spec, us + vs)
        rhs = nl.norm_eval_many(spec, us) + nl.norm_eval_many(spec, vs)
        assert np.max(lhs - rhs) <= 1e-9 * max(1.0, np.max(rhs)), label


# ---------------------------------------------------------------------------
# norming functionals


def test_norming_functional_properties():
    rng = np.random.default_rng(14)
    for label, spec in catalog_norms():
        for _ in range(15):
            x = rng.standard_normal(spec.dim)
            f = nl.norming_functional(spec, x)
            assert nr.pairing(f, x) == pytest.approx(nl.norm_eval(spec, x), rel=1e-9), label
            assert nl.dual_eval(spec, f) == pytest.approx(1.0, abs=1e-8), label


def test_direct_sum_extreme_outer_exponents():
    rng = np.random.default_rng(17)
    for outer in (1.0, math.inf):
        ds = nr.DirectSum(outer, [nr.PNorm(2, 1.0), nr.PNorm(3, math.inf)])
        assert nr.dual(ds).outer_p == nr.conjugate_exponent(outer)
        for _ in range(30):
            x = rng.standard_normal(5)
            f = nl.norming_functional(ds, x)
            assert nr.pairing(f, x) == pytest.approx(nl.norm_eval(ds, x), rel=1e-9)
            assert nl.dual_eval(ds, f) == pytest.approx(1.0, abs=1e-8)
        pts = rng.standard_normal((300, 5))
        fs = rng.standard_normal((300, 5))
        lhs = np.abs(np.einsum("ni,ni->n", pts, fs))
        rhs = nl.dual_eval_many(ds, fs) * nl.norm_eval_many(ds, pts)
        assert np.max(lhs - rhs) <= 1e-9 * np.max(rhs)


def test_norming_functional_complex():
    rng = np.random.default_rng(15)
    for spec in (nr.euclid(3), nr.PNorm(3, 1.5), nr.PNorm(3, 1.0), nr.SchattenOne(2)):
        for _ in range(10):
            x = rng.standard_normal(spec.dim) + 1j * rng.standard_normal(spec.dim)
            f = nl.norming_functional(spec, x)
            val = nr.pairing(f, x)
            assert abs(val.imag) <= 1e-9
            assert val.real == pytest.approx(nl.norm_eval(spec, x), rel=1e-9)
            assert nl.dual_eval(spec, f) == pytest.approx(1.0, abs=1e-8)


# ---------------------------------------------------------------------------
# JSON wire format


def test_json_round_trip():
    for label, spec in catalog_norms():
        assert nr.spec_from_json(nr.spec_to_json(spec)) == spec, label


def test_json_inf_encoding():
    spec = nr.spec_from_json('{"kind":"p","dim":2,"p":"inf"}')
    assert spec == nr.PNorm(2, math.inf)
    assert nr.spec_to_json(spec) == '{"dim": 2, "kind": "p", "p": "inf"}'


def test_json_unknown_keys_rejected():
    with pytest.raises(nr.NormSpecError):
        nr.spec_from_json('{"kind":"p","dim":2,"p":2,"extra":1}')
    with pytest.raises(nr.NormSpecError):
        nr.spec_from_json('{"kind":"frobnitz","dim":2}')
    with pytest.raises(nr.NormSpecError):
        nr.spec_from_json('{"kind":"p","dim":2}')


def test_complex_quadratic_round_trip():
    a = np.array([[2.0, 0.5 + 0.25j], [0.5 - 0.25j, 1.0]])
    spec = nr.Quadratic(a)
    back = nr.spec_from_json(nr.spec_to_json(spec))
    assert back == spec
    x = np.array([1.0 + 1j, -0.5])
    assert nl.norm_eval(back, x) == pytest.approx(nl.norm_eval(spec, x))


def test_conj_spec_matches_conjugated_argument():
    a = np.array([[2.0, 0.5 + 0.25j], [0.5 - 0.25j, 1.0]])
    spec = nr.Quadratic(a)
    rng = np.random.default_rng(16)
    for _ in range(10):
        x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        assert nl.norm_eval(nr.conj_spec(spec), x) == pytest.approx(
            nl.norm_eval(spec, np.conj(x)), rel=1e-12)
