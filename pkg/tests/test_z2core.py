import numpy as np
import pytest

from z2lab.seqspace import kp_map, lf_quasinorm, lf_star_quasinorm_ub, spread
from z2lab.z2core import (
    Z2Functional,
    Z2Vec,
    d_map,
    inclusion_i,
    inclusion_j,
    is_isotropic,
    lift_Lp,
    lift_Lq,
    omega_form,
    pairing,
    quotient_p,
    quotient_q,
    z2_quasinorm,
    z2_quasinorm_jq,
)


def e(n, k):
    v = np.zeros(n)
    v[k] = 1.0
    return v


def test_z2vec_validation():
    with pytest.raises(ValueError):
        Z2Vec(np.zeros(3), np.zeros(4))


def test_quasinorm_examples():
    y = np.array([3.0, 4.0])
    assert z2_quasinorm(Z2Vec(y, np.zeros(2))) == 5.0
    rng = np.random.default_rng(0)
    x = rng.standard_normal(16)
    assert np.isclose(z2_quasinorm(Z2Vec(kp_map(x), x)), np.linalg.norm(x), atol=1e-12)
    for n in (4, 32):
        s = spread(n)
        assert np.isclose(z2_quasinorm(Z2Vec(np.zeros(n), s)), np.log(n) + 1.0, atol=1e-12)


def test_quasinorm_positivity():
    assert z2_quasinorm(Z2Vec.zero(5)) == 0.0
    rng = np.random.default_rng(1)
    for _ in range(50):
        z = Z2Vec(rng.standard_normal(8), rng.standard_normal(8))
        assert z2_quasinorm(z) > 0.0


def test_quasinorm_jq_zero_omega():
    rng = np.random.default_rng(2)
    x = rng.standard_normal(16)
    assert np.isclose(z2_quasinorm_jq(Z2Vec(np.zeros(16), x)), lf_quasinorm(x), atol=1e-12)


def test_quasinorm_jq_graph_point():
    rng = np.random.default_rng(3)
    x = rng.standard_normal(64)
    x /= np.linalg.norm(x)
    omega = kp_map(x)
    val = z2_quasinorm_jq(Z2Vec(omega, x), budget=20, tol=1e-8)
    # the first term is tolerance-sized since the inverse recovers x
    assert val <= lf_star_quasinorm_ub(omega, budget=20) + 1e-4


def test_quasinorm_jq_equivalence_ratio_recorded():
    # empirical constants of the equivalent presentation on an ensemble the
    # inverse solver can reach: omega drawn from the image of the map
    rng = np.random.default_rng(7)
    ratios = []
    for _ in range(200):
        z = Z2Vec(kp_map(rng.standard_normal(128)), rng.standard_normal(128))
        ratios.append(z2_quasinorm_jq(z, budget=10) / z2_quasinorm(z))
    m, M = min(ratios), max(ratios)
    print(f"\n[jq equivalence] m={m:.4f} M={M:.4f} over 200 draws at dim 128")
    assert m > 0.0
    assert M / m < 10.0


def test_pairing_examples():
    n = 4
    assert pairing(Z2Functional(e(n, 0), np.zeros(n)), Z2Vec(np.zeros(n), e(n, 0))) == 1.0
    assert pairing(Z2Functional(np.zeros(n), e(n, 0)), Z2Vec(e(n, 0), np.zeros(n))) == 1.0
    assert pairing(Z2Functional(e(n, 0), np.zeros(n)), Z2Vec(e(n, 0), np.zeros(n))) == 0.0


def test_omega_form_alternating_and_cross():
    n = 4
    z = Z2Vec(np.array([1.0, 2, 3, 4]), np.array([4.0, 3, 2, 1]))
    assert omega_form(z, z) == 0.0
    assert omega_form(Z2Vec(e(n, 0), np.zeros(n)), Z2Vec(np.zeros(n), e(n, 0))) == 1.0
    rng = np.random.default_rng(4)
    for _ in range(20):
        x, y = rng.standard_normal(n), rng.standard_normal(n)
        assert omega_form(inclusion_j(x), inclusion_j(y)) == 0.0


def test_omega_form_antisymmetric_exactly():
    rng = np.random.default_rng(5)
    for _ in range(100):
        z = Z2Vec(rng.standard_normal(16), rng.standard_normal(16))
        w = Z2Vec(rng.standard_normal(16), rng.standard_normal(16))
        assert omega_form(z, w) == -omega_form(w, z)


def test_d_map_realizes_the_form():
    rng = np.random.default_rng(6)
    for _ in range(1000):
        z = Z2Vec(rng.standard_normal(8), rng.standard_normal(8))
        w = Z2Vec(rng.standard_normal(8), rng.standard_normal(8))
        assert abs(pairing(d_map(z), w) - omega_form(z, w)) <= 1e-12


def test_d_map_examples():
    n = 3
    assert pairing(d_map(Z2Vec(e(n, 0), np.zeros(n))), Z2Vec(np.zeros(n), e(n, 0))) == 1.0
    f = d_map(Z2Vec.zero(n))
    assert np.array_equal(f.phi, np.zeros(n))
    assert np.array_equal(f.psi, np.zeros(n))


def test_inclusions_quotients_exactness():
    rng = np.random.default_rng(7)
    y = rng.standard_normal(12)
    assert np.array_equal(quotient_p(inclusion_i(y)), np.zeros(12))
    assert np.array_equal(quotient_q(inclusion_j(y)), np.zeros(12))
    assert z2_quasinorm(inclusion_i(y)) == np.linalg.norm(y)


def test_lift_Lp():
    n = 8
    z = lift_Lp(e(n, 0))
    assert np.array_equal(z.omega, np.zeros(n))
    assert np.array_equal(z.x, e(n, 0))
    rng = np.random.default_rng(8)
    for _ in range(100):
        y = rng.standard_normal(n)
        assert np.array_equal(quotient_p(lift_Lp(y)), y)
        assert np.isclose(z2_quasinorm(lift_Lp(y)), np.linalg.norm(y), atol=1e-12)


def test_lift_Lq_round_trip():
    rng = np.random.default_rng(9)
    v = rng.standard_normal(64)
    v /= np.linalg.norm(v)
    omega = kp_map(v)
    z = lift_Lq(omega, tol=1e-8)
    assert np.array_equal(quotient_q(z), omega)
    assert np.linalg.norm(kp_map(z.x) - omega) <= 1e-8


def test_is_isotropic():
    n = 6
    i_basis = [Z2Vec(e(n, k), np.zeros(n)) for k in range(n)]
    j_basis = [Z2Vec(np.zeros(n), e(n, k)) for k in range(n)]
    diag_basis = [Z2Vec(e(n, k), e(n, k)) for k in range(n)]
    assert is_isotropic(i_basis).isotropic
    assert is_isotropic(j_basis).isotropic
    assert is_isotropic(diag_basis).isotropic
    mixed = [Z2Vec(e(n, 0), np.zeros(n)), Z2Vec(np.zeros(n), e(n, 0))]
    rep = is_isotropic(mixed)
    assert not rep.isotropic
    assert rep.max_abs == 1.0
    assert rep.pair == (0, 1)


def test_quasi_triangle_constant_recorded():
    rng = np.random.default_rng(10)
    ks = {}
    for dim in (64, 256, 1024):
        worst = 0.0
        for _ in range(500):
            z = Z2Vec(rng.standard_normal(dim), rng.standard_normal(dim))
            w = Z2Vec(rng.standard_normal(dim), rng.standard_normal(dim))
            worst = max(worst, z2_quasinorm(z + w) / (z2_quasinorm(z) + z2_quasinorm(w)))
        ks[dim] = worst
    print(f"\n[quasi-triangle] K_emp = { {k: round(v, 4) for k, v in ks.items()} }")
    vals = list(ks.values())
    assert all(np.isfinite(v) for v in vals)
    # stability across dims: no growth trend
    assert max(vals) / min(vals) < 1.3
