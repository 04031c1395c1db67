import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from z2lab.errors import NoConvergence
from z2lab.seqspace import (
    _branch_section,
    kp_inverse,
    kp_map,
    lf_quasinorm,
    lf_star_quasinorm_ub,
    lp_norm,
    spread,
)


def test_lp_norm_examples():
    assert lp_norm([1.0, 0.0, 0.0], 2) == 1.0
    assert lp_norm([3.0, 4.0], 2) == 5.0
    assert lp_norm([1.0, 1.0, 1.0, 1.0], 1) == 4.0
    assert lp_norm([-2.0, 1.0], np.inf) == 2.0
    assert lp_norm(np.zeros(5), 3) == 0.0


def test_lp_norm_rejects_bad_input():
    with pytest.raises(ValueError):
        lp_norm([1.0, np.nan], 2)
    with pytest.raises(ValueError):
        lp_norm([1.0], 0.5)
    with pytest.raises(ValueError):
        lp_norm(np.zeros((2, 2)), 2)


def test_kp_map_basis_vector_is_zero():
    assert np.array_equal(kp_map([1.0, 0, 0, 0]), np.zeros(4))


def test_kp_map_spread():
    s = spread(4)
    expected = -np.log(4) * s
    assert np.allclose(kp_map(s), expected, atol=1e-15)
    assert np.allclose(kp_map(s), np.full(4, -np.log(2)), atol=1e-15)


def test_kp_map_zero_vector():
    assert np.array_equal(kp_map(np.zeros(3)), np.zeros(3))


def test_kp_map_homogeneity_example():
    s = spread(4)
    assert np.allclose(kp_map(2.0 * s), 2.0 * kp_map(s), atol=1e-14)


@settings(max_examples=200, deadline=None)
@given(
    lam=st.floats(min_value=-50.0, max_value=50.0),
    seed=st.integers(min_value=0, max_value=10_000),
)
def test_kp_map_homogeneity_property(lam, seed):
    x = np.random.default_rng(seed).standard_normal(32)
    defect = np.linalg.norm(kp_map(lam * x) - lam * kp_map(x))
    assert defect <= 1e-10 * (1.0 + abs(lam)) * np.linalg.norm(x)


def _bisect_scalar_branch(omega_k, t, lo, hi):
    # independent oracle: plain bisection of 2 x log(|x|/t) = omega_k on [lo, hi]
    def f(x):
        return 2.0 * x * np.log(abs(x) / t) - omega_k if x != 0 else -omega_k

    flo, fhi = f(lo), f(hi)
    assert flo * fhi <= 0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) * flo <= 0:
            hi = mid
        else:
            lo, flo = mid, f(mid)
    return 0.5 * (lo + hi)


def test_branch_section_against_bisection_oracle():
    rng = np.random.default_rng(3)
    t = 1.7
    omega = rng.uniform(-2.0 * t / np.e * 0.95, 2.0 * t / np.e * 0.95, size=12)
    x = _branch_section(omega, t)
    for k, om in enumerate(omega):
        if om == 0.0:
            assert x[k] == 0.0
            continue
        sign = -np.sign(om)
        lo, hi = (1e-300, t / np.e) if sign > 0 else (-t / np.e, -1e-300)
        ref = _bisect_scalar_branch(om, t, lo, hi)
        assert abs(x[k] - ref) <= 1e-12 * t


def test_kp_inverse_zero():
    assert np.array_equal(kp_inverse(np.zeros(6)), np.zeros(6))


def test_kp_inverse_round_trip_spread():
    omega = kp_map(spread(8))
    x = kp_inverse(omega, tol=1e-9)
    assert np.linalg.norm(kp_map(x) - omega) <= 1e-9
    assert np.allclose(x, spread(8), atol=1e-9)


def test_kp_inverse_round_trip_random():
    rng = np.random.default_rng(1)
    for _ in range(20):
        v = rng.standard_normal(64)
        v /= np.linalg.norm(v)
        omega = kp_map(v)
        x = kp_inverse(omega, tol=1e-8)
        assert np.linalg.norm(kp_map(x) - omega) <= 1e-8


def test_kp_inverse_unreachable_raises():
    # a basis vector has no preimage: single-support vectors map to zero
    with pytest.raises(NoConvergence) as err:
        kp_inverse(np.array([1.0, 0.0, 0.0, 0.0]), tol=1e-6)
    assert err.value.residual is not None
    assert err.value.residual > 1e-6


def test_lf_quasinorm_examples():
    e1 = np.array([1.0, 0.0, 0.0])
    assert lf_quasinorm(e1) == 1.0
    for n in (4, 16, 64):
        assert np.isclose(lf_quasinorm(spread(n)), 1.0 + np.log(n), atol=1e-12)
    assert lf_quasinorm(np.zeros(4)) == 0.0
    rng = np.random.default_rng(0)
    x = rng.standard_normal(32)
    assert lf_quasinorm(x) >= np.linalg.norm(x)


def test_lf_star_zero():
    assert lf_star_quasinorm_ub(np.zeros(5)) == 0.0


def test_lf_star_small_image_bound():
    v = 0.01 * spread(64)
    assert lf_star_quasinorm_ub(kp_map(v)) <= 0.01 + 1e-12


def test_lf_star_basis_vector_against_grid_oracle():
    # brute force over the one-dimensional slice x = s e_1: the map vanishes
    # on single-support vectors, so the objective there is 1 + |s|
    omega = np.zeros(8)
    omega[0] = 1.0
    oracle = min(
        np.linalg.norm(omega - kp_map(s * omega)) + abs(s)
        for s in np.linspace(-1.0, 1.0, 201)
    )
    ub = lf_star_quasinorm_ub(omega)
    assert ub <= oracle + 1e-12
    assert ub <= 1.0 + 1e-12


def test_lf_star_never_exceeds_l2_norm():
    rng = np.random.default_rng(2)
    for _ in range(10):
        omega = rng.standard_normal(32)
        assert lf_star_quasinorm_ub(omega, budget=10) <= np.linalg.norm(omega) + 1e-12


def test_lf_star_monotone_in_budget():
    omega = kp_map(spread(32)) + 0.1
    vals = [lf_star_quasinorm_ub(omega, budget=b) for b in (0, 5, 20, 60)]
    assert all(b <= a + 1e-15 for a, b in zip(vals, vals[1:]))
