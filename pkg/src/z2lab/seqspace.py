"""Finite truncations of the sequence spaces underlying the twisted Hilbert space.

Vectors are plain 1-D float64 numpy arrays.  The module provides the lp norms,
the quasilinear map ``kp_map`` (coordinatewise ``2 x log(|x| / ||x||_2)``), a
numerical section ``kp_inverse`` for it, and the two quasinorms it induces:
``lf_quasinorm`` on its domain and ``lf_star_quasinorm_ub`` (an upper bound,
the exact value being a nonconvex infimum) on its range.
"""

from __future__ import annotations

import numpy as np
from scipy.special import lambertw

from .errors import NoConvergence

# One ulp inside 1/e: lambertw's real branch -1 ends at -1/e and the closest
# double to 1/e lands a hair beyond it, returning NaN.
_INV_E = np.nextafter(1.0 / np.e, 0.0)
_LOG_FLOOR = -50.0  # clip for log(|x|/t) at vanishing coordinates


def as_vector(v) -> np.ndarray:
    """Coerce to a validated 1-D float64 array: dim >= 1, all entries finite."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {arr.shape}")
    if arr.size < 1:
        raise ValueError("vector must have dimension >= 1")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector entries must be finite")
    return arr


def check_p(p) -> float:
    """Validate an lp exponent: a real in [1, inf] (np.inf admitted)."""
    p = float(p)
    if not (p >= 1.0):
        raise ValueError(f"p must satisfy p >= 1, got {p}")
    return p


def lp_norm(v, p=2.0) -> float:
    """The lp norm (sum |v_i|^p)^(1/p); max |v_i| for p = inf."""
    v = as_vector(v)
    p = check_p(p)
    if np.isinf(p):
        return float(np.max(np.abs(v)))
    if p == 1.0:
        return float(np.sum(np.abs(v)))
    if p == 2.0:
        return float(np.linalg.norm(v))
    return float(np.sum(np.abs(v) ** p) ** (1.0 / p))


def basis_vector(n: int, k: int) -> np.ndarray:
    """Standard basis vector e_k (0-indexed) in dimension n."""
    e = np.zeros(n)
    e[k] = 1.0
    return e


def spread(n: int, k: int | None = None) -> np.ndarray:
    """Unit vector with k equal leading entries, k^(-1/2) * (1,...,1,0,...).

    These are the canonical witnesses: the log map sends spread(n, k) to
    -(log k) * spread(n, k), which drives every unboundedness demonstration.
    """
    if k is None:
        k = n
    if not (1 <= k <= n):
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    v = np.zeros(n)
    v[:k] = 1.0 / np.sqrt(k)
    return v


def kp_map(x) -> np.ndarray:
    """Apply the quasilinear map: (kp_map x)_k = 2 x_k log(|x_k| / ||x||_2).

    Zero coordinates map to 0 (the limit t log t -> 0), and the zero vector
    maps to itself.  Positive homogeneity kp_map(c x) = c kp_map(x) holds for
    every real c by construction.
    """
    x = as_vector(x)
    t = np.linalg.norm(x)
    if t == 0.0:
        return np.zeros_like(x)
    out = np.zeros_like(x)
    nz = x != 0.0
    out[nz] = 2.0 * x[nz] * np.log(np.abs(x[nz]) / t)
    return out


def _branch_section(omega: np.ndarray, t: float, large=None) -> np.ndarray:
    """Coordinatewise solve 2 x_k log(|x_k|/t) = omega_k at fixed scale t.

    Substituting x = t*u reduces each coordinate to u log|u| = omega_k/(2t),
    solved on the small branch |u| <= 1/e via exp(W_{-1}(-|r|)) with the sign
    opposite to r; coordinates flagged in ``large`` use the other monotone
    branch 1/e <= |u| <= 1 via W_0.  Arguments beyond the reachable range
    |r| <= 1/e are clipped to the branch point, so the map is defined and
    continuous for every t > 0; the final residual check decides whether the
    clip mattered.
    """
    r = omega / (2.0 * t)
    a = np.minimum(np.abs(r), _INV_E)
    u = np.zeros_like(a)
    nz = a > 0.0
    if np.any(nz):
        u[nz] = np.exp(lambertw(-a[nz], k=-1).real)
    if large is not None:
        flip = large & nz
        if np.any(flip):
            u[flip] = np.exp(lambertw(-a[flip], k=0).real)
    return -np.sign(r) * u * t


def _bisect_consistency(omega, large, lo, hi, h_lo, h_hi, iters=120):
    """Bisect h(t) = ||x(t)||_2 - t on a sign-change bracket [lo, hi]."""
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        h_mid = np.linalg.norm(_branch_section(omega, mid, large)) - mid
        if h_mid == 0.0:
            return mid
        if (h_mid > 0) == (h_lo > 0):
            lo, h_lo = mid, h_mid
        else:
            hi, h_hi = mid, h_mid
        if (hi - lo) <= 1e-15 * hi:
            break
    return 0.5 * (lo + hi)


def _consistent_scales(omega, large, nrm, max_iter):
    """Scales t with ||x(t)||_2 = t for one branch assignment, smallest first.

    Runs the fixed-point iteration from t = ||omega||_2 / 2 (switching to
    bisection once two iterates straddle a sign change), then sweeps a
    geometric grid including ||omega||_2 * 2^k, k = -6..2, for any brackets
    the iteration missed.
    """
    evals = []

    def h(t):
        val = np.linalg.norm(_branch_section(omega, t, large)) - t
        evals.append((t, val))
        return val

    roots = []
    t = nrm / 2.0
    h_t = h(t)
    for _ in range(max_iter):
        if abs(h_t) <= 1e-14 * max(t, 1.0):
            roots.append(t)
            break
        t_next = t + h_t  # = ||x(t)||
        if t_next <= 0.0:
            break
        h_next = h(t_next)
        if (h_next > 0) != (h_t > 0):
            lo, hi = sorted([(t, h_t), (t_next, h_next)])
            roots.append(_bisect_consistency(omega, large, lo[0], hi[0], lo[1], hi[1]))
            break
        t, h_t = t_next, h_next

    lo_t = min(nrm * 2.0**-6, np.e * np.max(np.abs(omega)) / 4.0)
    for t in np.geomspace(lo_t, nrm * 4.0, 48):
        h(t)
    for k in range(-6, 3):
        h(nrm * 2.0**k)
    pts = sorted(set(evals))
    for (t0, h0), (t1, h1) in zip(pts[:-1], pts[1:]):
        if (h0 > 0) != (h1 > 0):
            roots.append(_bisect_consistency(omega, large, t0, t1, h0, h1))
    return sorted(set(roots))


def kp_inverse(omega, tol: float = 1e-9, max_iter: int = 80) -> np.ndarray:
    """Numerically invert the log map: return x with ||kp_map(x) - omega||_2 <= tol.

    The outer unknown is the scale t = ||x||_2.  Given t, each coordinate is
    solved on the small branch |x_k| <= t/e (where the scalar map is monotone
    and the scale fixed point is stable), and the scale is driven to
    self-consistency ||x(t)||_2 = t.  Targets with a dominant coordinate have
    no all-small-branch preimage, so on failure the largest-|omega_k|
    coordinates are moved, a few at a time, to the complementary branch
    t/e <= |x_k| <= t and the scale search repeats.  Branch assignments are
    tried in order of increasing deviation from the all-small default, and
    within an assignment the smallest consistent scale meeting the residual
    bound wins.

    Raises NoConvergence (with the best residual reached) when no section
    meets the bound: omega is outside the numerically reachable range at
    this truncation.
    """
    omega = as_vector(omega)
    nrm = np.linalg.norm(omega)
    if nrm == 0.0:
        return np.zeros_like(omega)

    best_x = np.zeros_like(omega)
    best_res = np.linalg.norm(kp_map(best_x) - omega)
    order = np.argsort(-np.abs(omega))

    masks = [None]
    for j in range(1, min(4, omega.size) + 1):
        m = np.zeros(omega.size, dtype=bool)
        m[order[:j]] = True
        masks.append(m)
    for j in range(1, min(6, omega.size)):
        m = np.zeros(omega.size, dtype=bool)
        m[order[j]] = True
        masks.append(m)

    for large in masks:
        for t in _consistent_scales(omega, large, nrm, max_iter):
            x = _branch_section(omega, t, large)
            res = np.linalg.norm(kp_map(x) - omega)
            if res < best_res:
                best_x, best_res = x, res
            if res <= tol:
                return best_x
        if large is None and best_res <= tol:
            return best_x
    if best_res <= tol:
        return best_x
    raise NoConvergence(
        f"no consistent scale found (best residual {best_res:.3e} > tol {tol:.3e})",
        residual=best_res,
    )


def lf_quasinorm(x) -> float:
    """Domain quasinorm ||kp_map(x)||_2 + ||x||_2."""
    x = as_vector(x)
    return float(np.linalg.norm(kp_map(x)) + np.linalg.norm(x))


def _range_objective(omega, x):
    return float(np.linalg.norm(omega - kp_map(x)) + np.linalg.norm(x))


def _descend(omega, x0, budget):
    """Backtracking gradient descent on x -> ||omega - kp_map(x)||_2 + ||x||_2.

    The objective is differentiable away from vanishing coordinates; the log
    singularity there is clipped, which only blunts steps (the running best
    value is what gets reported, so clipping never hurts correctness).
    """
    x = x0.copy()
    best_x, best_f = x.copy(), _range_objective(omega, x)
    f = best_f
    for _ in range(budget):
        t = np.linalg.norm(x)
        if t == 0.0:
            break
        g = omega - kp_map(x)
        gn = np.linalg.norm(g)
        logs = np.full_like(x, _LOG_FLOOR)
        nz = x != 0.0
        logs[nz] = np.maximum(np.log(np.abs(x[nz]) / t), _LOG_FLOOR)
        grad = x / t
        if gn > 0.0:
            ghat = g / gn
            # J_kp is symmetric: 2 diag(log(|x|/t) + 1) - (2/t^2) x x^T
            grad = grad - (2.0 * (logs + 1.0) * ghat - (2.0 / t**2) * x * (x @ ghat))
        gradn = np.linalg.norm(grad)
        if gradn <= 1e-14 * (1.0 + f):
            break
        step = max(t, 1e-3) / gradn
        improved = False
        for _ in range(25):
            cand = x - step * grad
            fc = _range_objective(omega, cand)
            if fc < f - 1e-15:
                x, f, improved = cand, fc, True
                break
            step *= 0.5
        if not improved:
            break
        if f < best_f:
            best_x, best_f = x.copy(), f
    return best_x, best_f


def lf_star_quasinorm_ub(omega, budget: int = 40) -> float:
    """Upper bound for the range quasinorm inf_x ||omega - kp_map(x)||_2 + ||x||_2.

    Evaluates the objective at x = 0, at the numerical inverse when it
    converges, and at gradient-descent refinements of both starts; returns
    the best value found.  Monotone nonincreasing in budget, and always
    <= ||omega||_2 (the x = 0 candidate).
    """
    omega = as_vector(omega)
    best = _range_objective(omega, np.zeros_like(omega))
    # Descent cannot start at exactly 0 (undefined scale), so the zero start
    # is refined from a small step in the omega direction instead.
    starts = [0.05 * omega]
    try:
        xinv = kp_inverse(omega, tol=1e-8, max_iter=60)
        best = min(best, _range_objective(omega, xinv))
        starts.append(xinv)
    except NoConvergence:
        pass
    if budget > 0:
        for x0 in starts:
            _, f = _descend(omega, x0, budget)
            best = min(best, f)
    return best
