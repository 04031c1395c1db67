"""Classical operators used on the lp scale: averaging, Hilbert-type,
moment-generated triangular families, diagonals, shifts, signed permutations.

Moment-generated matrices have entries binom(n, k) * Delta^{n-k} mu_k built
from forward differences Delta mu_k = mu_k - mu_{k+1}.  The difference table
suffers binomial-scale cancellation, so large truncations are computed in
extended precision (mpmath) and the double path carries a cancellation
detector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import mpmath
import numpy as np
from scipy.special import comb, gammaln

from .blockop import BlockOperator
from .errors import ParameterOutOfRange, PoleIndex, PrecisionLoss
from .seqspace import as_vector

# Truncation size beyond which the difference table silently switches to
# extended precision in "auto" mode: worst-entry cancellation grows like 2^n,
# so double is trustworthy only for small n.
AUTO_EXTENDED_THRESHOLD = 16

# Maximum tolerated significant-digit loss in double mode before raising.
MAX_DIGITS_LOST = 6.0


def cesaro(n: int) -> np.ndarray:
    """Averaging matrix: row i (1-indexed) has entries 1/i in columns <= i."""
    if n < 1:
        raise ValueError("n must be >= 1")
    A = np.zeros((n, n))
    for i in range(n):
        A[i, : i + 1] = 1.0 / (i + 1)
    return A


def hilbert_matrix(n: int, lam: float = 1.0) -> np.ndarray:
    """Matrix with entries 1/(i + j + lam), i, j = 0..n-1; symmetric for real lam."""
    if n < 1:
        raise ValueError("n must be >= 1")
    i = np.arange(n)
    denom = i[:, None] + i[None, :] + lam
    if np.any(denom == 0.0):
        raise PoleIndex(f"i + j + lambda hits 0 for lambda={lam}, n={n}")
    return 1.0 / denom


@dataclass(frozen=True)
class MomentSequence:
    """A rule k -> mu_k defining a moment-generated triangular matrix.

    closed_form_coeff, when present, gives the matrix entries (n, k) directly
    and bypasses the difference table.  mu_extended, when present, evaluates
    the moments in the active mpmath precision so extended-mode tables are
    accurate; without it extended mode still runs but is limited by the
    double-precision moments.  norm_formula maps p > 1 to the operator's
    closed-form lp norm where one is known.
    """

    name: str
    mu: Callable[[int], float]
    closed_form_coeff: Optional[Callable[[int, int], float]] = None
    mu_extended: Optional[Callable[[int], "mpmath.mpf"]] = None
    norm_formula: Optional[Callable[[float], float]] = None


@dataclass(frozen=True)
class HausdorffSpec:
    """A moment sequence, a truncation size, and a precision mode.

    precision_mode: "double", "extended", or "auto" (extended above
    AUTO_EXTENDED_THRESHOLD).
    """

    moment: MomentSequence
    n: int
    precision_mode: str = "auto"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.precision_mode not in ("double", "extended", "auto"):
            raise ValueError(f"unknown precision_mode {self.precision_mode!r}")


def _difference_table(mu_vals):
    """Full forward-difference table: table[j][k] = Delta^j mu_k, j + k < len."""
    n = len(mu_vals)
    table = [list(mu_vals)]
    for j in range(1, n):
        prev = table[-1]
        table.append([prev[k] - prev[k + 1] for k in range(n - j)])
    return table


def _hausdorff_double(ms: MomentSequence, n: int) -> np.ndarray:
    """Double-precision difference-table path with a cancellation detector.

    Digit loss is estimated by rerunning the recursion in float32: when both
    precisions lose the same leading digits their results disagree visibly,
    and the disagreement calibrated against float32's ~7.2 digits measures
    the loss.  Exact cancellations (e.g. constant moments) agree in both
    precisions and correctly report no loss.
    """
    mu64 = np.array([float(ms.mu(k)) for k in range(n)])
    t64 = _difference_table(list(mu64))
    t32 = _difference_table(list(mu64.astype(np.float32)))
    worst = 0.0
    A = np.zeros((n, n))
    eps32 = float(np.finfo(np.float32).eps)
    for row in range(n):
        for k in range(row + 1):
            d = t64[row - k][k]
            d32 = float(t32[row - k][k])
            scale = abs(d) + abs(d - d32)
            if scale > 0.0:
                rel = abs(d - d32) / scale
                if rel > eps32:
                    worst = max(worst, np.log10(rel / eps32))
            A[row, k] = comb(row, k) * d
    if worst > MAX_DIGITS_LOST:
        raise PrecisionLoss(
            f"difference table lost ~{worst:.1f} significant digits at n={n}; "
            "use extended precision or a closed form",
            digits_lost=worst,
            n=n,
        )
    return A


def _hausdorff_extended(ms: MomentSequence, n: int) -> np.ndarray:
    """Extended-precision path: mpmath working precision sized to the 2^n cancellation."""
    dps = int(0.302 * n) + 30
    with mpmath.workdps(dps):
        if ms.mu_extended is not None:
            mu = [ms.mu_extended(k) for k in range(n)]
        else:
            mu = [mpmath.mpf(float(ms.mu(k))) for k in range(n)]
        table = _difference_table(mu)
        A = np.zeros((n, n))
        for row in range(n):
            for k in range(row + 1):
                A[row, k] = float(mpmath.binomial(row, k) * table[row - k][k])
    return A


def hausdorff_matrix(spec: HausdorffSpec) -> np.ndarray:
    """Lower-triangular matrix with entries binom(n, k) Delta^{n-k} mu_k (0-indexed).

    Uses the closed-form coefficients when the moment sequence carries them;
    otherwise builds the forward-difference table in the precision selected
    by spec.precision_mode.  Raises PrecisionLoss when the double-mode table
    loses more than MAX_DIGITS_LOST significant digits.
    """
    ms, n = spec.moment, spec.n
    if ms.closed_form_coeff is not None:
        A = np.zeros((n, n))
        for row in range(n):
            for k in range(row + 1):
                A[row, k] = ms.closed_form_coeff(row, k)
        return A
    mode = spec.precision_mode
    if mode == "auto":
        mode = "extended" if n > AUTO_EXTENDED_THRESHOLD else "double"
    if mode == "double":
        return _hausdorff_double(ms, n)
    return _hausdorff_extended(ms, n)


def moment_gen_cesaro(a: float, alpha: float) -> MomentSequence:
    """Generalized averaging family: mu_n = Gamma(a+alpha) Gamma(n+a) / (Gamma(a) Gamma(n+a+alpha)).

    The lp norm formula Gamma(a+alpha) Gamma(a-1/p) / Gamma(a+alpha-1/p) is
    valid for p > 1 with a > 1/p.
    """
    if alpha <= 0 or a <= 0:
        raise ParameterOutOfRange("need alpha > 0 and a > 0")

    def mu(k: int) -> float:
        return float(
            np.exp(gammaln(a + alpha) + gammaln(k + a) - gammaln(a) - gammaln(k + a + alpha))
        )

    def mu_ext(k: int):
        return (
            mpmath.gamma(a + alpha)
            * mpmath.gamma(k + a)
            / (mpmath.gamma(a) * mpmath.gamma(k + a + alpha))
        )

    def norm_formula(p: float) -> float:
        p = float(p)
        if not (p > 1.0) or not (a > 1.0 / p):
            raise ParameterOutOfRange(f"norm formula needs p > 1 and a > 1/p, got a={a}, p={p}")
        return float(
            np.exp(gammaln(a + alpha) + gammaln(a - 1.0 / p) - gammaln(a + alpha - 1.0 / p))
        )

    return MomentSequence(
        name=f"gen_cesaro(a={a}, alpha={alpha})",
        mu=mu,
        mu_extended=mu_ext,
        norm_formula=norm_formula,
    )


def moment_holder(alpha: float) -> MomentSequence:
    """Iterated-averaging family: mu_n = (n+1)^(-alpha), lp norm (p/(p-1))^alpha."""
    if alpha <= 0:
        raise ParameterOutOfRange("need alpha > 0")

    def norm_formula(p: float) -> float:
        p = float(p)
        if not (p > 1.0):
            raise ParameterOutOfRange("norm formula needs p > 1")
        return (p / (p - 1.0)) ** alpha

    return MomentSequence(
        name=f"holder(alpha={alpha})",
        mu=lambda k: float(k + 1) ** (-alpha),
        mu_extended=lambda k: mpmath.mpf(k + 1) ** (-mpmath.mpf(alpha)),
        norm_formula=norm_formula,
    )


def moment_euler(a: float) -> MomentSequence:
    """Euler means: mu_n = a^n for 0 < a < 1, with closed-form coefficients
    binom(n, k) a^k (1-a)^(n-k) and lp norm (1 + r)^(1/p), r = (1-a)/a."""
    if not (0.0 < a < 1.0):
        raise ParameterOutOfRange("need 0 < a < 1")
    r = (1.0 - a) / a

    def coeff(n: int, k: int) -> float:
        return float(
            np.exp(
                gammaln(n + 1)
                - gammaln(k + 1)
                - gammaln(n - k + 1)
                + k * np.log(a)
                + (n - k) * np.log1p(-a)
            )
        )

    def norm_formula(p: float) -> float:
        p = float(p)
        if not (p >= 1.0):
            raise ParameterOutOfRange("norm formula needs p >= 1")
        return (1.0 + r) ** (1.0 / p)

    return MomentSequence(
        name=f"euler(a={a})",
        mu=lambda k: a**k,
        closed_form_coeff=coeff,
        mu_extended=lambda k: mpmath.mpf(a) ** k,
        norm_formula=norm_formula,
    )


def moment_gamma(a: float, alpha: float) -> MomentSequence:
    """Gamma family: mu_n = (a/(n+a))^alpha, lp norm (a/(a-1/p))^alpha for a > 1/p."""
    if alpha <= 0 or a <= 0:
        raise ParameterOutOfRange("need alpha > 0 and a > 0")

    def norm_formula(p: float) -> float:
        p = float(p)
        if not (p > 1.0) or not (a > 1.0 / p):
            raise ParameterOutOfRange(f"norm formula needs p > 1 and a > 1/p, got a={a}, p={p}")
        return (a / (a - 1.0 / p)) ** alpha

    return MomentSequence(
        name=f"gamma(a={a}, alpha={alpha})",
        mu=lambda k: (a / (k + a)) ** alpha,
        mu_extended=lambda k: (mpmath.mpf(a) / (k + mpmath.mpf(a))) ** mpmath.mpf(alpha),
        norm_formula=norm_formula,
    )


def diagonal_z2(sigma) -> BlockOperator:
    """Diagonal operator on pairs from a length-2n symbol: odd-indexed entries
    (1-based) act on the omega part, even-indexed on the x part."""
    sigma = as_vector(sigma)
    if sigma.size % 2 != 0:
        raise ValueError("sigma must have even length 2n")
    a = sigma[0::2]
    b = sigma[1::2]
    n = a.size
    zero = np.zeros((n, n))
    return BlockOperator(np.diag(a), zero, zero, np.diag(b))


def gap_symbol(n: int, kind: str = "const", c: float = 0.5) -> np.ndarray:
    """Length-2n diagonal symbol with a controlled odd/even gap.

    Odd-indexed entries (acting on the omega part) are 1; even-indexed are
    1 - gap_k with gap_k = c for kind "const" and gap_k = c / log(k+2) for
    kind "invlog".  The invlog profile meets the O(1/log) gap criterion for
    boundedness of diagonal operators on pairs; the constant profile
    violates it and drives log growth.
    """
    if kind not in ("const", "invlog"):
        raise ValueError(f"kind must be 'const' or 'invlog', got {kind!r}")
    k = np.arange(n)
    gap = np.full(n, c) if kind == "const" else c / np.log(k + 2.0)
    sigma = np.empty(2 * n)
    sigma[0::2] = 1.0
    sigma[1::2] = 1.0 - gap
    return sigma


def shift(n: int, direction: str = "right") -> np.ndarray:
    """Coordinate shift matrix: right maps e_k -> e_{k+1} (last drops), left the reverse."""
    if n < 1:
        raise ValueError("n must be >= 1")
    A = np.zeros((n, n))
    if direction == "right":
        A[1:, :-1] = np.eye(n - 1)
    elif direction == "left":
        A[:-1, 1:] = np.eye(n - 1)
    else:
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    return A


def signed_permutation(perm, signs) -> np.ndarray:
    """Matrix of x -> (signs_k * x_{perm(k)}): a surjective lp isometry for every p."""
    perm = np.asarray(perm, dtype=int)
    signs = np.asarray(signs, dtype=float)
    n = perm.size
    if signs.size != n:
        raise ValueError("perm and signs must have equal length")
    if sorted(perm.tolist()) != list(range(n)):
        raise ValueError("perm must be a bijection of 0..n-1")
    if not np.all(np.abs(signs) == 1.0):
        raise ValueError("signs must be +-1")
    A = np.zeros((n, n))
    A[np.arange(n), perm] = signs
    return A
