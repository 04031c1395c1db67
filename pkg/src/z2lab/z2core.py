"""The truncated twisted Hilbert space: pairs, quasinorms, pairing and symplectic form.

Elements are pairs z = (omega, x) of equal-length vectors.  The quasinorm
``z2_quasinorm`` is ||omega - kp_map(x)||_2 + ||x||_2; the equivalent
presentation ``z2_quasinorm_jq`` runs through the numerical inverse and is a
diagnostic only.  The alternating form ``omega_form`` and the isometry
``d_map`` realize the self-duality of the space in finite dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .seqspace import (
    as_vector,
    kp_inverse,
    kp_map,
    lf_quasinorm,
    lf_star_quasinorm_ub,
)


@dataclass(frozen=True, eq=False)
class Z2Vec:
    """A pair (omega, x) of equal-dimension vectors."""

    omega: np.ndarray
    x: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "omega", as_vector(self.omega))
        object.__setattr__(self, "x", as_vector(self.x))
        if self.omega.size != self.x.size:
            raise ValueError(
                f"component dims differ: {self.omega.size} != {self.x.size}"
            )

    @property
    def dim(self) -> int:
        return self.omega.size

    def __add__(self, other: "Z2Vec") -> "Z2Vec":
        return Z2Vec(self.omega + other.omega, self.x + other.x)

    def __sub__(self, other: "Z2Vec") -> "Z2Vec":
        return Z2Vec(self.omega - other.omega, self.x - other.x)

    def __mul__(self, c: float) -> "Z2Vec":
        return Z2Vec(c * self.omega, c * self.x)

    __rmul__ = __mul__

    def __neg__(self) -> "Z2Vec":
        return Z2Vec(-self.omega, -self.x)

    @staticmethod
    def zero(n: int) -> "Z2Vec":
        return Z2Vec(np.zeros(n), np.zeros(n))


@dataclass(frozen=True, eq=False)
class Z2Functional:
    """A functional on pairs: phi pairs with the x part, psi with the omega part."""

    phi: np.ndarray
    psi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "phi", as_vector(self.phi))
        object.__setattr__(self, "psi", as_vector(self.psi))
        if self.phi.size != self.psi.size:
            raise ValueError(
                f"component dims differ: {self.phi.size} != {self.psi.size}"
            )

    @property
    def dim(self) -> int:
        return self.phi.size


def z2_quasinorm(z: Z2Vec) -> float:
    """||omega - kp_map(x)||_2 + ||x||_2."""
    return float(np.linalg.norm(z.omega - kp_map(z.x)) + np.linalg.norm(z.x))


def z2_quasinorm_jq(z: Z2Vec, budget: int = 40, tol: float = 1e-8) -> float:
    """Quasinorm estimate in the inverse-map presentation (diagnostic only).

    Returns lf_quasinorm(x - kp_inverse(omega)) + lf_star_quasinorm_ub(omega).
    Both summands go through numerical optimizations, so this is an estimate
    equivalent to ``z2_quasinorm`` up to constants measured, not asserted.
    Propagates NoConvergence from the inverse solver.
    """
    xinv = kp_inverse(z.omega, tol=tol)
    return lf_quasinorm(z.x - xinv) + lf_star_quasinorm_ub(z.omega, budget=budget)


def pairing(f: Z2Functional, z: Z2Vec) -> float:
    """Duality pairing <f.phi, z.x> + <z.omega, f.psi>."""
    if f.dim != z.dim:
        raise ValueError("dimension mismatch")
    return float(f.phi @ z.x + z.omega @ f.psi)


def omega_form(z1: Z2Vec, z2: Z2Vec) -> float:
    """Alternating bilinear form <omega_1, x_2> - <omega_2, x_1>."""
    if z1.dim != z2.dim:
        raise ValueError("dimension mismatch")
    return float(z1.omega @ z2.x - z2.omega @ z1.x)


def d_map(z: Z2Vec) -> Z2Functional:
    """The self-duality isometry as a functional: pairing(d_map(z), w) = omega_form(z, w)."""
    return Z2Functional(phi=z.omega, psi=-z.x)


def inclusion_i(y) -> Z2Vec:
    """First-presentation inclusion y -> (y, 0)."""
    y = as_vector(y)
    return Z2Vec(y, np.zeros_like(y))


def quotient_p(z: Z2Vec) -> np.ndarray:
    """First-presentation quotient (omega, x) -> x."""
    return z.x.copy()


def inclusion_j(x) -> Z2Vec:
    """Second-presentation inclusion x -> (0, x)."""
    x = as_vector(x)
    return Z2Vec(np.zeros_like(x), x)


def quotient_q(z: Z2Vec) -> np.ndarray:
    """Second-presentation quotient (omega, x) -> omega."""
    return z.omega.copy()


def lift_Lp(y) -> Z2Vec:
    """Bounded homogeneous lifting for quotient_p: y -> (kp_map(y), y).

    Cancellation in the quasinorm makes this an exact section of norm one:
    z2_quasinorm(lift_Lp(y)) = ||y||_2.
    """
    y = as_vector(y)
    return Z2Vec(kp_map(y), y)


def lift_Lq(omega, tol: float = 1e-9) -> Z2Vec:
    """Bounded homogeneous lifting for quotient_q: omega -> (omega, kp_inverse(omega)).

    Propagates NoConvergence when the inverse solver fails.
    """
    omega = as_vector(omega)
    return Z2Vec(omega, kp_inverse(omega, tol=tol))


@dataclass(frozen=True)
class IsotropyReport:
    isotropic: bool
    max_abs: float
    pair: tuple[int, int]


def is_isotropic(basis: list[Z2Vec], tol: float = 1e-12) -> IsotropyReport:
    """Whether the form vanishes on the span: max |omega_form(b_i, b_j)| <= tol.

    Reports the maximizing index pair as the witness.
    """
    if not basis:
        raise ValueError("basis must be nonempty")
    worst, pair = 0.0, (0, 0)
    for i, bi in enumerate(basis):
        for j in range(i + 1, len(basis)):
            val = abs(omega_form(bi, basis[j]))
            if val > worst:
                worst, pair = val, (i, j)
    return IsotropyReport(isotropic=worst <= tol, max_abs=worst, pair=pair)
