"""2x2 block-matrix calculus on the truncated twisted Hilbert space.

An operator is four dense n x n real blocks (alpha, beta; delta, gamma)
acting on pairs by (omega, x) -> (alpha omega + beta x, delta omega + gamma x).
The module provides composition, the symplectic involution, rank-one and
nuclear constructors, triangular predicates and splits, and the named
special operators (diagonal lifts, disjoint-block isometries, scalar
matrices, induced upper-triangular operators).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DisjointnessViolated
from .seqspace import as_vector, kp_map
from .z2core import Z2Functional, Z2Vec


@dataclass(frozen=True, eq=False)
class BlockOperator:
    """Four dense n x n blocks (alpha, beta; delta, gamma)."""

    alpha: np.ndarray
    beta: np.ndarray
    delta: np.ndarray
    gamma: np.ndarray

    def __post_init__(self):
        for name in ("alpha", "beta", "delta", "gamma"):
            blk = np.asarray(getattr(self, name), dtype=float)
            if blk.ndim != 2 or blk.shape[0] != blk.shape[1]:
                raise ValueError(f"block {name} must be square, got {blk.shape}")
            object.__setattr__(self, name, blk)
        n = self.alpha.shape[0]
        if not all(b.shape == (n, n) for b in (self.beta, self.delta, self.gamma)):
            raise ValueError("all four blocks must share the same dimension")

    @property
    def n(self) -> int:
        return self.alpha.shape[0]

    def __add__(self, other: "BlockOperator") -> "BlockOperator":
        return BlockOperator(
            self.alpha + other.alpha,
            self.beta + other.beta,
            self.delta + other.delta,
            self.gamma + other.gamma,
        )

    def __sub__(self, other: "BlockOperator") -> "BlockOperator":
        return BlockOperator(
            self.alpha - other.alpha,
            self.beta - other.beta,
            self.delta - other.delta,
            self.gamma - other.gamma,
        )

    def __neg__(self) -> "BlockOperator":
        return BlockOperator(-self.alpha, -self.beta, -self.delta, -self.gamma)

    def __mul__(self, c: float) -> "BlockOperator":
        return BlockOperator(c * self.alpha, c * self.beta, c * self.delta, c * self.gamma)

    __rmul__ = __mul__


def identity_operator(n: int) -> BlockOperator:
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return BlockOperator(eye, zero, zero, eye)


def zero_operator(n: int) -> BlockOperator:
    zero = np.zeros((n, n))
    return BlockOperator(zero, zero, zero, zero)


def ip_operator(n: int) -> BlockOperator:
    """The composite inclusion-after-quotient operator (0 I; 0 0): (omega, x) -> (x, 0)."""
    zero = np.zeros((n, n))
    return BlockOperator(zero, np.eye(n), zero, zero)


def apply(T: BlockOperator, z: Z2Vec) -> Z2Vec:
    """Apply the block matrix: (alpha omega + beta x, delta omega + gamma x)."""
    if T.n != z.dim:
        raise ValueError("dimension mismatch")
    return Z2Vec(T.alpha @ z.omega + T.beta @ z.x, T.delta @ z.omega + T.gamma @ z.x)


def compose(S: BlockOperator, T: BlockOperator) -> BlockOperator:
    """Block-matrix product: apply(compose(S, T), z) = apply(S, apply(T, z))."""
    if S.n != T.n:
        raise ValueError("dimension mismatch")
    return BlockOperator(
        S.alpha @ T.alpha + S.beta @ T.delta,
        S.alpha @ T.beta + S.beta @ T.gamma,
        S.delta @ T.alpha + S.gamma @ T.delta,
        S.delta @ T.beta + S.gamma @ T.gamma,
    )


def involution_plus(T: BlockOperator) -> BlockOperator:
    """Adjoint for the alternating form: (gamma^T, -beta^T; -delta^T, alpha^T).

    Satisfies omega_form(apply(involution_plus(T), y), z) = omega_form(y, apply(T, z)).
    """
    return BlockOperator(T.gamma.T, -T.beta.T, -T.delta.T, T.alpha.T)


def rank_one(f: Z2Functional, v: Z2Vec) -> BlockOperator:
    """The rank-one operator z -> pairing(f, z) * v.

    Blocks: (psi (x) u, phi (x) u; psi (x) v, phi (x) v) where (u, v) are the
    omega/x parts of the output vector and a (x) b maps w -> <a, w> b.
    """
    if f.dim != v.dim:
        raise ValueError("dimension mismatch")
    u_part, x_part = v.omega, v.x
    return BlockOperator(
        np.outer(u_part, f.psi),
        np.outer(u_part, f.phi),
        np.outer(x_part, f.psi),
        np.outer(x_part, f.phi),
    )


def nuclear_sum(terms: list[tuple[Z2Functional, Z2Vec]]) -> BlockOperator:
    """Sum of rank-one operators."""
    if not terms:
        raise ValueError("need at least one term")
    out = rank_one(*terms[0])
    for f, v in terms[1:]:
        out = out + rank_one(f, v)
    return out


def interleave(z: Z2Vec) -> np.ndarray:
    """Coordinates of z in the interleaved basis: w_{2k} = omega_k, w_{2k+1} = x_k (0-indexed)."""
    w = np.empty(2 * z.dim)
    w[0::2] = z.omega
    w[1::2] = z.x
    return w


def deinterleave(w) -> Z2Vec:
    """Inverse of interleave."""
    w = as_vector(w)
    if w.size % 2 != 0:
        raise ValueError("interleaved vector must have even length")
    return Z2Vec(w[0::2].copy(), w[1::2].copy())


def is_upper_triangular(T: BlockOperator, tol: float = 0.0) -> bool:
    """Whether the delta block vanishes (Frobenius norm <= tol)."""
    return bool(np.linalg.norm(T.delta) <= tol)


def is_lower_triangular(T: BlockOperator, tol: float = 0.0) -> bool:
    """Whether the beta block vanishes (Frobenius norm <= tol)."""
    return bool(np.linalg.norm(T.beta) <= tol)


def split_upper(T: BlockOperator) -> tuple[BlockOperator, BlockOperator]:
    """T = (alpha beta; 0 gamma) + (0 0; delta 0); the parts sum to T exactly."""
    n = T.n
    zero = np.zeros((n, n))
    return (
        BlockOperator(T.alpha, T.beta, zero, T.gamma),
        BlockOperator(zero, zero, T.delta, zero),
    )


def split_lower(T: BlockOperator) -> tuple[BlockOperator, BlockOperator]:
    """T = (alpha 0; delta gamma) + (0 beta; 0 0); the parts sum to T exactly."""
    n = T.n
    zero = np.zeros((n, n))
    return (
        BlockOperator(T.alpha, zero, T.delta, T.gamma),
        BlockOperator(zero, T.beta, zero, zero),
    )


def tau(alpha) -> BlockOperator:
    """Diagonal lift (alpha, 0; 0, alpha) of a map acting on the lp scale."""
    alpha = np.asarray(alpha, dtype=float)
    zero = np.zeros_like(alpha)
    return BlockOperator(alpha, zero, zero, alpha)


def block_operator_TU(U: list) -> BlockOperator:
    """Operator built from disjointly supported blocks: (u, kp_map u; 0, u).

    The u-block maps e_k to U[k] (zero beyond the given blocks) and the beta
    block maps e_k to kp_map(U[k]).  For normalized disjoint blocks this is an
    into isometry on pairs supported in the first len(U) coordinates.

    Raises DisjointnessViolated when two blocks share a supported coordinate.
    """
    if not U:
        raise ValueError("need at least one block vector")
    blocks = [as_vector(u) for u in U]
    n = blocks[0].size
    if any(b.size != n for b in blocks):
        raise ValueError("all blocks must share the ambient dimension")
    if len(blocks) > n:
        raise ValueError("more blocks than coordinates")
    support = np.zeros(n, dtype=bool)
    for k, b in enumerate(blocks):
        if np.all(b == 0.0):
            raise ValueError(f"block {k} is zero")
        s = b != 0.0
        if np.any(support & s):
            raise DisjointnessViolated(f"block {k} overlaps an earlier block")
        support |= s
    u_block = np.zeros((n, n))
    kp_block = np.zeros((n, n))
    for k, b in enumerate(blocks):
        u_block[:, k] = b
        kp_block[:, k] = kp_map(b)
    return BlockOperator(u_block, kp_block, np.zeros((n, n)), u_block)


def scalar_matrix(a: float, b: float, d: float, g: float, n: int) -> BlockOperator:
    """Blocks that are scalar multiples of the identity: (a I, b I; d I, g I)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    eye = np.eye(n)
    return BlockOperator(a * eye, b * eye, d * eye, g * eye)


def calderon_upper(alpha, beta) -> BlockOperator:
    """Upper-triangular operator (alpha, beta; 0, alpha) induced by a pair of scale maps."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if alpha.shape != beta.shape:
        raise ValueError("alpha and beta must share a shape")
    return BlockOperator(alpha, beta, np.zeros_like(alpha), alpha)
