"""Rank-one projection (ROP) measurement maps.

An ensemble stores the L vector pairs (beta_j, gamma_j); the measurement
matrices A_j = beta_j gamma_j^T are never materialized by apply/adjoint,
which run in O(L(m+n)) flops.  The symmetric (SROP) mode with its
debiasing transform, the two bounded-noise models, and an explicit
vectorized operator for small-instance oracles live here too.

Randomness uses the Philox counter-based generator with a 64-bit seed and
a per-measurement substream keyed by (seed, j), so ensembles reproduce
bit-exactly and could be generated in parallel.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .linalg import singular_values

# Philox substream labels, so measurement / noise / trial streams never collide.
_STREAM_ENSEMBLE = 0
_STREAM_NOISE = 1


class ResourceError(RuntimeError):
    """Raised when an explicit-operator request exceeds the size cap."""


@dataclasses.dataclass(frozen=True)
class RopEnsemble:
    """L rank-one measurement pairs defining a linear map R^{m x n} -> R^L.

    ``betas`` is (L, m), ``gammas`` is (L, n).  In symmetric (SROP) mode
    gammas is the same array as betas and m == n.
    """

    betas: np.ndarray
    gammas: np.ndarray
    symmetric: bool = False

    def __post_init__(self):
        if self.betas.ndim != 2 or self.gammas.ndim != 2:
            raise ValueError("betas and gammas must be 2-D arrays")
        if self.betas.shape[0] != self.gammas.shape[0]:
            raise ValueError("betas and gammas must have the same count")
        if self.symmetric:
            if self.betas.shape != self.gammas.shape:
                raise ValueError("symmetric ensemble requires m == n")
            if not np.array_equal(self.betas, self.gammas):
                raise ValueError("symmetric ensemble requires gammas == betas")

    @property
    def m(self) -> int:
        return self.betas.shape[1]

    @property
    def n(self) -> int:
        return self.gammas.shape[1]

    @property
    def L(self) -> int:
        return self.betas.shape[0]


@dataclasses.dataclass(frozen=True)
class NoiseSpec:
    """Noise model: none, lq-bounded, Dantzig-selector bounded, or both."""

    kind: str  # none | lq_bounded | dantzig | intersection
    q: float | None = None
    eta1: float | None = None
    eta2: float | None = None

    def __post_init__(self):
        if self.kind not in ("none", "lq_bounded", "dantzig", "intersection"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if self.kind in ("lq_bounded", "intersection"):
            if self.q is None or not (0 < self.q <= 1):
                raise ValueError("lq-bounded noise requires q in (0, 1]")
            if self.eta1 is None or self.eta1 < 0:
                raise ValueError("lq-bounded noise requires eta1 >= 0")
        if self.kind in ("dantzig", "intersection"):
            if self.eta2 is None or self.eta2 < 0:
                raise ValueError("Dantzig noise requires eta2 >= 0")


def _substream(seed: int, stream: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), (stream << 32) | index]))


def sample_gaussian_rop(m: int, n: int, L: int, symmetric: bool = False,
                        seed: int = 0) -> RopEnsemble:
    """Draw a standard-normal ROP ensemble deterministically from ``seed``."""
    if m < 1 or n < 1 or L < 1:
        raise ValueError("m, n, L must be positive")
    if symmetric and m != n:
        raise ValueError("symmetric ensemble requires m == n")
    betas = np.empty((L, m))
    gammas = betas if symmetric else np.empty((L, n))
    for j in range(L):
        g = _substream(seed, _STREAM_ENSEMBLE, j)
        betas[j] = g.standard_normal(m)
        if not symmetric:
            gammas[j] = g.standard_normal(n)
    return RopEnsemble(betas=betas, gammas=gammas, symmetric=symmetric)


# ---------------------------------------------------------------------------
# The solver-facing operator interface.  An "op" is either a RopEnsemble or
# an explicit stack of measurement matrices with shape (L, m, n), as produced
# by debias().


def op_shape(op) -> tuple[int, int, int]:
    """(L, m, n) of an ensemble or explicit matrix stack."""
    if isinstance(op, RopEnsemble):
        return op.L, op.m, op.n
    op = np.asarray(op)
    if op.ndim != 3:
        raise ValueError(f"expected (L, m, n) stack, got shape {op.shape}")
    return op.shape[0], op.shape[1], op.shape[2]


def apply_map(op, X) -> np.ndarray:
    """Evaluate the linear map: values[j] = <A_j, X>.

    For an ensemble this is beta_j^T X gamma_j via two matrix-vector
    products; A_j is never formed.
    """
    X = np.asarray(X, dtype=float)
    _, m, n = op_shape(op)
    if X.shape != (m, n):
        raise ValueError(f"matrix shape {X.shape} does not match map ({m}, {n})")
    if isinstance(op, RopEnsemble):
        return np.einsum("ji,ji->j", op.betas @ X, op.gammas)
    return np.einsum("jik,ik->j", np.asarray(op), X)


def adjoint_map(op, z) -> np.ndarray:
    """Adjoint A*(z) = sum_j z_j A_j under the trace inner product."""
    z = np.asarray(z, dtype=float)
    L, _, _ = op_shape(op)
    if z.shape != (L,):
        raise ValueError(f"measurement length {z.shape} does not match L={L}")
    if isinstance(op, RopEnsemble):
        return (op.betas * z[:, None]).T @ op.gammas
    return np.einsum("j,jik->ik", z, np.asarray(op))


def debias(ens: RopEnsemble, b) -> tuple[np.ndarray, np.ndarray]:
    """Pair consecutive SROP measurements into differences.

    Returns the explicit stack of symmetric matrices
    Atilde_j = A_{2j-1} - A_{2j} (shape (floor(L/2), m, m)) and the
    differenced measurements btilde.  An odd final measurement is dropped.
    """
    if not isinstance(ens, RopEnsemble) or not ens.symmetric:
        raise ValueError("debias requires a symmetric ensemble")
    b = np.asarray(b, dtype=float)
    if b.shape != (ens.L,):
        raise ValueError(f"measurement length {b.shape} does not match L={ens.L}")
    Lt = ens.L // 2
    odd = ens.betas[0:2 * Lt:2]
    even = ens.betas[1:2 * Lt:2]
    stack = np.einsum("ji,jk->jik", odd, odd) - np.einsum("ji,jk->jik", even, even)
    btilde = b[0:2 * Lt:2] - b[1:2 * Lt:2]
    return stack, btilde


def explicit_operator(op, cap: int = 4096) -> np.ndarray:
    """(L, m*n) matrix whose row j is the row-major vectorization of A_j."""
    L, m, n = op_shape(op)
    if m * n > cap:
        raise ResourceError(f"explicit operator for m*n={m * n} exceeds cap {cap}")
    if isinstance(op, RopEnsemble):
        return np.einsum("ji,jk->jik", op.betas, op.gammas).reshape(L, m * n)
    return np.asarray(op, dtype=float).reshape(L, m * n)


def lq_norm(z, q: float) -> float:
    """The l_q (quasi-)norm (sum |z_i|^q)^{1/q}."""
    z = np.asarray(z, dtype=float)
    if q <= 0:
        raise ValueError("q must be positive")
    return float(np.sum(np.abs(z) ** q) ** (1.0 / q))


def generate_noise(spec: NoiseSpec, ens, seed: int = 0) -> np.ndarray:
    """Draw Gaussian noise and rescale it exactly onto the constraint boundary.

    lq_bounded: ||z||_q / L == eta1; dantzig: ||A*(z)||_op == eta2;
    intersection: the tighter of the two scalings, so both constraints hold
    with at least one active.
    """
    L, _, _ = op_shape(ens)
    if spec.kind == "none":
        return np.zeros(L)
    z = _substream(seed, _STREAM_NOISE, 0).standard_normal(L)
    scales = []
    if spec.kind in ("lq_bounded", "intersection"):
        nrm = lq_norm(z, spec.q)
        scales.append(0.0 if nrm == 0 else L * spec.eta1 / nrm)
    if spec.kind in ("dantzig", "intersection"):
        opnorm = singular_values(adjoint_map(ens, z))[0]
        scales.append(0.0 if opnorm == 0 else spec.eta2 / opnorm)
    return z * min(scales)


def check_feasible(spec: NoiseSpec, ens, residual, tol: float = 0.0):
    """Membership of a residual in the noise set, with per-constraint slack.

    Returns (feasible, slacks) where slacks maps constraint name to
    (allowed level) - (attained level); feasibility allows ``tol`` of
    violation.
    """
    residual = np.asarray(residual, dtype=float)
    slacks: dict[str, float] = {}
    if spec.kind == "none":
        slacks["equality"] = -float(np.max(np.abs(residual), initial=0.0))
        return slacks["equality"] >= -tol, slacks
    if spec.kind in ("lq_bounded", "intersection"):
        L, _, _ = op_shape(ens)
        slacks["lq"] = spec.eta1 - lq_norm(residual, spec.q) / L
    if spec.kind in ("dantzig", "intersection"):
        opnorm = singular_values(adjoint_map(ens, residual))[0]
        slacks["dantzig"] = spec.eta2 - opnorm
    return all(s >= -tol for s in slacks.values()), slacks
