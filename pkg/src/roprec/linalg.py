"""Dense real-matrix primitives.

SVD, Schatten (quasi-)norms, best rank-r splits, inner products and the
spectahedron projection used by the PhaseLift solver.  All functions are
pure and operate on plain numpy arrays.
"""

from __future__ import annotations

import dataclasses

import numpy as np

# Singular values below RANK_TOL * sigma_max count as zero for rank purposes.
RANK_TOL = 1e-10


class SvdError(RuntimeError):
    """Raised when the iterative SVD eigensolver fails to converge."""


@dataclasses.dataclass(frozen=True)
class SingularDecomposition:
    """Thin SVD: ``U @ diag(sigma) @ V.T`` reconstructs the input.

    ``sigma`` is sorted descending; U and V have orthonormal columns.
    """

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray


@dataclasses.dataclass(frozen=True)
class RankSplit:
    """Best rank-r part of a matrix and its residual: head + tail == source."""

    head: np.ndarray
    tail: np.ndarray
    r: int


def _as_matrix(X):
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("matrix contains non-finite entries")
    return X


def svd(X) -> SingularDecomposition:
    """Thin singular value decomposition of a finite real matrix."""
    X = _as_matrix(X)
    try:
        U, s, Vt = np.linalg.svd(X, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise SvdError(f"SVD did not converge for shape {X.shape}: {exc}") from exc
    return SingularDecomposition(U=U, sigma=s, V=Vt.T)


def singular_values(X) -> np.ndarray:
    """Singular values of X, sorted descending."""
    X = _as_matrix(X)
    try:
        return np.linalg.svd(X, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise SvdError(f"SVD did not converge for shape {X.shape}: {exc}") from exc


def numerical_rank(sigma: np.ndarray) -> int:
    """Count of singular values above ``RANK_TOL * sigma_max``."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.size == 0 or sigma[0] <= 0.0:
        return 0
    return int(np.sum(sigma > RANK_TOL * sigma[0]))


def schatten_norm(X, p: float) -> float:
    """Schatten p-(quasi-)norm: the l_p norm of the singular value vector.

    p=1 is the nuclear norm, p=2 the Frobenius norm, p=inf the operator
    norm.  For p < 1 this is a quasi-norm; only the p-triangle inequality
    holds.
    """
    s = singular_values(X)
    if np.isinf(p):
        return float(s[0]) if s.size else 0.0
    if p <= 0:
        raise ValueError(f"p must be positive or inf, got {p}")
    return float(np.sum(s**p) ** (1.0 / p))


def rank_split(X, r: int) -> RankSplit:
    """Split X into its best rank-r approximation and the residual."""
    X = _as_matrix(X)
    if r < 0 or r > min(X.shape):
        raise ValueError(f"rank {r} out of range for shape {X.shape}")
    if r == 0:
        return RankSplit(head=np.zeros_like(X), tail=X.copy(), r=0)
    dec = svd(X)
    head = (dec.U[:, :r] * dec.sigma[:r]) @ dec.V[:, :r].T
    return RankSplit(head=head, tail=X - head, r=r)


def frobenius_inner(X, Y) -> float:
    """Trace inner product sum_ij X_ij Y_ij."""
    X = _as_matrix(X)
    Y = _as_matrix(Y)
    if X.shape != Y.shape:
        raise ValueError(f"shape mismatch: {X.shape} vs {Y.shape}")
    return float(np.sum(X * Y))


def simplex_project(v: np.ndarray) -> np.ndarray:
    """Euclidean projection of a vector onto the probability simplex."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.size + 1)
    cond = u - css / idx > 0
    rho = int(np.nonzero(cond)[0][-1])
    theta = css[rho] / (rho + 1)
    return np.maximum(v - theta, 0.0)


def spectahedron_project(X, sym_tol: float = 1e-8) -> np.ndarray:
    """Nearest (Frobenius) PSD matrix with unit trace.

    Eigendecomposes the symmetric input, projects the eigenvalues onto
    the probability simplex, and recomposes.
    """
    X = _as_matrix(X)
    if X.shape[0] != X.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {X.shape}")
    scale = max(1.0, float(np.abs(X).max()))
    if np.abs(X - X.T).max() > sym_tol * scale:
        raise ValueError("matrix is not symmetric")
    S = 0.5 * (X + X.T)
    w, Q = np.linalg.eigh(S)
    w_proj = simplex_project(w)
    return (Q * w_proj) @ Q.T
