"""Dense complex linear algebra: trace inner product, rank/null-space with an
explicit tolerance policy, and tensor-slot lifting of pair operators.

All functions are pure and operate on immutable numpy inputs.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeError

DEFAULT_TOL = 1e-9


def dagger(f):
    """Conjugate transpose."""
    return np.asarray(f).conj().T


def inner(f, g):
    """Trace inner product tr(f^dag g).

    Conjugate-linear in the first argument, positive definite on square
    matrices of a fixed size.
    """
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    if f.shape != g.shape or f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise ShapeError(f"inner() needs equal square matrices, got {f.shape} and {g.shape}")
    return complex(np.trace(f.conj().T @ g))


@dataclass(frozen=True)
class RankResult:
    """Numerical rank data for a complex matrix.

    ``nullspace`` holds an orthonormal basis of the right kernel as columns,
    phase-fixed so the first significant component of each vector is
    real-positive.  ``gap`` is the ratio (first dropped sv / last kept sv),
    or None when no singular value was dropped or kept.
    """

    rank: int
    nullspace: np.ndarray = field(repr=False)
    singular_values: np.ndarray = field(repr=False)
    gap: float | None = None


def _fix_phase(v):
    idx = np.flatnonzero(np.abs(v) > 1e-12 * max(np.max(np.abs(v)), 1e-300))
    if idx.size == 0:
        return v
    pivot = v[idx[0]]
    return v * (abs(pivot) / pivot)


def rank_nullspace(M, tol=DEFAULT_TOL, floor=0.0):
    """Rank and orthonormal right null-space basis of M via SVD.

    The rank counts singular values above ``tol`` times the largest one.
    ``floor`` is an absolute cutoff below which singular values are never
    counted, so that a matrix of pure rounding noise comes out rank 0.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.size == 0:
        raise ShapeError(f"rank_nullspace() needs a nonempty 2-d matrix, got shape {M.shape}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    _, s, vh = np.linalg.svd(M)
    ncols = M.shape[1]
    if s.size == 0 or s[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(s > max(tol * s[0], floor)))
    null = vh[rank:].conj().T if rank < ncols else np.zeros((ncols, 0), dtype=complex)
    for j in range(null.shape[1]):
        null[:, j] = _fix_phase(null[:, j])
    gap = None
    if 0 < rank < s.size:
        gap = float(s[rank] / s[rank - 1])
    return RankResult(rank=rank, nullspace=null, singular_values=s, gap=gap)


def lift_to_slots(Q, p, q):
    """Embed a pair operator Q on C^n (x) C^n into slots (q, q+1) of (C^n)^(x p).

    Slot 1 is the leftmost tensor factor; 1 <= q <= p-1.
    """
    Q = np.asarray(Q, dtype=complex)
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise ShapeError(f"pair operator must be square, got {Q.shape}")
    n = round(Q.shape[0] ** 0.5)
    if n * n != Q.shape[0]:
        raise ShapeError(f"pair operator size {Q.shape[0]} is not a perfect square")
    if not (1 <= q <= p - 1):
        raise IndexError(f"slot q={q} out of range for p={p}")
    left = np.eye(n ** (q - 1), dtype=complex)
    right = np.eye(n ** (p - q - 1), dtype=complex)
    return np.kron(np.kron(left, Q), right)


def span_projector(columns, tol=DEFAULT_TOL):
    """Hermitian orthogonal projector onto the column span of ``columns``."""
    columns = np.asarray(columns, dtype=complex)
    k = columns.shape[0]
    if columns.size == 0:
        return np.zeros((k, k), dtype=complex)
    u, s, _ = np.linalg.svd(columns, full_matrices=False)
    keep = s > tol * s[0] if s.size and s[0] > 0 else np.zeros_like(s, dtype=bool)
    ur = u[:, keep]
    return ur @ ur.conj().T
