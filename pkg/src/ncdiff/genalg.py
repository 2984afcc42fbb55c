"""Generalised-algebra structure of a subspace: relation matrix alpha, the
Moore-Penrose right data beta, the projector P = alpha beta, and the
structure constants of the product decomposition.

Pair indices (a, b) are flattened row-major: (a, b) -> n*a + b (0-based).
"""

from dataclasses import dataclass, field

import numpy as np

from .algebra import dual_data, eta_perp
from .errors import DependentRelations, InvalidRelation
from .linalg import DEFAULT_TOL, inner, rank_nullspace

__all__ = [
    "GAStructure",
    "detect_relations",
    "build_projector",
    "structure_constants",
    "detect_structure",
    "use_relations",
    "verify_ga",
]


@dataclass(frozen=True)
class GAStructure:
    """Relation data making a subspace a generalised algebra.

    alpha is n^2 x R (columns are the relations), beta is the Moore-Penrose
    left inverse of alpha, P = alpha beta the Hermitian projector onto the
    relation span.  F, t, rho are the components of the product decomposition
    lambda_b lambda_c = F^a_bc lambda_a + (t_bc / m) 1 + rho_bc.
    """

    subspace: object
    dual: object
    R: int
    alpha: np.ndarray = field(repr=False)
    beta: np.ndarray = field(repr=False)
    P: np.ndarray = field(repr=False)
    F: np.ndarray = field(repr=False)
    t: np.ndarray = field(repr=False)
    rho: np.ndarray = field(repr=False)
    mode: str = "auto-maximal"


def structure_constants(B, D):
    """F^a_bc = <lambda^a, lambda_b lambda_c>, t_bc = tr(lambda_b lambda_c),
    rho_bc = eta_perp(lambda_b lambda_c)."""
    n, m = B.n, B.m
    prod = np.einsum("bij,cjk->bcik", B.lambdas, B.lambdas)
    F = np.einsum("aij,bcij->abc", D.duals.conj(), prod)
    t = np.einsum("bcii->bc", prod)
    rho = np.empty((n, n, m, m), dtype=complex)
    for b in range(n):
        for c in range(n):
            rho[b, c] = eta_perp(B, D, prod[b, c])
    return F, t, rho


def detect_relations(B, D, tol=DEFAULT_TOL):
    """Maximal relation matrix alpha and its rank R.

    alpha spans the right kernel of the map sending a pair-indexed vector
    v^{ab} to sum_ab v^{ab} eta_perp(lambda_a lambda_b).  R = 0 is a valid
    result and means B is not a generalised algebra (for nontrivial 2-forms).
    """
    n, m = B.n, B.m
    _, _, rho = structure_constants(B, D)
    M = rho.reshape(n * n, m * m).T  # columns indexed by the pair (a, b)
    # Judge significance against the size of the products themselves, so a
    # rho of pure rounding noise (products fully inside B + C.1) gives the
    # maximal kernel rather than a noise rank.
    scale = max(float(np.linalg.norm(D.gram)), 1.0)
    res = rank_nullspace(M / scale, tol=tol, floor=tol)
    return res.nullspace, res.nullspace.shape[1]


def build_projector(alpha, tol=DEFAULT_TOL):
    """Moore-Penrose left inverse beta = (a^dag a)^-1 a^dag and P = alpha beta."""
    alpha = np.asarray(alpha, dtype=complex)
    nn = alpha.shape[0]
    R = alpha.shape[1]
    if R == 0:
        return np.zeros((0, nn), dtype=complex), np.zeros((nn, nn), dtype=complex)
    gram = alpha.conj().T @ alpha
    sv = np.linalg.svd(gram, compute_uv=False)
    if sv[-1] <= tol * sv[0]:
        raise DependentRelations(
            f"alpha columns are rank deficient (Gram sv ratio {sv[-1] / sv[0]:.3e})"
        )
    beta = np.linalg.solve(gram, alpha.conj().T)
    P = alpha @ beta
    return beta, P


def detect_structure(B, D=None, tol=DEFAULT_TOL):
    """Auto-detect the maximal generalised-algebra structure of B."""
    if D is None:
        D = dual_data(B, tol=tol)
    F, t, rho = structure_constants(B, D)
    alpha, R = detect_relations(B, D, tol=tol)
    beta, P = build_projector(alpha, tol=tol)
    return GAStructure(
        subspace=B, dual=D, R=R, alpha=alpha, beta=beta, P=P,
        F=F, t=t, rho=rho, mode="auto-maximal",
    )


def use_relations(B, alpha_user, D=None, tol=DEFAULT_TOL):
    """Build a GAStructure from user-chosen relation columns.

    Every column must lie in the maximal kernel; this enables conventional
    sub-choices such as keeping only the Lie-algebra commutator relations.
    """
    if D is None:
        D = dual_data(B, tol=tol)
    alpha_user = np.asarray(alpha_user, dtype=complex)
    n, m = B.n, B.m
    F, t, rho = structure_constants(B, D)
    rho_flat = rho.reshape(n * n, m * m)
    scale = max(np.max(np.linalg.norm(rho_flat, axis=1)), 1.0)
    for r in range(alpha_user.shape[1]):
        residual = np.linalg.norm(alpha_user[:, r] @ rho_flat)
        if residual > tol * scale * max(np.linalg.norm(alpha_user[:, r]), 1e-300):
            raise InvalidRelation(r, residual)
    beta, P = build_projector(alpha_user, tol=tol)
    return GAStructure(
        subspace=B, dual=D, R=alpha_user.shape[1], alpha=alpha_user, beta=beta,
        P=P, F=F, t=t, rho=rho, mode="user-supplied",
    )


def verify_ga(G, tol=DEFAULT_TOL):
    """Residual report for the defining identities of a GAStructure."""
    B = G.subspace
    n, m = B.n, B.m
    checks = {}
    if G.R > 0:
        checks["beta_alpha_identity"] = float(
            np.linalg.norm(G.beta @ G.alpha - np.eye(G.R))
        )
    else:
        checks["beta_alpha_identity"] = 0.0
    checks["P_idempotent"] = float(np.linalg.norm(G.P @ G.P - G.P))
    rho_flat = G.rho.reshape(n * n, m * m)
    if G.R > 0:
        rel = G.alpha.T @ rho_flat
        checks["relation_residual"] = float(np.max(np.linalg.norm(rel, axis=1)))
    else:
        checks["relation_residual"] = 0.0

    # dim span{products, basis, 1} <= n^2 + n + 1 - R
    prods = np.einsum("bij,cjk->bcik", B.lambdas, B.lambdas).reshape(n * n, m * m)
    stack = np.vstack([prods, B.lambdas.reshape(n, m * m), np.eye(m).reshape(1, m * m)])
    span_dim = rank_nullspace(stack.T / max(np.linalg.norm(stack), 1.0), tol=tol).rank
    bound = n * n + n + 1 - G.R
    checks["span_dim"] = span_dim
    checks["span_dim_bound"] = bound
    scale = max(np.linalg.norm(rho_flat), 1.0)
    passed = (
        checks["beta_alpha_identity"] < tol
        and checks["P_idempotent"] < tol
        and checks["relation_residual"] < tol * scale
        and span_dim <= bound
    )
    checks["passed"] = bool(passed)
    return checks
