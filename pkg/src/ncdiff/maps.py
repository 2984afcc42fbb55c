"""Maps between calculi: pushforward/pullback of linear maps between
subspaces, conjugation equivalences, and the derived "Lie" derivative."""

from dataclasses import dataclass, field

import numpy as np

from .algebra import Subspace, dual_data, validate_subspace
from .calculus import (
    Form,
    build_tower,
    canonicalize,
    coframe,
    exterior_d,
    form_norm,
    random_form,
    scalar_form,
    theta,
    wedge,
    zero_form,
)
from .errors import ConfigError, DegreeError, ShapeError, SingularTransform
from .genalg import use_relations
from .linalg import DEFAULT_TOL, inner

__all__ = [
    "LinearMap",
    "Conjugation",
    "pushforward",
    "pullback",
    "conjugate_subspace",
    "check_equivalence",
    "lie_derivative",
]


@dataclass(frozen=True)
class LinearMap:
    """phi: B -> B' with phi(lambda_b) = M^c_b lambda'_c; M is n' x n."""

    source: Subspace
    target: Subspace
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=complex)
        if M.shape != (self.target.n, self.source.n):
            raise ShapeError(
                f"map matrix has shape {M.shape}, expected "
                f"({self.target.n}, {self.source.n})"
            )


@dataclass(frozen=True)
class Conjugation:
    """U(h) = u h u^-1 for invertible u."""

    u: np.ndarray = field(repr=False)
    u_inv: np.ndarray = field(repr=False, default=None)

    @classmethod
    def from_matrix(cls, u, tol=DEFAULT_TOL):
        u = np.asarray(u, dtype=complex)
        sv = np.linalg.svd(u, compute_uv=False)
        if sv[-1] <= tol * sv[0]:
            ratio = sv[-1] / sv[0] if sv[0] > 0 else 0.0
            raise SingularTransform(
                f"conjugating matrix is singular (sv ratio {ratio:.3e})"
            )
        return cls(u=u, u_inv=np.linalg.inv(u))

    def apply(self, f):
        return self.u @ f @ self.u_inv

    def unapply(self, f):
        return self.u_inv @ f @ self.u


def pushforward(phi, b):
    """Expansion of ad(phi(lambda_b)) over {ad(lambda'_c)}: column b of M."""
    return np.asarray(phi.matrix, dtype=complex)[:, b].copy()


def pullback(phi, xi, source_tower):
    """Pull a form on the target calculus back along phi.

    Coefficients transform by the map matrix in every slot, then are
    canonicalized in the source tower.
    """
    p = xi.degree
    if p > source_tower.max_degree:
        raise DegreeError(f"degree {p} outside the source tower range")
    M = np.asarray(phi.matrix, dtype=complex)
    coeffs = xi.coeffs
    for q in range(p):
        # contract the target index in slot q with M^c_b
        coeffs = np.moveaxis(np.tensordot(coeffs, M, axes=([q], [0])), -1, q)
    return Form(source_tower, p, canonicalize(source_tower, p, coeffs))


def conjugate_subspace(U, B, tol=DEFAULT_TOL):
    """B' with basis lambda'_a = u lambda_a u^-1."""
    primed = [U.apply(lam) for lam in B.lambdas]
    label = f"{B.label}~conj" if B.label else "conjugated"
    return validate_subspace(B.m, primed, tol=tol, label=label)


def _ustar(U, tower, xi):
    """U^star: a form over the conjugated calculus, expressed in B's tower.

    With matched bases the index structure is unchanged and coefficients map
    by f -> u^-1 f u.
    """
    coeffs = np.einsum("ij,...jk,kl->...il", U.u_inv, xi.coeffs, U.u)
    return Form(tower, xi.degree, canonicalize(tower, xi.degree, coeffs))


def check_equivalence(U, B, tower, trials=10, seed=0, tol=DEFAULT_TOL):
    """Verify that conjugation by u is a d-homomorphism of calculi.

    Builds the conjugated subspace with the transported relation matrix,
    then checks co-frame preservation, theta preservation, product
    preservation, and commutation of U^star with d on random forms.
    """
    G = tower.ga
    if tower.max_degree < 2:
        raise ConfigError("equivalence checks need max_degree >= 2")
    Bp = conjugate_subspace(U, B, tol=tol)
    Gp = use_relations(Bp, G.alpha, tol=max(tol, 1e-7))
    tower_p = build_tower(Gp, tower.max_degree, tol=tol)
    if np.linalg.norm(tower_p.projectors[2] - tower.projectors[2]) > 1e-8:
        raise ConfigError("canonical projectors of the two towers do not match")
    rng = np.random.default_rng(seed)
    scale = max(np.linalg.norm(B.lambdas), 1.0)

    res_coframe = max(
        form_norm(_ustar(U, tower, coframe(tower_p, a)) - coframe(tower, a))
        for a in range(B.n)
    )
    res_theta = form_norm(_ustar(U, tower, theta(tower_p)) - theta(tower))

    res_prod = 0.0
    res_d = 0.0
    for _ in range(trials):
        xi = random_form(tower_p, 1, rng)
        zeta = random_form(tower_p, 1, rng)
        lhs = _ustar(U, tower, wedge(xi, zeta))
        rhs = wedge(_ustar(U, tower, xi), _ustar(U, tower, zeta))
        denom = max(form_norm(lhs), form_norm(rhs), 1.0)
        res_prod = max(res_prod, form_norm(lhs - rhs) / denom)
        for deg in range(tower.max_degree):
            om = random_form(tower_p, deg, rng)
            lhs = _ustar(U, tower, exterior_d(om))
            rhs = exterior_d(_ustar(U, tower, om))
            denom = max(form_norm(om) * scale ** 2, 1.0)
            res_d = max(res_d, form_norm(lhs - rhs) / denom)
    limit = 1e-8
    return {
        "coframe": res_coframe,
        "theta": res_theta,
        "products": res_prod,
        "d_commutation": res_d,
        "passed": bool(max(res_coframe, res_theta, res_prod, res_d) < limit),
    }


def lie_derivative(tower, f, xi):
    """Degree-preserving derivative induced by conjugation flow along f.

    On degree 0 it reduces to g -> -[f, g]; on higher degrees it subtracts
    the contraction-tensor-weighted insertion of <lambda^b, [f, lambda_c]>.
    """
    f = np.asarray(f, dtype=complex)
    p = xi.degree
    if p > tower.max_degree:
        raise DegreeError(f"degree {p} outside the tower range")
    B = tower.ga.subspace
    duals = tower.ga.dual.duals
    n, m = B.n, B.m
    first = np.einsum("ij,...jk->...ik", f, xi.coeffs) - np.einsum(
        "...ij,jk->...ik", xi.coeffs, f
    )
    if p == 0:
        return scalar_form(tower, -first)
    # W[b, c] = <lambda^b, [f, lambda_c]>
    comm = np.einsum("ij,cjk->cik", f, B.lambdas) - np.einsum("cij,jk->cik", B.lambdas, f)
    W = np.array([[inner(duals[b], comm[c]) for c in range(n)] for b in range(n)])
    flat = xi.coeffs.reshape(n ** p, m, m)
    if p == 1:
        X = flat
    else:
        T = tower.projectors[p].conj()
        X = np.tensordot(T, flat, axes=([0], [0]))
    Xr = X.reshape((n,) * p + (m, m))
    second = np.zeros_like(Xr)
    for q in range(p):
        term = np.tensordot(Xr, W, axes=([q], [0]))
        second += np.moveaxis(term, -1, q)
    out = -first - second
    return Form(tower, p, canonicalize(tower, p, out))
