"""Degree-1 slice of the universal calculus over M_m(C).

Elements of A (x) A are stored as lists of simple tensors and compared in
the Kronecker flattening, which is faithful at desk scale.
"""

from dataclasses import dataclass, field

import numpy as np

from .algebra import matrix_basis_duals
from .errors import ShapeError
from .linalg import DEFAULT_TOL, dagger

__all__ = [
    "UElement",
    "du",
    "theta_u",
    "theta_u_a",
    "contract_ad",
    "verify_trace_lemma",
]


@dataclass(frozen=True)
class UElement:
    """Sum of simple tensors f_i (x) g_i in A (x) A."""

    m: int
    terms: tuple = field(repr=False)  # tuple of (f, g) matrix pairs

    def flatten(self):
        out = np.zeros((self.m * self.m, self.m * self.m), dtype=complex)
        for f, g in self.terms:
            out += np.kron(f, g)
        return out

    def left(self, h):
        """h . (f (x) g) = hf (x) g."""
        return UElement(self.m, tuple((h @ f, g) for f, g in self.terms))

    def right(self, h):
        """(f (x) g) . h = f (x) gh."""
        return UElement(self.m, tuple((f, g @ h) for f, g in self.terms))

    def __add__(self, other):
        return UElement(self.m, self.terms + other.terms)

    def __neg__(self):
        return UElement(self.m, tuple((-f, g) for f, g in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def commutator(self, h):
        """[h, X] = h.X - X.h in the bimodule sense."""
        return self.left(h) - self.right(h)


def du(f):
    """Universal differential of a matrix: 1 (x) f - f (x) 1."""
    f = np.asarray(f, dtype=complex)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise ShapeError(f"du() needs a square matrix, got {f.shape}")
    m = f.shape[0]
    eye = np.eye(m, dtype=complex)
    return UElement(m, ((eye, f.copy()), (-f, eye)))


def theta_u(basis_gamma, tol=DEFAULT_TOL):
    """theta_u = (1/m) sum_mu gamma_mu (x) gamma^{mu dag} - 1 (x) 1."""
    gam = np.array([np.asarray(g, dtype=complex) for g in basis_gamma])
    m = gam.shape[1]
    gdual = matrix_basis_duals(gam, tol=tol)
    terms = [(gam[mu] / m, dagger(gdual[mu])) for mu in range(m * m)]
    eye = np.eye(m, dtype=complex)
    terms.append((-eye, eye))
    return UElement(m, tuple(terms))


def theta_u_a(basis_gamma, D, a, tol=DEFAULT_TOL):
    """theta^a_u = sum_mu gamma_mu lambda^{a dag} (x) gamma^{mu dag}."""
    gam = np.array([np.asarray(g, dtype=complex) for g in basis_gamma])
    m = gam.shape[1]
    gdual = matrix_basis_duals(gam, tol=tol)
    la_dag = dagger(D.duals[a])
    terms = [(gam[mu] @ la_dag, dagger(gdual[mu])) for mu in range(m * m)]
    return UElement(m, tuple(terms))


def contract_ad(X, h):
    """Contraction of sum f_i (x) g_i against the derivation ad(h)."""
    h = np.asarray(h, dtype=complex)
    out = np.zeros((X.m, X.m), dtype=complex)
    for f, g in X.terms:
        out += f @ (h @ g - g @ h)
    return out


def verify_trace_lemma(basis_gamma, trials=20, seed=0, tol=1e-10):
    """Numerical check of the basis-completeness identities.

    For random f, g: sum_mu gamma_mu f gamma^{mu dag} = tr(f) 1, and
    f (gamma_mu g (x) gamma^{mu dag}) = (gamma_mu g (x) gamma^{mu dag}) f
    in the flattened tensor representation.
    """
    gam = np.array([np.asarray(g, dtype=complex) for g in basis_gamma])
    m = gam.shape[1]
    gdual = matrix_basis_duals(gam, tol=DEFAULT_TOL)
    rng = np.random.default_rng(seed)
    res_trace = 0.0
    res_comm = 0.0
    for _ in range(trials):
        f = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2)
        g = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2)
        total = sum(gam[mu] @ f @ dagger(gdual[mu]) for mu in range(m * m))
        res_trace = max(res_trace, float(np.linalg.norm(total - np.trace(f) * np.eye(m))))
        X = UElement(m, tuple((gam[mu] @ g, dagger(gdual[mu])) for mu in range(m * m)))
        res_comm = max(res_comm, float(np.linalg.norm(X.commutator(f).flatten())))
    return {
        "trace_identity": res_trace,
        "tensor_commutator": res_comm,
        "passed": bool(res_trace < tol * m and res_comm < tol * m),
    }
