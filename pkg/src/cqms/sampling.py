"""Seeded random generators for elements, states and matrix states.

All randomness in the package flows through numpy Generators passed or
seeded explicitly, so parallel runs stay reproducible.
"""

from __future__ import annotations

import numpy as np

from .hopf import FiniteQuantumGroup, State, certify_state


def random_element(g: FiniteQuantumGroup, rng: np.random.Generator) -> np.ndarray:
    return rng.normal(size=g.dim) + 1j * rng.normal(size=g.dim)


def random_selfadjoint(g: FiniteQuantumGroup, rng: np.random.Generator) -> np.ndarray:
    a = random_element(g, rng)
    return (a + g.star_of(a)) / 2


def random_unit_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(dim: int, rng: np.random.Generator, parts: int | None = None) -> np.ndarray:
    """Dirichlet-weighted convex mixture of Haar-random vector states."""
    if parts is None:
        parts = int(rng.integers(1, 4))
    if parts <= 1 or dim == 1:
        v = random_unit_vector(dim, rng)
        return np.outer(v, v.conj())
    weights = rng.dirichlet(np.ones(parts))
    density = np.zeros((dim, dim), dtype=complex)
    for w in weights:
        v = random_unit_vector(dim, rng)
        density += w * np.outer(v, v.conj())
    return density


def random_state_density(g: FiniteQuantumGroup, rng: np.random.Generator) -> np.ndarray:
    """Density matrix on the representation space H0."""
    return random_density(g.rep.shape[1], rng)


def state_from_density(g: FiniteQuantumGroup, density: np.ndarray, tol: float = 1e-9) -> State:
    """The state a -> tr(density rho(a)), certified."""
    coeffs = np.einsum("ab,iba->i", np.asarray(density, dtype=complex), g.rep)
    return certify_state(g, coeffs, tol=tol)


def random_state(g: FiniteQuantumGroup, rng: np.random.Generator, tol: float = 1e-9) -> State:
    return state_from_density(g, random_state_density(g, rng), tol=tol)


def basis_vector_state(g: FiniteQuantumGroup, index: int, tol: float = 1e-9) -> State:
    """Vector state at a coordinate vector of H0 (a point mass for F(G))."""
    d0 = g.rep.shape[1]
    density = np.zeros((d0, d0), dtype=complex)
    density[index, index] = 1.0
    return state_from_density(g, density, tol=tol)


def random_matrix_state(g: FiniteQuantumGroup, order: int, rng: np.random.Generator) -> np.ndarray:
    """A ucp map A -> M_order via a random isometry, as an (n, order, order) array."""
    d0 = g.rep.shape[1]
    if order > d0:
        raise ValueError(f"matrix state order {order} exceeds representation dimension {d0}")
    raw = rng.normal(size=(d0, order)) + 1j * rng.normal(size=(d0, order))
    q, _ = np.linalg.qr(raw)
    return np.einsum("pa,ipq,qb->iab", q.conj(), g.rep, q)


def matrix_state_on_system(rank: int, order: int, rng: np.random.Generator) -> np.ndarray:
    """Isometry defining a ucp map B(H_Lambda) -> M_order."""
    if order > rank:
        raise ValueError(f"matrix state order {order} exceeds the truncation rank {rank}")
    raw = rng.normal(size=(rank, order)) + 1j * rng.normal(size=(rank, order))
    q, _ = np.linalg.qr(raw)
    return q
