"""GNS construction, corepresentations, Peter-Weyl projectors, multiplicative unitaries.

The GNS space carries the inner product <a, b> = h(b* a) (antilinear in the
second slot).  Corepresentations are stored through their matrix coefficients:
an array u of shape (d, d, n) with u[i, j] the coefficient vector of the
(i, j) entry, satisfying Delta(u_ij) = sum_k u_ik (x) u_kj.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import groups
from .errors import CompletenessError, InternalInconsistencyError, SchurError, StructureError
from .hopf import FiniteQuantumGroup, _maxabs, _rank

GNS_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class GNSSpace:
    """GNS data for the invariant state: Gram matrix, orthonormal frame, left action.

    Coordinates of Lambda(a) in the orthonormal basis are ``onb @ a``; ``rep[i]``
    is left multiplication by e_i expressed in that basis.
    """

    gram: np.ndarray
    onb: np.ndarray
    onb_inv: np.ndarray
    rep: np.ndarray
    cyclic: np.ndarray

    def vector(self, a) -> np.ndarray:
        return self.onb @ np.asarray(a, dtype=complex)

    def act(self, a) -> np.ndarray:
        return np.einsum("i,ikl->kl", np.asarray(a, dtype=complex), self.rep)


def gns_build(g: FiniteQuantumGroup) -> GNSSpace:
    """Left regular representation on H = A with <a, b> = h(b* a)."""
    gram = np.einsum("ip,pjq,q->ij", g.star, g.mult, g.haar)
    gram = (gram + gram.conj().T) / 2
    eigs = np.linalg.eigvalsh(gram)
    if eigs[0] <= eigs[-1] * 1e-12:
        raise InternalInconsistencyError(
            f"Gram matrix is not positive definite (min eig {eigs[0]:.3e}); invariant state not faithful")
    chol = np.linalg.cholesky(gram)          # gram = chol @ chol^H
    onb = chol.conj().T                      # coords v -> onb @ v carry the standard inner product
    onb_inv = np.linalg.inv(onb)
    left = g.mult.transpose(0, 2, 1)         # left[i] maps b-coords to (e_i b)-coords
    rep = np.einsum("pk,ikl,lq->ipq", onb, left, onb_inv)
    cyclic = onb @ g.unit
    space = GNSSpace(gram=gram, onb=onb, onb_inv=onb_inv, rep=rep, cyclic=cyclic)
    _certify_gns(g, space)
    return space


def _certify_gns(g: FiniteQuantumGroup, s: GNSSpace, tol: float = GNS_TOL) -> None:
    n = g.dim
    hom = np.einsum("ikl,jlm->ijkm", s.rep, s.rep) - np.einsum("ijp,pkm->ijkm", g.mult, s.rep)
    star = np.einsum("ij,jkl->ikl", g.star, s.rep) - np.conj(np.transpose(s.rep, (0, 2, 1)))
    unital = np.einsum("i,ikl->kl", g.unit, s.rep) - np.eye(n)
    cyc = abs(np.linalg.norm(s.cyclic) - 1.0)
    worst = max(_maxabs(hom), _maxabs(star), _maxabs(unital), cyc)
    if worst > tol:
        raise InternalInconsistencyError(f"GNS representation certificate failed (residual {worst:.3e})")


@dataclass(frozen=True, eq=False)
class Corepresentation:
    """Unitary corepresentation with entries given as coefficient vectors."""

    u: np.ndarray          # shape (d, d, n)
    label: str = ""

    def __post_init__(self):
        u = np.asarray(self.u, dtype=complex)
        if u.ndim != 3 or u.shape[0] != u.shape[1]:
            raise StructureError(f"corepresentation array must have shape (d, d, n), got {u.shape}")
        u = np.ascontiguousarray(u)
        u.setflags(write=False)
        object.__setattr__(self, "u", u)

    @property
    def dim(self) -> int:
        return self.u.shape[0]


def trivial_corep(g: FiniteQuantumGroup) -> Corepresentation:
    return Corepresentation(u=g.unit.reshape(1, 1, g.dim), label="trivial")


def corep_from_group_rep(values, label: str = "") -> Corepresentation:
    """Corepresentation of F(G) from unitary representation values pi(g)_{ij}.

    ``values`` has shape (|G|, d, d); entry (i, j) of the corepresentation is
    the function g -> pi(g)_{ij}.
    """
    values = np.asarray(values, dtype=complex)
    return Corepresentation(u=values.transpose(1, 2, 0), label=label)


def group_element_coreps(g: FiniteQuantumGroup) -> list[Corepresentation]:
    """The one-dimensional corepresentations lambda_g of a group algebra."""
    out = []
    for k in range(g.dim):
        u = np.zeros((1, 1, g.dim), dtype=complex)
        u[0, 0, k] = 1.0
        out.append(Corepresentation(u=u, label=f"lambda_{k}"))
    return out


def default_irreps(g: FiniteQuantumGroup) -> list[Corepresentation]:
    """Built-in complete irreducible families.

    Group algebras get one corepresentation per group element.  Function
    algebras of abelian groups get their characters; the stored tables cover
    S_3, D_4 and Q_8.  Anything else must supply its own list.
    """
    if g.kind == "group":
        return group_element_coreps(g)
    if g.kind == "function" and g.group_table is not None:
        table = np.asarray(g.group_table)
        if np.array_equal(table, table.T):
            chars = groups.abelian_characters(table)
            return [corep_from_group_rep(c, label=f"chi_{k}") for k, c in enumerate(chars)]
        for name, maker, irreps in (
            ("S3", groups.s3_table, groups.s3_irrep_matrices),
            ("D4", groups.d4_table, groups.d4_irrep_matrices),
            ("Q8", groups.q8_table, groups.q8_irrep_matrices),
        ):
            ref = maker()
            if table.shape == ref.shape and np.array_equal(table, ref):
                return [corep_from_group_rep(v, label=f"{name}_{k}") for k, v in enumerate(irreps())]
        raise CompletenessError(
            "no stored irreducible family for this nonabelian group; supply irreps explicitly")
    raise CompletenessError("no built-in irreducible family for this algebra; supply irreps explicitly")


@dataclass(frozen=True)
class CorepReport:
    unitarity_residual: float
    corep_residual: float
    end_dim: int

    @property
    def irreducible(self) -> bool:
        return self.end_dim == 1

    def passed(self, tol: float) -> bool:
        return max(self.unitarity_residual, self.corep_residual) < tol


def validate_corep(g: FiniteQuantumGroup, pi: Corepresentation, tol: float = GNS_TOL) -> CorepReport:
    """Residuals of unitarity and the corepresentation identity, plus dim End(pi)."""
    big = amplified_corep(g, pi)
    dd = big.shape[0]
    unit_res = max(
        _maxabs(big.conj().T @ big - np.eye(dd)),
        _maxabs(big @ big.conj().T - np.eye(dd)),
    )
    lhs = np.einsum("ijn,npq->ijpq", pi.u, g.comult)
    rhs = np.einsum("ikp,kjq->ijpq", pi.u, pi.u)
    corep_res = _maxabs(lhs - rhs)
    return CorepReport(unitarity_residual=unit_res, corep_residual=corep_res,
                       end_dim=mor_dim(g, pi, pi))


def amplified_corep(g: FiniteQuantumGroup, pi: Corepresentation) -> np.ndarray:
    """(id (x) rho)(U) as a single (d*d0) x (d*d0) matrix."""
    d = pi.dim
    d0 = g.rep.shape[1]
    big = np.einsum("ijn,nkl->ikjl", pi.u, g.rep)
    return big.reshape(d * d0, d * d0)


def mor_dim(g: FiniteQuantumGroup, pi: Corepresentation, rho: Corepresentation) -> int:
    """dim Mor(pi, rho): solutions T of (T (x) 1) U^pi = U^rho (T (x) 1)."""
    dp, dr, n = pi.dim, rho.dim, g.dim
    m = np.zeros((dr * dp * n, dr * dp), dtype=complex)
    for p in range(dr):
        for q in range(dp):
            # coefficient of T[p, q] in constraint[i, j, :] over (i, j) in dr x dp
            block = np.zeros((dr, dp, n), dtype=complex)
            block[p, :, :] += pi.u[q, :, :]
            block[:, q, :] -= rho.u[:, p, :]
            m[:, p * dp + q] = block.reshape(-1)
    return int(dr * dp - _rank(m))


def matrix_coefficients(g: FiniteQuantumGroup, pi: Corepresentation) -> list[np.ndarray]:
    """All entries u_ij as elements of A."""
    return [pi.u[i, j].copy() for i in range(pi.dim) for j in range(pi.dim)]


@dataclass(frozen=True, eq=False)
class PWDecomposition:
    """Orthogonal blocks of the GNS space spanned by matrix coefficients."""

    gns: GNSSpace
    irreps: tuple
    blocks: tuple            # per irrep: (d^2, n) array, rows orthonormal in GNS coords
    complete: bool

    def projector(self, subset) -> np.ndarray:
        n = self.gns.onb.shape[0]
        p = np.zeros((n, n), dtype=complex)
        for k in subset:
            q = self.blocks[k]
            p += q.T @ q.conj()
        return p

    def frame(self, subset) -> np.ndarray:
        """Orthonormal basis of H_Lambda as columns of an (n, r) matrix."""
        return np.vstack([self.blocks[k] for k in subset]).T


def pw_decompose(g: FiniteQuantumGroup, irreps, tol: float = GNS_TOL,
                 require_complete: bool = True, gns: GNSSpace | None = None) -> PWDecomposition:
    """Validate an irreducible family and orthonormalize its coefficient blocks."""
    gns = gns or gns_build(g)
    irreps = tuple(irreps)
    for k, pi in enumerate(irreps):
        report = validate_corep(g, pi, tol)
        if not report.passed(tol):
            raise StructureError(
                f"irrep {k} fails validation (unitarity {report.unitarity_residual:.2e}, "
                f"corep {report.corep_residual:.2e})")
        if not report.irreducible:
            raise SchurError(f"irrep {k} is reducible (dim End = {report.end_dim})")
    for a in range(len(irreps)):
        for b in range(a + 1, len(irreps)):
            if irreps[a].dim == irreps[b].dim and mor_dim(g, irreps[a], irreps[b]) > 0:
                raise SchurError(f"irreps {a} and {b} are unitarily equivalent")
    total = sum(pi.dim ** 2 for pi in irreps)
    complete = total == g.dim
    if require_complete and not complete:
        raise CompletenessError(f"sum of squared dimensions is {total}, expected {g.dim}")

    blocks = []
    for pi in irreps:
        vecs = np.array([gns.vector(pi.u[i, j]) for i in range(pi.dim) for j in range(pi.dim)])
        q = _orthonormalize(vecs)
        if q.shape[0] != pi.dim ** 2:
            raise StructureError(
                f"matrix coefficients of a d={pi.dim} irrep span rank {q.shape[0]}, expected {pi.dim ** 2}")
        blocks.append(q)
    for a in range(len(blocks)):
        for b in range(a + 1, len(blocks)):
            overlap = _maxabs(blocks[a].conj() @ blocks[b].T)
            if overlap > tol:
                raise InternalInconsistencyError(
                    f"coefficient blocks {a} and {b} are not orthogonal (overlap {overlap:.2e})")
    return PWDecomposition(gns=gns, irreps=irreps, blocks=tuple(blocks), complete=complete)


def _orthonormalize(vecs: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass."""
    out: list[np.ndarray] = []
    for v in np.asarray(vecs, dtype=complex):
        w = v.copy()
        for _ in range(2):
            for q in out:
                w = w - np.dot(q.conj(), w) * q
        norm = np.linalg.norm(w)
        if norm > 1e-8:
            out.append(w / norm)
    return np.array(out) if out else np.zeros((0, vecs.shape[1]), dtype=complex)


def pw_projector(g: FiniteQuantumGroup, irreps, subset, tol: float = GNS_TOL) -> np.ndarray:
    """Orthogonal projection onto the span of the GNS images of the chosen blocks."""
    dec = pw_decompose(g, irreps, tol)
    subset = sorted(set(int(k) for k in subset))
    if any(k < 0 or k >= len(dec.irreps) for k in subset):
        raise StructureError(f"subset {subset} out of range for {len(dec.irreps)} irreps")
    return dec.projector(subset)


# ---------------------------------------------------------------------------
# multiplicative unitaries
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MultiplicativeUnitary:
    side: str                    # "W" on H (x) H0, "V" on H0 (x) H
    matrix: np.ndarray
    unitarity_residual: float
    implementation_residual: float


def multiplicative_unitary(g: FiniteQuantumGroup, side: str = "W",
                           gns: GNSSpace | None = None, samples: int = 8,
                           seed: int = 0) -> MultiplicativeUnitary:
    """Dense multiplicative unitary with certificates of its defining identities.

    W(Lambda(a) (x) xi) = (pi (x) rho)(Delta a)(Lambda(1) (x) xi) on H (x) H0,
    verified to implement the comultiplication by conjugation; V mirrors both
    on H0 (x) H.
    """
    if side not in ("W", "V"):
        raise ValueError(f"side must be 'W' or 'V', got {side!r}")
    gns = gns or gns_build(g)
    n = g.dim
    d0 = g.rep.shape[1]
    acted = np.einsum("jpq,q->jp", gns.rep, gns.cyclic)      # pi(e_j) Lambda(1)
    mat = np.zeros((n * d0, n * d0), dtype=complex)
    for m in range(n):
        delta = g.coproduct(gns.onb_inv[:, m])
        if side == "W":
            # column (m, k): sum_{j,l} delta[j,l] (pi(e_j) cyclic) (x) (rho(e_l) e_k)
            cols = np.einsum("jl,jp,lqk->pqk", delta, acted, g.rep)
            mat[:, m * d0:(m + 1) * d0] = cols.reshape(n * d0, d0)
        else:
            # column (k, m): sum_{j,l} delta[j,l] (rho(e_j) e_k) (x) (pi(e_l) cyclic)
            cols = np.einsum("jl,jqk,lp->qpk", delta, g.rep, acted)
            flat = cols.reshape(d0 * n, d0)
            for k in range(d0):
                mat[:, k * n + m] = flat[:, k]
    unit_res = max(
        _maxabs(mat.conj().T @ mat - np.eye(mat.shape[0])),
        _maxabs(mat @ mat.conj().T - np.eye(mat.shape[0])),
    )
    impl_res = _implementation_residual(g, gns, mat, side, samples, seed)
    return MultiplicativeUnitary(side=side, matrix=mat, unitarity_residual=unit_res,
                                 implementation_residual=impl_res)


def _implementation_residual(g, gns, mat, side, samples, seed) -> float:
    rng = np.random.default_rng(seed)
    n, d0 = g.dim, g.rep.shape[1]
    worst = 0.0
    for _ in range(samples):
        a = rng.normal(size=n) + 1j * rng.normal(size=n)
        delta = g.coproduct(a)
        if side == "W":
            lhs = mat @ np.kron(gns.act(a), np.eye(d0)) @ mat.conj().T
            rhs = np.einsum("jl,jpq,lab->paqb", delta, gns.rep, g.rep).reshape(n * d0, n * d0)
        else:
            lhs = mat @ np.kron(np.eye(d0), gns.act(a)) @ mat.conj().T
            rhs = np.einsum("jl,jab,lpq->apbq", delta, g.rep, gns.rep).reshape(d0 * n, d0 * n)
        worst = max(worst, _maxabs(lhs - rhs) / max(1.0, _maxabs(a)))
    return worst


def commutation_residual(mat: np.ndarray, projector: np.ndarray, side: str, d0: int) -> float:
    """Residual of [W, P (x) 1] = 0 (side W) or [V, 1 (x) P] = 0 (side V)."""
    if side == "W":
        big = np.kron(projector, np.eye(d0))
    else:
        big = np.kron(np.eye(d0), projector)
    return _maxabs(mat @ big - big @ mat)
