"""Monge-Kantorovich distances by linear programming and the distance bounds.

d^L(mu, nu) = sup{|mu(x) - nu(x)| : L(x) <= 1} is solved over the self-adjoint
part (enough, since L is *-invariant and mu - nu is hermitian) after fixing
the free direction along the unit.  Real-valued family functionals give an
exact polyhedral ball; complex-valued ones give disc constraints handled by
certified outer tangent cuts refined until the bracket closes.

Every Gromov-Hausdorff type output is a labeled bound: ``criterion_bound``
upper bounds, sampled quantities lower bounds.  Exact values of the distance
infima are never claimed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .compress import TruncatedSystem, pullback_state
from .errors import CertificationError, DegenerateKernelError
from .hopf import FiniteQuantumGroup, Functional, State, _maxabs, _rank, counit_state
from .lipnorm import LipValueBracket, PolyhedralSeminorm, check_invariance
from .sampling import basis_vector_state, random_selfadjoint, random_state
from .simplex import LPProblem, solve_lp

LP_TOL = 1e-9


# ---------------------------------------------------------------------------
# self-adjoint coordinates
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def sa_basis(g: FiniteQuantumGroup) -> tuple[np.ndarray, np.ndarray]:
    """(unit, quotient) real-linear basis of the self-adjoint part.

    ``quotient`` has n - 1 rows, each self-adjoint with zero invariant-state
    value, so coordinates over it parametrize the self-adjoint part modulo
    the unit direction.  Cached per algebra object.
    """
    n = g.dim
    conj_mat = g.star.T
    a_re, a_im = conj_mat.real, conj_mat.imag
    # star(x + iy) = x + iy  <=>  [[A_re - I, A_im], [A_im, -A_re - I]] [x; y] = 0
    block = np.block([[a_re - np.eye(n), a_im], [a_im, -a_re - np.eye(n)]])
    _, sv, vh = np.linalg.svd(block)
    null_mask = sv <= 1e-10 * (sv[0] if len(sv) else 1.0)
    null = vh[int(np.sum(~null_mask)):].conj()
    basis = null[:, :n] + 1j * null[:, n:]
    if basis.shape[0] != n:
        raise CertificationError(f"self-adjoint space has real dimension {basis.shape[0]}, expected {n}")
    # project out the unit direction using the invariant state, then orthonormalize
    centered = []
    for b in basis:
        b = b - complex(np.dot(g.haar, b)) * g.unit
        centered.append(b)
    centered = _real_orthonormalize(np.array(centered))
    if centered.shape[0] != n - 1:
        raise CertificationError(
            f"unit-quotient of the self-adjoint part has dimension {centered.shape[0]}, expected {n - 1}")
    return g.unit.astype(complex), centered


def _real_orthonormalize(vecs: np.ndarray) -> np.ndarray:
    out: list[np.ndarray] = []
    for v in vecs:
        w = v.copy()
        for _ in range(2):
            for q in out:
                w = w - np.real(np.vdot(q, w)) * q
        norm = np.linalg.norm(w)
        if norm > 1e-9:
            out.append(w / norm)
    return np.array(out) if out else np.zeros((0, vecs.shape[1]), dtype=complex)


# ---------------------------------------------------------------------------
# the distance LP
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MKResult:
    value: float
    element: np.ndarray          # optimizer in A-coordinates, L(element) <= 1
    lp_iterations: int
    refinement_rounds: int


def mk_distance(g: FiniteQuantumGroup, lip: PolyhedralSeminorm, mu, nu,
                lp_tol: float = LP_TOL, return_result: bool = False):
    """sup{|mu(x) - nu(x)| : L(x) <= 1} up to lp_tol, by certified LP.

    Purely polyhedral constraint families solve exactly (up to solver
    roundoff); disc constraints report the outer-approximation optimum, which
    never undershoots the supremum and exceeds it by at most a relative lp_tol.
    """
    mu_c = mu.coeffs if isinstance(mu, Functional) else np.asarray(mu, dtype=complex)
    nu_c = nu.coeffs if isinstance(nu, Functional) else np.asarray(nu, dtype=complex)
    defect = lip.kernel_rank_defect(g.dim)
    if defect > 0:
        raise DegenerateKernelError(f"seminorm kernel exceeds the scalars (rank defect {defect})")
    unit_res = lip.unit_residual(g.unit)
    if unit_res > 1e-10:
        raise CertificationError(f"seminorm family does not kill the unit (residual {unit_res:.2e})")
    unit, quotient = sa_basis(g)
    w = mu_c - nu_c

    objective = np.real(quotient @ w)
    herm_res = _maxabs(np.imag(quotient @ w))
    if herm_res > 1e-8 * max(1.0, _maxabs(w)):
        raise CertificationError(f"mu - nu is not hermitian (imaginary part {herm_res:.2e})")

    z = lip.functionals @ quotient.T                  # (m, n-1) complex constraint rows
    real_rows = np.max(np.abs(z.imag), axis=1) <= 1e-12 * np.maximum(1.0, np.max(np.abs(z), axis=1))

    cuts, bounds = [], []
    disc_angles: dict[int, list[float]] = {}
    for i in range(z.shape[0]):
        if real_rows[i]:
            cuts.append(z[i].real)
            cuts.append(-z[i].real)
            bounds.extend([lip.weights[i], lip.weights[i]])
        else:
            disc_angles[i] = [k * np.pi / 8 for k in range(16)]

    rounds = 0
    while True:
        a_mat = list(cuts)
        b_vec = list(bounds)
        for i, angles in disc_angles.items():
            for theta in angles:
                a_mat.append(np.real(np.exp(-1j * theta) * z[i]))
                b_vec.append(lip.weights[i])
        solution = solve_lp(LPProblem(objective=objective,
                                      inequalities=np.array(a_mat),
                                      bounds=np.array(b_vec)), tol=lp_tol)
        if solution.status == "unbounded":
            raise DegenerateKernelError("distance LP is unbounded; the seminorm is degenerate")
        solution.certify(tol=1e-7)
        t = solution.x
        if not disc_angles:
            break
        vals = z @ t
        ratio = max(float(np.max(np.abs(vals[i]) / lip.weights[i])) for i in disc_angles)
        upper = solution.value
        lower = solution.value / max(ratio, 1.0)
        if upper - lower <= lp_tol * max(1.0, abs(upper)):
            break
        rounds += 1
        if rounds > 80:
            raise CertificationError(f"disc refinement stalled with bracket [{lower}, {upper}]")
        for i in disc_angles:
            val = vals[i]
            if abs(val) > lip.weights[i] * (1 - 1e-12):
                disc_angles[i].append(float(np.angle(val)))

    element = quotient.T @ t
    scale = lip.value(element)
    if scale > 1.0 + 1e-9:
        element = element / scale
    value = max(solution.value, 0.0)
    if return_result:
        return MKResult(value=value, element=element, lp_iterations=solution.iterations,
                        refinement_rounds=rounds)
    return value


# ---------------------------------------------------------------------------
# the truncation bound and the criterion
# ---------------------------------------------------------------------------

def truncation_bound(g: FiniteQuantumGroup, ts: TruncatedSystem, lip: PolyhedralSeminorm,
                     density: np.ndarray, lp_tol: float = LP_TOL,
                     check_invariant: bool = True, seed: int = 0) -> float:
    """B(Lambda, phi) = 2 d^L(tau* phi, counit), the certified truncation bound."""
    if check_invariant:
        violation = check_invariance(lip, g, side="bi", samples=12, seed=seed, tol=1e-7)
        if violation > 1e-6:
            raise CertificationError(
                f"Lip-norm is not bi-invariant (sampled violation {violation:.2e})")
    pulled = pullback_state(ts, density)
    eps = counit_state(g)
    return 2.0 * mk_distance(g, lip, pulled, eps, lp_tol=lp_tol)


@dataclass(frozen=True)
class CriterionInputs:
    """Data of the two-morphism comparison criterion."""

    diam_x: float
    diam_y: float
    c_phi: float
    c_psi: float
    eps_x: float
    eps_y: float

    def __post_init__(self):
        vals = [self.diam_x, self.diam_y, self.c_phi, self.c_psi, self.eps_x, self.eps_y]
        if any(v < 0 for v in vals):
            raise ValueError("criterion inputs must be nonnegative")


def criterion_bound(c: CriterionInputs) -> float:
    """r = max over both sides of diam |1 - 1/C| + eps / C.

    Upper bounds the complete Gromov-Hausdorff distance, hence also the
    plain, quantum, matrix-level and operator distances.
    """
    if c.c_phi == 0 or c.c_psi == 0:
        raise ValueError("contraction constants must be positive")
    side_x = c.diam_x * abs(1 - 1 / c.c_phi) + c.eps_x / c.c_phi
    side_y = c.diam_y * abs(1 - 1 / c.c_psi) + c.eps_y / c.c_psi
    return max(side_x, side_y)


def admissible_sum_lipnorm(lip_x, lip_y, phi_map, psi_map, r: float, norm_x, norm_y):
    """Evaluator of L(x, y) = max{L_X(x), L_Y(y), ||y - Phi x|| / r, ||x - Psi y|| / r}."""
    if r <= 0:
        raise ValueError("the bridge parameter r must be positive")

    def evaluate(x, y) -> float:
        return max(
            lip_x(x),
            lip_y(y),
            norm_y(np.asarray(y) - np.asarray(phi_map(x))) / r,
            norm_x(np.asarray(x) - np.asarray(psi_map(y))) / r,
        )

    return evaluate


# ---------------------------------------------------------------------------
# Hausdorff estimates and diameter brackets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HausdorffEstimate:
    exact: float                 # Hausdorff distance of the finite samples
    map_bound: float | None      # max{sup d(a, f(a)), sup d(g(b), b)} when maps given


def hausdorff_estimate(set_a, set_b, dist, f=None, g=None) -> HausdorffEstimate:
    """Exact Hausdorff distance of two finite sets, plus the two-map upper bound."""
    set_a, set_b = list(set_a), list(set_b)
    if not set_a or not set_b:
        raise ValueError("both point sets must be nonempty")
    d_ab = max(min(dist(a, b) for b in set_b) for a in set_a)
    d_ba = max(min(dist(a, b) for a in set_a) for b in set_b)
    exact = max(d_ab, d_ba)
    map_bound = None
    if f is not None and g is not None:
        forward = max(dist(a, f(a)) for a in set_a)
        backward = max(dist(g(b), b) for b in set_b)
        map_bound = max(forward, backward)
    return HausdorffEstimate(exact=exact, map_bound=map_bound)


def diameter_bracket(g: FiniteQuantumGroup, lip: PolyhedralSeminorm, samples: int = 20,
                     seed: int = 0, lp_tol: float = LP_TOL) -> LipValueBracket:
    """Bracket on the diameter of the state space under d^L.

    lower: max distance over sampled state pairs (coordinate vector states
    first, then random states).  upper: twice a certified radius bound, by
    vertex enumeration of the unit ball in low dimension and by the
    coordinate-wise dual-norm box containment otherwise.
    """
    defect = lip.kernel_rank_defect(g.dim)
    if defect > 0:
        raise DegenerateKernelError(f"seminorm kernel exceeds the scalars (rank defect {defect})")
    rng = np.random.default_rng(seed)
    d0 = g.rep.shape[1]
    states: list[State] = [basis_vector_state(g, i) for i in range(min(d0, samples))]
    while len(states) < samples:
        states.append(random_state(g, rng))
    lower = 0.0
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            lower = max(lower, mk_distance(g, lip, states[i], states[j], lp_tol=lp_tol))

    unit, quotient = sa_basis(g)
    z = lip.functionals @ quotient.T
    real_ball = bool(np.all(np.max(np.abs(z.imag), axis=1)
                            <= 1e-12 * np.maximum(1.0, np.max(np.abs(z), axis=1))))
    q_dim = quotient.shape[0]
    upper = None
    method = ""
    if real_ball and q_dim <= 3 and z.shape[0] <= 60:
        vertices = _enumerate_vertices(z.real, lip.weights)
        if vertices is not None and len(vertices):
            radius = 0.0
            for t in vertices:
                mat = g.rho_of(quotient.T @ t)
                eigs = np.linalg.eigvalsh((mat + mat.conj().T) / 2)
                radius = max(radius, float(eigs[-1] - eigs[0]) / 2)
            upper = 2 * radius
            method = "sampled-pairs/vertex-enumeration"
    if upper is None:
        # box containment: |t_k| <= dual norm of the k-th coordinate functional
        radius = 0.0
        for k in range(q_dim):
            obj = np.zeros(q_dim)
            obj[k] = 1.0
            hi = _support_lp(z, lip.weights, obj, lp_tol)
            lo = _support_lp(z, lip.weights, -obj, lp_tol)
            mat = g.rho_of(quotient[k])
            eigs = np.linalg.eigvalsh((mat + mat.conj().T) / 2)
            radius += max(hi, lo) * float(eigs[-1] - eigs[0]) / 2
        upper = 2 * radius
        method = "sampled-pairs/dual-norm-box"
    upper = max(upper, lower)
    return LipValueBracket(lower=lower, upper=upper, method=method)


def _support_lp(z, weights, objective, lp_tol) -> float:
    cuts, bounds = [], []
    for i in range(z.shape[0]):
        row = z[i]
        if np.max(np.abs(row.imag)) <= 1e-12 * max(1.0, np.max(np.abs(row))):
            cuts.extend([row.real, -row.real])
            bounds.extend([weights[i], weights[i]])
        else:
            for theta in np.arange(16) * np.pi / 8:
                cuts.append(np.real(np.exp(-1j * theta) * row))
                bounds.append(weights[i])
    solution = solve_lp(LPProblem(objective=objective, inequalities=np.array(cuts),
                                  bounds=np.array(bounds)), tol=lp_tol)
    if solution.status != "optimal":
        raise DegenerateKernelError("support LP unbounded; the seminorm is degenerate")
    solution.certify(tol=1e-7)
    return float(solution.value)


def _enumerate_vertices(a: np.ndarray, b: np.ndarray):
    """All vertices of {t : a t <= b, -a t <= b} in dimension <= 3."""
    from itertools import combinations

    rows = np.vstack([a, -a])
    rhs = np.concatenate([b, b])
    m, d = rows.shape
    vertices = []
    for combo in combinations(range(m), d):
        sub = rows[list(combo)]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        t = np.linalg.solve(sub, rhs[list(combo)])
        if np.all(rows @ t <= rhs + 1e-9):
            vertices.append(t)
    return vertices


# ---------------------------------------------------------------------------
# matrix-state distances
# ---------------------------------------------------------------------------

def matrix_mk_lower_bound(g: FiniteQuantumGroup, lip: PolyhedralSeminorm, order: int,
                          mu_blocks, nu_blocks, samples: int = 100, seed: int = 0) -> float:
    """Sampled lower bound of the matrix-state distance d^{L, order}.

    mu_blocks, nu_blocks: (n, order, order) arrays of the values on the basis.
    Returns max ||mu(x) - nu(x)|| / L(x) over sampled self-adjoint elements.
    """
    if order < 1:
        raise ValueError("matrix order must be at least 1")
    mu_blocks = np.asarray(mu_blocks, dtype=complex)
    nu_blocks = np.asarray(nu_blocks, dtype=complex)
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(samples):
        x = random_selfadjoint(g, rng)
        lx = lip.value(x)
        if lx < 1e-12:
            continue
        gap = np.einsum("i,iab->ab", x, mu_blocks - nu_blocks)
        best = max(best, float(np.linalg.norm(gap, 2)) / lx)
    return best
