"""Permutation representation on C(X) and its splitting into invariant subspaces.

A generic Hermitian matrix averaged over the group commutes with every
permutation matrix; its eigenspaces are G-invariant and, generically,
minimal.
"""
from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import (ConvergenceFailure, DecompositionUnstable, LawViolation,
                     NotHermitian, NotOrthogonal)
from .perm_group import FiniteGroup, Permutation, is_transitive
from .tolerances import DEFAULT_TOL, Tolerances

log = logging.getLogger(__name__)

MAX_RESAMPLES = 5
_MASK64 = (1 << 64) - 1


def splitmix64(state: int) -> int:
    z = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, attempt: int) -> int:
    """Seed for resample number ``attempt`` (0 returns ``seed`` itself)."""
    s = seed & _MASK64
    for _ in range(attempt):
        s = splitmix64(s)
    return s


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & _MASK64))


def perm_matrix(alpha: Permutation) -> np.ndarray:
    """Matrix of ``f -> f . alpha^-1``; column y has its 1 in row ``alpha(y)``."""
    n = alpha.degree
    m = np.zeros((n, n), dtype=complex)
    m[list(alpha.images), range(n)] = 1.0
    return m


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2


def _conjugates(g: FiniteGroup, a: np.ndarray):
    """Yield ``rho(alpha) a rho(alpha)^dagger`` for every alpha, via index permutation."""
    for k in range(g.order):
        inv = g.table[g.inv(k)]
        yield a[np.ix_(inv, inv)]


def commutant_average(g: FiniteGroup, a: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if np.max(np.abs(a - a.conj().T), initial=0.0) > tol.structure:
        raise NotHermitian("input to commutant_average is not Hermitian")
    return sum(_conjugates(g, a)) / g.order


def commutation_defect(g: FiniteGroup, a: np.ndarray) -> float:
    """max over alpha of ``|rho(alpha) a - a rho(alpha)|``."""
    return max((float(np.max(np.abs(c - a), initial=0.0)) for c in _conjugates(g, a)), default=0.0)


def hermitian_eigendecomposition(b: np.ndarray, tol: Tolerances = DEFAULT_TOL):
    """Ascending real eigenvalues and orthonormal eigenvectors (as columns)."""
    b = np.asarray(b, dtype=complex)
    try:
        w, v = np.linalg.eigh(b)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    err = np.max(np.abs(b - (v * w) @ v.conj().T), initial=0.0)
    if not np.isfinite(err) or err > tol.reconstruction * max(1.0, np.max(np.abs(b), initial=0.0)):
        raise ConvergenceFailure(f"reconstruction error {err:.3e}")
    return w, v


@dataclass(frozen=True, eq=False)
class InvariantSubspace:
    group: FiniteGroup
    basis: np.ndarray  # n x d, orthonormal columns (unweighted dot product)
    projection: np.ndarray  # n x n

    @classmethod
    def from_basis(cls, group: FiniteGroup, basis) -> InvariantSubspace:
        basis = np.asarray(basis, dtype=complex).reshape(group.degree, -1)
        return cls(group, basis, basis @ basis.conj().T)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def digest(self) -> str:
        return projection_digest(self.projection)

    def check(self, tol: Tolerances = DEFAULT_TOL) -> dict:
        p, b = self.projection, self.basis
        eye = np.eye(self.dim)
        devs = {
            "projection-hermitian": (np.max(np.abs(p - p.conj().T)), tol.structure),
            "projection-idempotent": (np.max(np.abs(p @ p - p)), tol.structure),
            "projection-commutes-with-action": (commutation_defect(self.group, p), tol.structure),
            "projection-trace-equals-dim": (abs(np.trace(p) - self.dim), tol.trace),
            "basis-orthonormal": (np.max(np.abs(b.conj().T @ b - eye), initial=0.0), tol.structure),
            "projection-matches-basis": (np.max(np.abs(p - b @ b.conj().T)), tol.structure),
        }
        return {name: {"max_deviation": float(dev), "tolerance": t, "passed": bool(dev <= t)}
                for name, (dev, t) in devs.items()}

    def verify(self, tol: Tolerances = DEFAULT_TOL) -> None:
        for name, row in self.check(tol).items():
            if not row["passed"]:
                raise LawViolation(name, f"deviation {row['max_deviation']:.3e}")

    def contains(self, f, tol: Tolerances = DEFAULT_TOL) -> bool:
        f = np.asarray(f, dtype=complex)
        return float(np.max(np.abs(self.projection @ f - f), initial=0.0)) <= tol.membership

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "degree": self.degree,
            "dim": self.dim,
            "basis": [[[float(z.real), float(z.imag)] for z in row] for row in self.basis],
            "projection_sha256": self.digest,
        }

    @classmethod
    def from_json(cls, data: dict, group: FiniteGroup) -> InvariantSubspace:
        basis = np.array([[complex(re, im) for re, im in row] for row in data["basis"]],
                         dtype=complex).reshape(data["degree"], data["dim"])
        return cls.from_basis(group, basis)


def projection_digest(p: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(p, dtype=np.complex128).tobytes()).hexdigest()


def full_space(g: FiniteGroup) -> InvariantSubspace:
    return InvariantSubspace.from_basis(g, np.eye(g.degree))


def constants(g: FiniteGroup) -> InvariantSubspace:
    return InvariantSubspace.from_basis(g, np.ones((g.degree, 1)) / np.sqrt(g.degree))


def span(g: FiniteGroup, vectors) -> InvariantSubspace:
    """Subspace spanned by the given column vectors (orthonormalized, not checked for invariance)."""
    vectors = np.asarray(vectors, dtype=complex).reshape(g.degree, -1)
    u, s, _ = np.linalg.svd(vectors, full_matrices=False)
    rank = int(np.sum(s > 1e-10 * max(s.max(initial=0.0), 1.0)))
    return InvariantSubspace.from_basis(g, u[:, :rank])


def cluster_eigenvalues(w: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> list[list[int]]:
    if len(w) == 0:
        return []
    threshold = max(tol.cluster_gap, tol.cluster_gap * float(w[-1] - w[0]))
    clusters = [[0]]
    for i in range(1, len(w)):
        if w[i] - w[i - 1] > threshold:
            clusters.append([])
        clusters[-1].append(i)
    return clusters


def _split_once(g: FiniteGroup, seed: int, tol: Tolerances):
    rng = make_rng(seed)
    b = commutant_average(g, random_hermitian(rng, g.degree), tol)
    w, v = hermitian_eigendecomposition(b, tol)
    parts = [InvariantSubspace.from_basis(g, v[:, idx]) for idx in cluster_eigenvalues(w, tol)]
    failures = [name for h in parts for name, row in h.check(tol).items() if not row["passed"]]
    return parts, failures


def decompose(g: FiniteGroup, seed: int, tol: Tolerances = DEFAULT_TOL) -> list[InvariantSubspace]:
    """Split C(X) into invariant subspaces from one seeded commutant element.

    Resamples with derived seeds when an eigenspace cluster fails a subspace
    check, which happens when eigenvalues of unrelated pieces nearly collide.
    """
    if not is_transitive(g):
        log.warning("decompose: action of %r is not transitive", g)
    for attempt in range(MAX_RESAMPLES + 1):
        parts, failures = _split_once(g, derive_seed(seed, attempt), tol)
        if not failures:
            _check_completeness(parts, tol)
            return parts
        log.info("decompose: attempt %d failed %s, resampling", attempt, sorted(set(failures)))
    raise DecompositionUnstable(f"no stable split of {g!r} after {MAX_RESAMPLES} resamples")


def _check_completeness(parts: list[InvariantSubspace], tol: Tolerances) -> None:
    n = parts[0].degree
    total = sum(h.projection for h in parts)
    if sum(h.dim for h in parts) != n or np.max(np.abs(total - np.eye(n))) > tol.orthogonal_parts:
        raise LawViolation("decomposition-complete", "projections do not sum to the identity")
    for a, b in combinations(parts, 2):
        if np.max(np.abs(a.projection @ b.projection)) > tol.orthogonal_parts:
            raise LawViolation("decomposition-orthogonal", "distinct pieces are not orthogonal")


def is_irreducible(h: InvariantSubspace, trials: int = 3, seed: int = 0,
                   tol: Tolerances = DEFAULT_TOL) -> bool:
    """Schur test: every averaged Hermitian operator must act as a scalar on H."""
    rng = make_rng(seed)
    b = h.basis
    for _ in range(trials):
        avg = commutant_average(h.group, random_hermitian(rng, h.degree), tol)
        r = b.conj().T @ avg @ b
        lam = np.trace(r) / h.dim
        if np.max(np.abs(r - lam * np.eye(h.dim))) > tol.scalar:
            return False
    return True


def sum_subspaces(parts: list[InvariantSubspace], tol: Tolerances = DEFAULT_TOL) -> InvariantSubspace:
    if not parts:
        raise ValueError("sum_subspaces needs at least one part")
    g = parts[0].group
    if any(h.group is not g for h in parts):
        raise ValueError("parts belong to different groups")
    for a, b in combinations(parts, 2):
        if np.max(np.abs(a.projection @ b.projection)) > tol.orthogonal_parts:
            raise NotOrthogonal("summands are not pairwise orthogonal")
    if len(parts) == 1:
        return parts[0]
    out = InvariantSubspace.from_basis(g, np.hstack([h.basis for h in parts]))
    out.verify(tol)
    return out


def corrupt_projection(h: InvariantSubspace, i: int = 0, j: int = 1,
                       amount: float = 1e-3) -> InvariantSubspace:
    """Copy of ``h`` with one projection entry perturbed; for negative-control runs."""
    p = h.projection.copy()
    p[i % h.degree, j % h.degree] += amount
    return InvariantSubspace(h.group, h.basis, p)
