"""Reproducing kernels of an invariant subspace H of C(X).

With the uniform measure, ``[f, n P e_x] = (P f)(x)``, so the kernel at x is
column x of ``n P``.  Everything else here checks the identities that
kernels obey.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decomposition import InvariantSubspace, make_rng, projection_digest
from .errors import (LawViolation, NonTransitive, NotInSubspace,
                     NotPairwiseOrthogonal, TrivialSubspace, WrongCount)
from .function_space import as_function, inner_product, norm_sq, random_function
from .perm_group import point_stabilizer
from .tolerances import DEFAULT_TOL, Tolerances


@dataclass(frozen=True, eq=False)
class KernelFamily:
    subspace: InvariantSubspace
    kernel_matrix: np.ndarray  # kernel_matrix[y, x] == K_x(y)
    c: float
    tol: Tolerances = field(default=DEFAULT_TOL)

    @property
    def group(self):
        return self.subspace.group

    @property
    def n(self) -> int:
        return self.kernel_matrix.shape[0]

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def kernel(self, x: int) -> np.ndarray:
        return self.kernel_matrix[:, x]

    def value(self, x: int, y: int) -> complex:
        """``K_x(y)``."""
        return complex(self.kernel_matrix[y, x])

    def random_member(self, rng: np.random.Generator) -> np.ndarray:
        return self.subspace.projection @ random_function(rng, self.n)

    def to_json(self, full: bool = False) -> dict:
        out = {"c": self.c, "dim": self.dim, "degree": self.n,
               "kernel_sha256": projection_digest(self.kernel_matrix)}
        if full:
            out["kernel_matrix"] = [[[float(z.real), float(z.imag)] for z in row]
                                    for row in self.kernel_matrix]
        return out


def _row(dev, tol, **extra) -> dict:
    dev = float(dev)
    return {"max_deviation": dev, "tolerance": tol, "passed": bool(dev <= tol), **extra}


def check_kernel_family(kf: KernelFamily) -> dict:
    """Structural laws of a kernel family (symmetry, constant positive diagonal, c = dim, K_x in H)."""
    k, tol, n = kf.kernel_matrix, kf.tol, kf.n
    p = kf.subspace.projection
    diag = np.diag(k)
    return {
        "kernel-hermitian-symmetry": _row(np.max(np.abs(k - k.conj().T)), tol.structure),
        "kernel-diagonal-constant": _row(np.max(np.abs(diag - kf.c)) / n, tol.reproduce),
        "kernel-diagonal-positive": _row(max(0.0, -kf.c), 0.0, c=kf.c),
        "c-equals-dim": _row(abs(kf.c - kf.dim), tol.trace),
        "kernels-lie-in-subspace": _row(np.max(np.abs(p @ k - k)), tol.reproduce),
    }


def kernel_family(h: InvariantSubspace, tol: Tolerances = DEFAULT_TOL,
                  check: bool = True) -> KernelFamily:
    """Kernels of ``h``; with ``check`` every structural law is enforced."""
    if h.dim == 0:
        raise TrivialSubspace("kernels need a nonzero subspace")
    n = h.degree
    k = n * h.projection
    kf = KernelFamily(h, k, float(k[0, 0].real), tol)
    if check:
        report = check_kernel_family(kf)
        if not report["kernel-diagonal-constant"]["passed"]:
            raise NonTransitive("diagonal of the projection is not constant")
        for name, row in report.items():
            if not row["passed"]:
                raise LawViolation(name, f"deviation {row['max_deviation']:.3e}")
    return kf


def _require_member(kf: KernelFamily, f: np.ndarray) -> None:
    if not kf.subspace.contains(f, kf.tol):
        raise NotInSubspace("function is not in the subspace")


def reproduce(kf: KernelFamily, f) -> np.ndarray:
    """``(1/n) sum_x f(x) K_x``, checked against f."""
    f = as_function(f)
    _require_member(kf, f)
    out = kf.kernel_matrix @ f / kf.n
    dev = np.max(np.abs(out - f), initial=0.0)
    if dev > kf.tol.reproduce:
        raise LawViolation("reproducing-formula", f"deviation {dev:.3e}")
    return out


def verify_reproduction(kf: KernelFamily) -> dict:
    """Reproducing formula and evaluation identity on a basis of H (hence on all of H)."""
    k, n, b = kf.kernel_matrix, kf.n, kf.subspace.basis
    rebuilt = k @ b / n
    # [f, K_x] for every basis f and point x, against f(x)
    evals = k.conj().T @ b / n
    return {
        "reproducing-formula": _row(np.max(np.abs(rebuilt - b)), kf.tol.reproduce),
        "evaluation-by-inner-product": _row(np.max(np.abs(evals - b)), kf.tol.reproduce),
    }


def verify_translation_laws(kf: KernelFamily) -> dict:
    """``K_{a x}(y) = K_x(a^-1 y)`` for all a, x, y and ``K_x = K_x . a`` when ``a x = x``."""
    g, k = kf.group, kf.kernel_matrix
    cov = 0.0
    stab = 0.0
    exercised = 0
    for a in range(g.order):
        images = g.table[a]
        inv = g.table[g.inv(a)]
        cov = max(cov, float(np.max(np.abs(k[:, images] - k[inv, :]))))
    for x in range(kf.n):
        for a in point_stabilizer(g, x):
            exercised += 1
            stab = max(stab, float(np.max(np.abs(k[g.table[a], x] - k[:, x]))))
    return {
        "kernel-covariance": _row(cov, kf.tol.structure),
        "kernel-stabilizer-invariance": _row(stab, kf.tol.structure, tuples=exercised),
    }


def verify_basic_kernel_lemmas(kf: KernelFamily, trials: int = 3, seed: int = 0) -> dict:
    """Norm and bound of kernels, orthogonality versus vanishing, and the residual law."""
    n, c, k, tol = kf.n, kf.c, kf.kernel_matrix, kf.tol
    norms = np.sum(np.abs(k) ** 2, axis=0) / n
    rng = make_rng(seed)
    eval_dev = resid_dev = 0.0
    mismatches = 0
    for _ in range(trials):
        f = kf.random_member(rng)
        scale = max(1.0, float(np.max(np.abs(f))))
        zero = tol.reproduce * scale
        for x in range(n):
            kx = k[:, x]
            ip = inner_product(f, kx)
            eval_dev = max(eval_dev, abs(ip - f[x]))
            h = f - f[x] / c * kx
            r = inner_product(h, kx)
            resid_dev = max(resid_dev, abs(r))
            for u, u_ip in ((f, ip), (h, r)):
                if (abs(u_ip) <= zero) != (abs(u[x]) <= zero):
                    mismatches += 1
    return {
        "kernel-norm-equals-c": _row(np.max(np.abs(norms - c)), tol.reproduce),
        "kernel-bounded-by-c": _row(max(0.0, float(np.max(np.abs(k))) - c), tol.reproduce),
        "evaluation-by-inner-product": _row(eval_dev, tol.reproduce),
        "orthogonal-iff-vanishing": _row(mismatches, 0, counted_as="mismatches"),
        "residual-orthogonal-to-kernel": _row(resid_dev, tol.reproduce),
    }


def projection_extremality(kf: KernelFamily, f, x: int):
    """Projection of f onto span{K_x}, and whether
    ``f = (f(x)/c) K_x  <=>  ||f||^2 = |f(x)|^2 / c`` holds for this f."""
    f = as_function(f)
    _require_member(kf, f)
    tol = kf.tol.reproduce
    pi_f = f[x] / kf.c * kf.kernel(x)
    rest = f - pi_f
    total = norm_sq(f)
    pyth = abs(total - norm_sq(pi_f) - norm_sq(rest))
    if pyth > tol:
        raise LawViolation("pythagoras", f"deviation {pyth:.3e}")
    is_multiple = float(np.max(np.abs(rest), initial=0.0)) <= tol
    norm_attained = abs(total - abs(f[x]) ** 2 / kf.c) <= tol
    return pi_f, is_multiple == norm_attained


def orthogonal_kernel_expansion(kf: KernelFamily, points, f) -> np.ndarray:
    """``sum_i (f(x_i)/c) K_{x_i}`` over an orthogonal kernel basis given by ``points``."""
    points = [int(p) for p in points]
    f = as_function(f)
    c, tol = kf.c, kf.tol
    if len(points) != kf.dim:
        raise WrongCount(f"{len(points)} points given for a subspace of dim {kf.dim}")
    cols = kf.kernel_matrix[:, points]
    gram = kf.kernel_matrix[np.ix_(points, points)]
    off = gram - np.diag(np.diag(gram))
    if np.max(np.abs(off), initial=0.0) > tol.orthogonal * c:
        raise NotPairwiseOrthogonal("kernels at the given points are not pairwise orthogonal")
    if np.linalg.matrix_rank(cols, tol=tol.rank * c) != len(points):
        raise LawViolation("orthogonal-kernels-independent", "kernel columns are rank deficient")
    squares = np.sum(np.abs(cols) ** 2, axis=1)
    dev = np.max(np.abs(squares - c * c))
    if dev > tol.membership:
        raise LawViolation("kernel-sum-of-squares", f"deviation {dev:.3e}")
    out = cols @ (f[points] / c)
    if kf.subspace.contains(f, tol):
        dev = np.max(np.abs(out - f), initial=0.0)
        if dev > tol.membership:
            raise LawViolation("orthogonal-kernel-expansion", f"deviation {dev:.3e}")
    return out
