"""Complex functions on a finite set X with the uniform invariant measure.

A function on X is a complex numpy vector; slot ``i`` holds the value at
point ``i``.  The measure gives every point weight ``1/n``.
"""
from __future__ import annotations

import numpy as np

from .errors import DegreeMismatch, LengthMismatch
from .perm_group import FiniteGroup, Permutation, is_transitive


def as_function(values) -> np.ndarray:
    return np.asarray(values, dtype=complex)


def measure_weight(n: int) -> float:
    return 1.0 / n


def integrate(f) -> complex:
    f = as_function(f)
    return complex(f.sum() / f.size)


def inner_product(f, g) -> complex:
    """``(1/n) sum_i f(i) conj(g(i))``."""
    f, g = as_function(f), as_function(g)
    if f.shape != g.shape:
        raise LengthMismatch(f"lengths {f.size} and {g.size} differ")
    return complex(np.vdot(g, f) / f.size)


def norm_sq(f) -> float:
    f = as_function(f)
    return float(np.vdot(f, f).real / f.size)


def translate(f, alpha: Permutation) -> np.ndarray:
    """``x -> f(alpha x)``."""
    f = as_function(f)
    if alpha.degree != f.size:
        raise DegreeMismatch(f"function on {f.size} points, permutation of degree {alpha.degree}")
    return f[list(alpha.images)]


def random_function(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def verify_invariance_lemma(g: FiniteGroup, trials: int = 4, seed: int = 0,
                            tol: float = 1e-12) -> dict:
    """Check measure invariance and both unitarity identities on random data.

    For every group element a and ``trials`` random pairs (f, h):
    ``[f.a, h.a] = [f, h]`` and ``[f.a, h] = [f, h.a^-1]``, plus
    ``sum f(a x) = sum f(x)``.
    """
    if not is_transitive(g):
        raise ValueError("group action is not transitive")
    rng = np.random.default_rng(seed)
    n = g.degree
    dev_measure = dev_pair = dev_adjoint = 0.0
    for _ in range(trials):
        f = random_function(rng, n)
        h = random_function(rng, n)
        base = inner_product(f, h)
        for a, alpha in enumerate(g.elements):
            a_inv = g.elements[g.inv(a)]
            fa = translate(f, alpha)
            dev_measure = max(dev_measure, abs(integrate(fa) - integrate(f)))
            dev_pair = max(dev_pair, abs(inner_product(fa, translate(h, alpha)) - base))
            dev_adjoint = max(dev_adjoint,
                              abs(inner_product(fa, h) - inner_product(f, translate(h, a_inv))))
    laws = {
        "measure-invariance": dev_measure,
        "translation-preserves-inner-product": dev_pair,
        "translation-adjoint": dev_adjoint,
    }
    return {name: {"max_deviation": dev, "tolerance": tol, "passed": dev <= tol}
            for name, dev in laws.items()}


def function_to_json(f) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in as_function(f)]


def function_from_json(data) -> np.ndarray:
    return np.array([complex(re, im) for re, im in data], dtype=complex)
