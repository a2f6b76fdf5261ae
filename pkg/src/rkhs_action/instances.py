"""Selecting invariant subspaces of a group action by name.

Selectors are short strings so they can travel through configs and reports:

``full``            all of C(X)
``constants``       the constant functions
``pieces:i+j+...``  sum of pieces ``i, j, ...`` of ``decompose(g, seed)``
"""
from __future__ import annotations

from itertools import combinations
from typing import Optional

import numpy as np

from .decomposition import (InvariantSubspace, constants, decompose, full_space,
                            sum_subspaces)
from .perm_group import FiniteGroup
from .tolerances import DEFAULT_TOL, Tolerances

POLICIES = ("each-minimal", "all-sums-up-to-k", "full-space")
MAX_K = 4


def pieces_selector(indices) -> str:
    return "pieces:" + "+".join(str(i) for i in sorted(indices))


def parse_selector(selector: str) -> tuple[str, tuple[int, ...]]:
    if selector in ("full", "constants"):
        return selector, ()
    head, _, rest = selector.partition(":")
    if head != "pieces" or not rest:
        raise ValueError(f"bad subspace selector {selector!r}")
    try:
        return head, tuple(int(i) for i in rest.split("+"))
    except ValueError:
        raise ValueError(f"bad subspace selector {selector!r}") from None


def build_subspace(g: FiniteGroup, selector: str, seed: int,
                   tol: Tolerances = DEFAULT_TOL,
                   pieces: Optional[list[InvariantSubspace]] = None) -> InvariantSubspace:
    kind, idx = parse_selector(selector)
    if kind == "full":
        return full_space(g)
    if kind == "constants":
        return constants(g)
    if pieces is None:
        pieces = decompose(g, seed, tol)
    if any(i < 0 or i >= len(pieces) for i in idx):
        raise ValueError(f"selector {selector!r} out of range for {len(pieces)} pieces")
    return sum_subspaces([pieces[i] for i in idx], tol)


def selectors_for_policy(n_pieces: int, policy: str, k: int = 1) -> list[str]:
    if policy == "each-minimal":
        return [pieces_selector([i]) for i in range(n_pieces)]
    if policy == "all-sums-up-to-k":
        if not 1 <= k <= MAX_K:
            raise ValueError(f"k must be between 1 and {MAX_K}")
        return [pieces_selector(c) for size in range(1, min(k, n_pieces) + 1)
                for c in combinations(range(n_pieces), size)]
    if policy == "full-space":
        return ["full"]
    raise ValueError(f"unknown subspace policy {policy!r}")


def instance_label(g: FiniteGroup, selector: str) -> str:
    return f"{g.name or repr(g)}/{selector}"


def piece_containing(pieces: list[InvariantSubspace], f, tol: Tolerances = DEFAULT_TOL) -> int:
    """Index of the piece that contains ``f``."""
    for i, h in enumerate(pieces):
        if h.contains(f, tol):
            return i
    raise ValueError("no piece contains the given function")


def character(n: int, j: int) -> np.ndarray:
    """``k -> exp(2 pi i j k / n)`` on the points of a cyclic action."""
    return np.exp(2j * np.pi * j * np.arange(n) / n)
