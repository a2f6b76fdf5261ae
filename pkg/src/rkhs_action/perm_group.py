"""Finite permutation groups acting on ``{0, ..., n-1}``.

Groups are enumerated in full (no stabilizer chains), so every query is a
scan over the element list.  Composition follows the left-action
convention ``(a * b)(x) = a(b(x))``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (CapExceeded, InvalidPermutation, NotASubgroup,
                     ParentMismatch, UnknownFamily)

DEFAULT_CAP = 10_000
_TABLE_LIMIT = 1500  # build a full multiplication table only below this order


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise InvalidPermutation(f"not a bijection on 0..{len(images) - 1}: {list(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Permutation:
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, tuple(cycle[1:]) + (cycle[0],)):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise InvalidPermutation("degree mismatch in composition")
        return Permutation(tuple(self.images[i] for i in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __str__(self):
        return "[" + ",".join(map(str, self.images)) + "]"


class FiniteGroup:
    """A permutation group with its complete, ordered element list.

    Elements are addressed by their index in ``elements``; most operations
    in this package take and return indices.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 elements: Sequence[Permutation], name: str = ""):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.name = name
        self._index = {p.images: i for i, p in enumerate(self.elements)}
        self.identity_index = self._index[tuple(range(degree))]
        # row i holds the images of element i
        self.table = np.array([p.images for p in self.elements], dtype=np.intp).reshape(
            len(self.elements), degree)
        self._inv = tuple(self._index[p.inverse().images] for p in self.elements)

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"FiniteGroup({label}degree={self.degree}, order={self.order})"

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, p: Permutation | Sequence[int]) -> int:
        images = p.images if isinstance(p, Permutation) else tuple(p)
        return self._index[images]

    def __contains__(self, p) -> bool:
        images = p.images if isinstance(p, Permutation) else tuple(p)
        return images in self._index

    @cached_property
    def _mul_table(self) -> Optional[np.ndarray]:
        if self.order > _TABLE_LIMIT:
            return None
        out = np.empty((self.order, self.order), dtype=np.intp)
        for i in range(self.order):
            prods = self.table[i][self.table]  # row j: images of element_i * element_j
            for j in range(self.order):
                out[i, j] = self._index[tuple(prods[j])]
        return out

    def mul(self, i: int, j: int) -> int:
        table = self._mul_table
        if table is not None:
            return int(table[i, j])
        return self._index[tuple(self.table[i][self.table[j]])]

    def inv(self, i: int) -> int:
        return self._inv[i]

    def conj(self, b: int, h: int) -> int:
        """Index of ``b h b^-1``."""
        return self.mul(self.mul(b, h), self._inv[b])

    def act(self, i: int, x: int) -> int:
        return int(self.table[i, x])

    def orbit(self, x: int) -> list[int]:
        return sorted(set(self.table[:, x].tolist()))

    def is_abelian(self) -> bool:
        return all(self.mul(i, j) == self.mul(j, i)
                   for i in range(self.order) for j in range(i + 1, self.order))


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(int(m) for m in self.members)))
        object.__setattr__(self, "members", members)
        if not is_closed(self.parent, members):
            raise NotASubgroup(f"index set {list(members)} is not a subgroup")

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __len__(self):
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return i in self.member_set

    def __iter__(self):
        return iter(self.members)

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def issubset(self, other: Subgroup) -> bool:
        _same_parent(self, other)
        return self.member_set <= other.member_set

    def __repr__(self):
        return f"Subgroup(order={self.order}, members={list(self.members)})"


def is_closed(g: FiniteGroup, members: Iterable[int]) -> bool:
    """True iff the index set contains e and is closed under products and inverses."""
    ms = set(members)
    if g.identity_index not in ms:
        return False
    for a in ms:
        if g.inv(a) not in ms:
            return False
        for b in ms:
            if g.mul(a, b) not in ms:
                return False
    return True


def _same_parent(h1: Subgroup, h2: Subgroup) -> None:
    if h1.parent is not h2.parent:
        raise ParentMismatch("subgroups belong to different groups")


def _as_permutation(p, degree: int) -> Permutation:
    if not isinstance(p, Permutation):
        p = Permutation(tuple(p))
    if p.degree != degree:
        raise InvalidPermutation(f"generator {p} has degree {p.degree}, expected {degree}")
    return p


def group_from_generators(degree: int, generators: Iterable, cap: int = DEFAULT_CAP,
                          name: str = "") -> FiniteGroup:
    """Enumerate the closure of ``generators``.

    Elements are listed in breadth-first order by word length, each layer
    sorted lexicographically by image array.
    """
    gens = [_as_permutation(p, degree) for p in generators]
    e = Permutation.identity(degree)
    seen = {e.images}
    elements = [e]
    frontier = [e]
    while frontier:
        fresh = set()
        for h in frontier:
            for s in gens:
                p = s * h
                if p.images not in seen and p.images not in fresh:
                    fresh.add(p.images)
                    if len(seen) + len(fresh) > cap:
                        raise CapExceeded(f"group order exceeds cap {cap}")
        frontier = [Permutation(images) for images in sorted(fresh)]
        seen.update(fresh)
        elements.extend(frontier)
    return FiniteGroup(degree, gens, elements, name=name)


def is_transitive(g: FiniteGroup) -> bool:
    return len(g.orbit(0)) == g.degree


def trivial_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, (g.identity_index,))


def whole_group(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, tuple(range(g.order)))


def point_stabilizer(g: FiniteGroup, x: int) -> Subgroup:
    return Subgroup(g, tuple(np.flatnonzero(g.table[:, x] == x).tolist()))


def conjugate_subgroup(g: FiniteGroup, h: Subgroup, beta: int) -> Subgroup:
    """``beta H beta^-1``; ``beta`` is an element index."""
    return Subgroup(g, tuple(g.conj(beta, m) for m in h.members))


def subgroup_normalizer(g: FiniteGroup, h: Subgroup) -> Subgroup:
    target = h.member_set
    members = [b for b in range(g.order)
               if all(g.conj(b, m) in target for m in h.members)]
    return Subgroup(g, tuple(members))


def are_conjugate_subgroups(g: FiniteGroup, h1: Subgroup, h2: Subgroup) -> Optional[int]:
    """First element index ``b`` (in element order) with ``b h1 b^-1 = h2``, else None."""
    _same_parent(h1, h2)
    if h1.order != h2.order:
        return None
    target = h2.member_set
    for b in range(g.order):
        if all(g.conj(b, m) in target for m in h1.members):
            return b
    return None


def subgroup_intersection(h1: Subgroup, h2: Subgroup) -> Subgroup:
    _same_parent(h1, h2)
    return Subgroup(h1.parent, tuple(h1.member_set & h2.member_set))


def left_cosets(g: FiniteGroup, h: Subgroup) -> list[tuple[int, ...]]:
    """Left cosets ``aH``, ordered by their smallest element index."""
    assigned = set()
    cosets = []
    for a in range(g.order):
        if a in assigned:
            continue
        coset = tuple(sorted(g.mul(a, m) for m in h.members))
        assigned.update(coset)
        cosets.append(coset)
    return cosets


def coset_action(g: FiniteGroup, h: Subgroup, name: str = "") -> FiniteGroup:
    """The transitive action of ``g`` on the left cosets of ``h``."""
    cosets = left_cosets(g, h)
    where = {a: k for k, coset in enumerate(cosets) for a in coset}
    gens = []
    for s in g.generators:
        si = g.index(s)
        gens.append(Permutation(tuple(where[g.mul(si, coset[0])] for coset in cosets)))
    return group_from_generators(len(cosets), gens, name=name)


# named families ---------------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    gens = [] if n == 1 else [tuple((i + 1) % n for i in range(n))]
    return group_from_generators(n, gens, name=f"cyclic:{n}")


def dihedral(n: int) -> FiniteGroup:
    gens = [] if n == 1 else [tuple((i + 1) % n for i in range(n)),
                              tuple((-i) % n for i in range(n))]
    return group_from_generators(n, gens, name=f"dihedral:{n}")


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        gens = []
    else:
        gens = [Permutation.from_cycles(n, (0, 1)).images,
                tuple((i + 1) % n for i in range(n))]
    return group_from_generators(n, gens, name=f"symmetric:{n}")


_FAMILIES = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}


def named_group(spec: str) -> FiniteGroup:
    """Build a group from a key such as ``cyclic:4`` or ``regular:symmetric:3``."""
    head, _, rest = spec.partition(":")
    if head == "regular":
        if not rest:
            raise UnknownFamily(f"bad group key {spec!r}: regular needs a family")
        base = named_group(rest)
        return coset_action(base, trivial_subgroup(base), name=spec)
    if head not in _FAMILIES:
        raise UnknownFamily(f"unknown group family {head!r} in key {spec!r}")
    try:
        n = int(rest)
    except ValueError:
        raise UnknownFamily(f"bad group key {spec!r}: size must be an integer") from None
    if n < 1:
        raise UnknownFamily(f"bad group key {spec!r}: size must be positive")
    return _FAMILIES[head](n)


def parse_generators(text: str, name: str = "") -> FiniteGroup:
    """Parse the text format: degree on the first line, then one ``[i0,...]`` per line."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InvalidPermutation("empty generator file")
    degree = int(lines[0])
    gens = [json.loads(ln) for ln in lines[1:]]
    return group_from_generators(degree, gens, name=name)


def load_generators(path: str | Path) -> FiniteGroup:
    path = Path(path)
    return parse_generators(path.read_text(), name=f"file:{path.name}")


def format_generators(g: FiniteGroup) -> str:
    return "\n".join([str(g.degree)] + [str(s) for s in g.generators]) + "\n"
