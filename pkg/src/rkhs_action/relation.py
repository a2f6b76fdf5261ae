"""The relation x ~ y (kernels are scalar multiples) and relation stabilizers.

``related`` tests ``|K_x(y)| >= c (1 - tol)``; the other characterizations
are recomputed independently only inside ``verify_tfaemain``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import (ClosureViolation, LawViolation, NotASubgroup, NotRelated,
                     TransitivityViolation)
from .kernels import KernelFamily
from .perm_group import (Subgroup, are_conjugate_subgroups, conjugate_subgroup,
                         is_transitive, point_stabilizer, subgroup_normalizer)


def related_matrix(kf: KernelFamily) -> np.ndarray:
    """Boolean matrix ``R[x, y] = x ~ y``."""
    return np.abs(kf.kernel_matrix.T) >= kf.c * (1 - kf.tol.relation)


def related(kf: KernelFamily, x: int, y: int) -> bool:
    return abs(kf.value(x, y)) >= kf.c * (1 - kf.tol.relation)


def lambda_of(kf: KernelFamily, x: int, y: int) -> complex:
    """The unimodular scalar with ``K_y = lambda K_x``."""
    if not related(kf, x, y):
        raise NotRelated(f"{x} and {y} are not related")
    lam = kf.value(y, x) / kf.c
    tol = kf.tol.lam
    dev = float(np.max(np.abs(kf.kernel(y) - lam * kf.kernel(x))))
    if dev > tol * max(1.0, kf.c):
        raise LawViolation("kernel-scalar-multiple", f"K_{y} - lambda K_{x} = {dev:.3e}")
    if abs(abs(lam) - 1) > tol:
        raise LawViolation("lambda-unimodular", f"|lambda({x},{y})| = {abs(lam)!r}")
    return lam


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class EquivalencePartition:
    classes: tuple[tuple[int, ...], ...]
    lambda_table: dict = field(default_factory=dict)  # (x, y) -> lambda with K_y = lambda K_x

    def class_of(self, x: int) -> tuple[int, ...]:
        for cls in self.classes:
            if x in cls:
                return cls
        raise KeyError(x)

    def to_json(self) -> dict:
        return {
            "classes": [list(cls) for cls in self.classes],
            "lambda": [[x, y, float(lam.real), float(lam.imag)]
                       for (x, y), lam in sorted(self.lambda_table.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> EquivalencePartition:
        return cls(tuple(tuple(c) for c in data["classes"]),
                   {(x, y): complex(re, im) for x, y, re, im in data["lambda"]})


def equivalence_partition(kf: KernelFamily) -> EquivalencePartition:
    r = related_matrix(kf)
    n = kf.n
    if not np.array_equal(r, r.T):
        raise TransitivityViolation("numeric relation is not symmetric")
    if not r.diagonal().all():
        raise TransitivityViolation("numeric relation is not reflexive")
    uf = _UnionFind(n)
    for x, y in zip(*np.nonzero(r)):
        uf.union(int(x), int(y))
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(uf.find(x), []).append(x)
    classes = tuple(tuple(members) for _, members in sorted(groups.items()))
    for cls in classes:
        for x, y in product(cls, repeat=2):
            if not r[x, y]:
                raise TransitivityViolation(f"{x} and {y} share a class but are not related")
    lambdas = {(x, y): lambda_of(kf, x, y) for cls in classes for x, y in product(cls, repeat=2)}
    for (x, y), lam in lambdas.items():
        if abs(lam * lambdas[(y, x)] - 1) > kf.tol.lam:
            raise LawViolation("lambda-inverse", f"lambda({x},{y}) lambda({y},{x}) != 1")
    return EquivalencePartition(classes, lambdas)


@dataclass(frozen=True)
class RelationStabilizer:
    base_point: int
    subgroup: Subgroup

    def to_json(self) -> dict:
        return {"base_point": self.base_point, "members": list(self.subgroup.members)}


def _stabilizer_members(kf: KernelFamily, r: np.ndarray, x: int) -> list[int]:
    return np.flatnonzero(r[kf.group.table[:, x], x]).tolist()


def relation_stabilizer(kf: KernelFamily, x: int) -> RelationStabilizer:
    """``E(x) = {gamma : gamma x ~ x}``, with closure verified."""
    members = [a for a in range(kf.group.order)
               if related(kf, kf.group.act(a, x), x)]
    return RelationStabilizer(x, _as_subgroup(kf, members, x))


def _as_subgroup(kf, members, x) -> Subgroup:
    try:
        return Subgroup(kf.group, tuple(members))
    except NotASubgroup:
        raise ClosureViolation(f"E({x}) = {members} is not closed") from None


@dataclass
class RelationTables:
    """Relation matrix, every E(x) and every N_G(E(x)), computed once."""
    related: np.ndarray
    stabilizers: list[Subgroup]
    normalizers: list[Subgroup]

    @classmethod
    def build(cls, kf: KernelFamily) -> RelationTables:
        r = related_matrix(kf)
        stabs = [_as_subgroup(kf, _stabilizer_members(kf, r, x), x) for x in range(kf.n)]
        norms = [subgroup_normalizer(kf.group, e) for e in stabs]
        return cls(r, stabs, norms)


def _law(violations: int, tuples: int, **extra) -> dict:
    return {"passed": violations == 0, "violations": violations, "tuples": tuples,
            "vacuous": tuples == 0, **extra}


def verify_partition(kf: KernelFamily) -> dict:
    """Reflexive, symmetric, transitive; unimodular and mutually inverse lambdas."""
    r = related_matrix(kf)
    n = kf.n
    reflexive = int(n - r.diagonal().sum())
    symmetric = int(np.sum(r != r.T))
    transitive = int(np.sum((r.astype(int) @ r.astype(int) > 0) & ~r))
    lam_bad = 0
    pairs = 0
    for x, y in zip(*np.nonzero(r)):
        pairs += 1
        try:
            lam = lambda_of(kf, int(x), int(y))
            back = lambda_of(kf, int(y), int(x))
            if abs(lam * back - 1) > kf.tol.lam:
                lam_bad += 1
        except (LawViolation, NotRelated):
            lam_bad += 1
    return {
        "relation-reflexive": _law(reflexive, n),
        "relation-symmetric": _law(symmetric, n * n),
        "relation-transitive": _law(transitive, n * n),
        "lambda-unimodular": _law(lam_bad, pairs),
    }


def verify_tfaemain(kf: KernelFamily) -> dict:
    """Evaluate the four characterizations of x ~ y independently on every pair."""
    k, c, tol, g = kf.kernel_matrix, kf.c, kf.tol, kf.group
    r = related_matrix(kf)
    absk = np.abs(k)
    rows = []
    for x, y in product(range(kf.n), repeat=2):
        s = np.linalg.svd(k[:, [x, y]], compute_uv=False)
        a = bool(s[1] <= tol.rank * s[0])
        b = bool(r[g.table[:, x], g.table[:, y]].all())
        # |K_z(x)| = |K_z(y)| for all z: rows x and y of |K|
        cz = bool(np.max(np.abs(absk[x, :] - absk[y, :])) <= tol.relation * c)
        d = bool(abs(k[y, x]) >= c * (1 - tol.relation))
        if len({a, b, cz, d}) > 1:
            rows.append({"x": x, "y": y, "a": a, "b": b, "c": cz, "d": d})
    return {"four-way-equivalence": _law(len(rows), kf.n ** 2, disagreements=rows)}


def verify_kernel_equality_corollary(kf: KernelFamily) -> dict:
    k, c, tol = kf.kernel_matrix, kf.c, kf.tol.lam
    bad = []
    for x, y in product(range(kf.n), repeat=2):
        value_is_c = abs(k[y, x] - c) <= tol
        same = float(np.max(np.abs(k[:, x] - k[:, y]))) <= tol
        if value_is_c != same:
            bad.append([x, y])
    return {"kernel-value-c-iff-equal": _law(len(bad), kf.n ** 2, pairs=bad)}


def verify_class_nontriviality(kf: KernelFamily, tables: RelationTables | None = None) -> dict:
    """Class sizes against relation-stabilizer orders.

    ``|[x]| > 1  =>  |E(x)| > 1`` always holds.  The converse needs a free
    action: E(x) contains the point stabilizer, so on a non-free action E(x)
    can be nontrivial while every class is a singleton.  The identity that
    holds in general is ``|[x]| = [E(x) : G_x]``, since ``[x]`` is the orbit
    of x under E(x).  The literal biconditional is enforced only for free
    actions and reported (``literal_holds``) otherwise.
    """
    g = kf.group
    tables = tables or RelationTables.build(kf)
    part = equivalence_partition(kf)
    class_size = [len(part.class_of(x)) for x in range(kf.n)]
    stab_size = [e.order for e in tables.stabilizers]
    point_stab = [point_stabilizer(g, x).order for x in range(kf.n)]
    free = all(s == 1 for s in point_stab)
    forward = sum(cs > 1 and es == 1 for cs, es in zip(class_size, stab_size))
    literal = sum((cs > 1) != (es > 1) for cs, es in zip(class_size, stab_size))
    index = sum(cs * ps != es for cs, ps, es in zip(class_size, point_stab, stab_size))
    dichotomy = len({cs > 1 for cs in class_size}) > 1
    equal_sizes = len(set(class_size)) > 1
    return {
        "class-nontrivial-implies-stabilizer-nontrivial": _law(forward, kf.n),
        "class-nontrivial-iff-stabilizer-nontrivial": {
            **_law(literal if free else 0, kf.n if free else 0),
            "free_action": free, "literal_holds": literal == 0,
            "class_sizes": class_size, "stabilizer_orders": stab_size},
        "class-size-equals-stabilizer-index": _law(index, kf.n, point_stabilizer_orders=point_stab),
        "class-nontriviality-dichotomy": _law(int(dichotomy), 1),
        "classes-equal-size": _law(int(equal_sizes), 1),
    }


def verify_stabilizer_laws(kf: KernelFamily, tables: RelationTables | None = None) -> dict:
    g = kf.group
    tables = tables or RelationTables.build(kf)
    r, stabs = tables.related, tables.stabilizers
    sets = [e.member_set for e in stabs]
    n = kf.n

    # x ~ y implies E(x) = E(y); only x != y counts as a non-vacuous tuple
    thm_bad = thm_n = 0
    for x, y in product(range(n), repeat=2):
        if x != y and r[x, y]:
            thm_n += 1
            thm_bad += sets[x] != sets[y]

    mem_bad = conj_bad = 0
    for x, beta in product(range(n), range(g.order)):
        bx = g.act(beta, x)
        mem_bad += (beta in sets[x]) != (beta in sets[bx])
        conj_bad += conjugate_subgroup(g, stabs[x], beta).member_set != sets[bx]

    prop_bad = prop_n = 0
    incl_bad = 0
    for x, alpha in product(range(n), range(g.order)):
        ax = g.act(alpha, x)
        ainv = g.inv(alpha)
        hyp = sets[ax] <= sets[x]
        incl_bad += hyp != (sets[x] <= sets[g.act(ainv, x)])
        if not hyp:
            continue
        for beta in stabs[ax]:
            prop_n += 1
            binv = g.inv(beta)
            aba = g.conj(alpha, beta)
            ok = (aba in sets[ax]
                  and g.mul(aba, binv) in sets[ax]
                  and g.mul(g.mul(binv, ainv), g.mul(beta, alpha)) in sets[x])
            prop_bad += not ok

    return {
        "related-points-share-stabilizer": _law(thm_bad, thm_n),
        "stabilizer-membership-transport": _law(mem_bad, n * g.order),
        "stabilizer-conjugation": _law(conj_bad, n * g.order),
        "conjugation-and-commutator-inheritance": _law(prop_bad, prop_n),
        "stabilizer-inclusion-symmetry": _law(incl_bad, n * g.order),
    }


def verify_normalizer_laws(kf: KernelFamily, tables: RelationTables | None = None) -> dict:
    g = kf.group
    tables = tables or RelationTables.build(kf)
    r, stabs, norms = tables.related, tables.stabilizers, tables.normalizers
    n = kf.n
    nsets = [h.member_set for h in norms]

    mem_bad = conj_bad = 0
    for x, beta in product(range(n), range(g.order)):
        bx = g.act(beta, x)
        mem_bad += (beta in nsets[x]) != (beta in nsets[bx])
        conj_bad += conjugate_subgroup(g, norms[x], beta).member_set != nsets[bx]

    conj_stab_bad = conj_norm_bad = 0
    witnesses = []
    for x, y in product(range(n), repeat=2):
        w1 = are_conjugate_subgroups(g, stabs[x], stabs[y])
        w2 = are_conjugate_subgroups(g, norms[x], norms[y])
        conj_stab_bad += w1 is None
        conj_norm_bad += w2 is None
        witnesses.append([x, y, w1, w2])

    lem_bad = 0
    for x, alpha in product(range(n), range(g.order)):
        lem_bad += (stabs[g.act(alpha, x)] == stabs[x]) != (alpha in nsets[x])

    self_norm = [stabs[x] == norms[x] for x in range(n)]
    all_self = all(self_norm)
    pointwise = [all(r[x, y] for y in range(n) if stabs[x] == stabs[y]) for x in range(n)]
    converse_all = all(pointwise)
    thm_bad = sum(s != all_self for s in self_norm) + (converse_all != all_self)
    thm_bad += sum(p != s for p, s in zip(pointwise, self_norm))

    return {
        "normalizer-membership-transport": _law(mem_bad, n * g.order),
        "normalizer-conjugation": _law(conj_bad, n * g.order),
        "stabilizers-conjugate": _law(conj_stab_bad, n * n, witnesses=witnesses),
        "normalizers-conjugate": _law(conj_norm_bad, n * n),
        "same-stabilizer-iff-normalizer": _law(lem_bad, n * g.order),
        "self-normalizing-equivalence": _law(thm_bad, n, self_normalizing=self_norm,
                                             converse_holds=converse_all),
    }


def verify_relation_suite(kf: KernelFamily) -> dict:
    """Every relation law; a transitive action is required."""
    if not is_transitive(kf.group):
        raise ValueError("relation laws need a transitive action")
    tables = RelationTables.build(kf)
    out = {}
    out.update(verify_partition(kf))
    out.update(verify_tfaemain(kf))
    out.update(verify_kernel_equality_corollary(kf))
    out.update(verify_class_nontriviality(kf, tables))
    out.update(verify_stabilizer_laws(kf, tables))
    out.update(verify_normalizer_laws(kf, tables))
    return out
