"""Probes for three open questions about kernels of group actions.

Each probe scans one instance exhaustively and reports either a
counterexample (with witnesses that can be re-checked on their own) or
``confirmed-on-instance``.  Nothing here claims a conjecture is proven.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Optional

from .errors import RKHSError, SearchCapExceeded
from .kernels import KernelFamily
from .relation import RelationTables, related
from .perm_group import Subgroup, is_transitive, subgroup_intersection

log = logging.getLogger(__name__)

POSITIVE_IMPLIES_RELATED = "positive-implies-related"
ORTHOGONAL_IFF_TRIVIAL = "orthogonal-iff-trivial-intersection"
ORTHOGONAL_BASIS = "orthogonal-kernel-basis"
CONJECTURES = (POSITIVE_IMPLIES_RELATED, ORTHOGONAL_IFF_TRIVIAL, ORTHOGONAL_BASIS)

CONFIRMED = "confirmed-on-instance"
COUNTEREXAMPLE = "counterexample"
INCONCLUSIVE = "inconclusive"

DEFAULT_SEARCH_CAP = 12


@dataclass
class ConjectureReport:
    conjecture_id: str
    instance_id: str
    status: str
    witnesses: list = field(default_factory=list)
    thresholds: dict = field(default_factory=dict)
    reason: str = ""

    def __post_init__(self):
        if self.status == COUNTEREXAMPLE and not self.witnesses:
            raise ValueError("a counterexample needs at least one witness")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> ConjectureReport:
        return cls(**data)


def _thresholds(kf: KernelFamily) -> dict:
    return {"relation": kf.tol.relation, "orthogonal": kf.tol.orthogonal}


def is_orthogonal(kf: KernelFamily, x: int, y: int) -> bool:
    return abs(kf.value(x, y)) <= kf.tol.orthogonal * kf.c


def positive_implies_related_sides(kf: KernelFamily, x: int, y: int) -> tuple[bool, bool]:
    """(``|K_x(y)| > 0``, ``x ~ y``) at the probe thresholds."""
    return not is_orthogonal(kf, x, y), related(kf, x, y)


def probe_positive_implies_related(kf: KernelFamily, instance_id: str = "") -> ConjectureReport:
    witnesses = []
    for x in range(kf.n):
        for y in range(x + 1, kf.n):
            positive, rel = positive_implies_related_sides(kf, x, y)
            if positive and not rel:
                witnesses.append({"x": x, "y": y, "ratio": abs(kf.value(x, y)) / kf.c})
    status = COUNTEREXAMPLE if witnesses else CONFIRMED
    return ConjectureReport(POSITIVE_IMPLIES_RELATED, instance_id, status, witnesses,
                            _thresholds(kf))


def orthogonality_sides(kf: KernelFamily, x: int, y: int,
                        stabilizers: Optional[list[Subgroup]] = None) -> tuple[bool, bool, int]:
    """(``K_x perp K_y``, ``E(x) & E(y) = {e}``, order of the intersection)."""
    if stabilizers is None:
        stabilizers = RelationTables.build(kf).stabilizers
    meet = subgroup_intersection(stabilizers[x], stabilizers[y])
    return is_orthogonal(kf, x, y), meet.is_trivial(), meet.order


def probe_orthogonality_conjecture(kf: KernelFamily, instance_id: str = "") -> ConjectureReport:
    """Scan distinct pairs for failures of ``K_x perp K_y <=> E(x) & E(y) = {e}``."""
    if not is_transitive(kf.group):
        raise ValueError("orthogonality probe needs a transitive action")
    stabs = RelationTables.build(kf).stabilizers
    witnesses = []
    for x in range(kf.n):
        for y in range(x + 1, kf.n):
            orth, trivial, meet = orthogonality_sides(kf, x, y, stabs)
            if orth != trivial:
                witnesses.append({"x": x, "y": y, "abs_kernel": abs(kf.value(x, y)),
                                  "orthogonal": orth, "intersection_order": meet})
    status = COUNTEREXAMPLE if witnesses else CONFIRMED
    return ConjectureReport(ORTHOGONAL_IFF_TRIVIAL, instance_id, status, witnesses,
                            _thresholds(kf))


def search_orthogonal_kernel_basis(kf: KernelFamily, x: int,
                                   cap: int = DEFAULT_SEARCH_CAP) -> Optional[list[int]]:
    """Lexicographically first ``[x, x_2 < ... < x_d]`` with pairwise orthogonal kernels."""
    d = kf.dim
    if d > cap:
        raise SearchCapExceeded(f"dim {d} exceeds search cap {cap}")
    n = kf.n
    orth = [[is_orthogonal(kf, a, b) for b in range(n)] for a in range(n)]
    candidates = [y for y in range(n) if y != x and orth[x][y]]
    chosen = [x]

    def extend(start: int) -> bool:
        if len(chosen) == d:
            return True
        for i in range(start, len(candidates)):
            y = candidates[i]
            if all(orth[y][z] for z in chosen):
                chosen.append(y)
                if extend(i + 1):
                    return True
                chosen.pop()
        return False

    return list(chosen) if extend(0) else None


def probe_orthogonal_basis(kf: KernelFamily, instance_id: str = "",
                           cap: int = DEFAULT_SEARCH_CAP) -> ConjectureReport:
    witnesses = []
    found = {}
    for x in range(kf.n):
        basis = search_orthogonal_kernel_basis(kf, x, cap)
        if basis is None:
            witnesses.append({"x": x, "dim": kf.dim})
        else:
            found[x] = basis
    status = COUNTEREXAMPLE if witnesses else CONFIRMED
    if status == CONFIRMED:
        witnesses = [{"x": x, "basis": b} for x, b in found.items()]
    return ConjectureReport(ORTHOGONAL_BASIS, instance_id, status, witnesses, _thresholds(kf))


def revalidate(kf: KernelFamily, report: ConjectureReport) -> bool:
    """Re-evaluate both sides on every counterexample witness; True if each still fails."""
    if report.status != COUNTEREXAMPLE:
        return True
    for w in report.witnesses:
        x = w["x"]
        if report.conjecture_id == POSITIVE_IMPLIES_RELATED:
            positive, rel = positive_implies_related_sides(kf, x, w["y"])
            if not (positive and not rel):
                return False
        elif report.conjecture_id == ORTHOGONAL_IFF_TRIVIAL:
            orth, trivial, _ = orthogonality_sides(kf, x, w["y"])
            if orth == trivial:
                return False
        elif search_orthogonal_kernel_basis(kf, x) is not None:
            return False
    return True


def run_probes(kf: KernelFamily, instance_id: str) -> list[ConjectureReport]:
    out = []
    for probe in (probe_positive_implies_related, probe_orthogonality_conjecture,
                  probe_orthogonal_basis):
        try:
            out.append(probe(kf, instance_id))
        except (RKHSError, ValueError) as exc:
            cid = {probe_positive_implies_related: POSITIVE_IMPLIES_RELATED,
                   probe_orthogonality_conjecture: ORTHOGONAL_IFF_TRIVIAL,
                   probe_orthogonal_basis: ORTHOGONAL_BASIS}[probe]
            out.append(ConjectureReport(cid, instance_id, INCONCLUSIVE, reason=str(exc)))
    return out


def run_conjecture_suite(instances, seed: int) -> list[ConjectureReport]:
    """Run all probes on each ``(group, selector)`` pair, in order.

    See ``instances.build_subspace`` for selector syntax.  Failures while
    building an instance become ``inconclusive`` rows.
    """
    from .instances import build_subspace, instance_label
    from .kernels import kernel_family

    reports = []
    for group, selector in instances:
        label = instance_label(group, selector)
        try:
            kf = kernel_family(build_subspace(group, selector, seed))
        except (RKHSError, ValueError) as exc:
            log.warning("instance %s failed: %s", label, exc)
            reports.extend(ConjectureReport(cid, label, INCONCLUSIVE, reason=str(exc))
                           for cid in CONJECTURES)
            continue
        reports.extend(run_probes(kf, label))
    return reports
