"""Run every identity check on one (group, subspace) instance and collect a report."""
from __future__ import annotations

from .conjectures import DEFAULT_SEARCH_CAP, search_orthogonal_kernel_basis
from .decomposition import InvariantSubspace, make_rng
from .errors import LawViolation, RKHSError
from .function_space import verify_invariance_lemma
from .kernels import (KernelFamily, check_kernel_family, kernel_family,
                      orthogonal_kernel_expansion, projection_extremality,
                      verify_basic_kernel_lemmas, verify_reproduction,
                      verify_translation_laws)
from .perm_group import FiniteGroup
from .relation import (RelationTables, equivalence_partition,
                       verify_relation_suite)
from .tolerances import DEFAULT_TOL, Tolerances

SUITES = ("subspace", "kernel", "reproduction", "translation", "lemmas",
          "extremality", "expansion", "relation")


def _failed(law: str, message: str) -> dict:
    return {law: {"passed": False, "error": message}}


def _extremality_suite(kf: KernelFamily, seed: int) -> dict:
    rng = make_rng(seed)
    bad = 0
    tuples = 0
    for x in range(kf.n):
        for f in (kf.random_member(rng), kf.kernel(x)):
            _, holds = projection_extremality(kf, f, x)
            tuples += 1
            bad += not holds
    return {"norm-attained-iff-kernel-multiple": {"passed": bad == 0, "violations": bad,
                                                  "tuples": tuples}}


def _expansion_suite(kf: KernelFamily, seed: int) -> dict:
    if kf.dim > DEFAULT_SEARCH_CAP:
        return {"orthogonal-kernel-expansion": {"passed": True, "vacuous": True,
                                                "reason": "dim above search cap"}}
    points = search_orthogonal_kernel_basis(kf, 0)
    if points is None:
        return {"orthogonal-kernel-expansion": {"passed": True, "vacuous": True,
                                                "reason": "no orthogonal kernel basis"}}
    rng = make_rng(seed)
    for f in (kf.random_member(rng), kf.kernel(0)):
        orthogonal_kernel_expansion(kf, points, f)
    return {"orthogonal-kernel-expansion": {"passed": True, "vacuous": False, "points": points}}


def verify_subspace(h: InvariantSubspace, seed: int, tol: Tolerances = DEFAULT_TOL) -> dict:
    """All subspace, kernel and relation laws for ``h``.

    Law failures become report rows; a failing suite does not stop the
    others.  The returned dict has ``laws`` (suite -> law -> row) and
    ``failed`` (sorted failing law names).
    """
    laws: dict[str, dict] = {}
    extras: dict = {"dim": h.dim}
    laws["subspace"] = h.check(tol)
    try:
        kf = kernel_family(h, tol, check=False)
    except RKHSError as exc:
        laws["kernel"] = _failed(getattr(exc, "law", "kernel-family"), str(exc))
        return _finish(laws, extras)
    extras["kernel"] = kf.to_json()

    suites = {
        "kernel": lambda: check_kernel_family(kf),
        "reproduction": lambda: verify_reproduction(kf),
        "translation": lambda: verify_translation_laws(kf),
        "lemmas": lambda: verify_basic_kernel_lemmas(kf, trials=3, seed=seed),
        "extremality": lambda: _extremality_suite(kf, seed),
        "expansion": lambda: _expansion_suite(kf, seed),
        "relation": lambda: verify_relation_suite(kf),
    }
    for name, run in suites.items():
        try:
            laws[name] = run()
        except LawViolation as exc:
            laws[name] = _failed(exc.law, str(exc))
        except RKHSError as exc:
            laws[name] = _failed(f"{name}-suite", f"{type(exc).__name__}: {exc}")
    try:
        extras["partition"] = equivalence_partition(kf).to_json()
        extras["relation_stabilizers"] = [list(e.members)
                                          for e in RelationTables.build(kf).stabilizers]
    except RKHSError:
        pass
    return _finish(laws, extras)


def _finish(laws: dict, extras: dict) -> dict:
    failed = sorted(law for suite in laws.values() for law, row in suite.items()
                    if not row["passed"])
    return {**extras, "laws": laws, "failed": failed, "passed": not failed}


def verify_group(g: FiniteGroup, seed: int, tol: Tolerances = DEFAULT_TOL) -> dict:
    laws = verify_invariance_lemma(g, trials=3, seed=seed, tol=tol.identity)
    failed = sorted(k for k, row in laws.items() if not row["passed"])
    return {"laws": {"invariance": laws}, "failed": failed, "passed": not failed}


def suite_status(report: dict) -> dict[str, bool]:
    return {name: all(row["passed"] for row in rows.values())
            for name, rows in report["laws"].items()}

