"""Command-line front end.

Exit codes: 0 success, 1 a checked identity failed, 2 bad input or any
other hard error.  Conjecture counterexamples are findings and exit 0.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .conjectures import ConjectureReport, run_probes
from .decomposition import corrupt_projection, decompose, is_irreducible
from .errors import RKHSError
from .instances import MAX_K, POLICIES, build_subspace, instance_label, selectors_for_policy
from .kernels import kernel_family
from .perm_group import FiniteGroup, is_transitive, load_generators, named_group
from .pipeline import SUITES, suite_status, verify_group, verify_subspace
from .tolerances import DEFAULT_TOL, Tolerances

log = logging.getLogger("rkhs_action")

EXIT_OK, EXIT_LAW, EXIT_ERROR = 0, 1, 2


@dataclass
class ExperimentConfig:
    instances: list[str] = field(default_factory=list)  # family keys or "file:<path>"
    subspace_policy: str = "each-minimal"
    k: int = 1
    seed: Optional[int] = None
    tolerances: dict = field(default_factory=dict)
    output_dir: str = "rkhs_out"
    corrupt_projection: Optional[list] = None  # [i, j, amount]; negative-control hook

    def validate(self) -> None:
        if self.seed is None:
            raise ValueError("a seed is required")
        if self.subspace_policy not in POLICIES:
            raise ValueError(f"unknown subspace policy {self.subspace_policy!r}")
        if self.subspace_policy == "all-sums-up-to-k" and not 1 <= self.k <= MAX_K:
            raise ValueError(f"k must be between 1 and {MAX_K}")

    @property
    def tol(self) -> Tolerances:
        return DEFAULT_TOL.replace(**self.tolerances)

    @classmethod
    def from_json(cls, data: dict) -> ExperimentConfig:
        return cls(**data)


def load_group(spec: str) -> FiniteGroup:
    if spec.startswith("file:"):
        return load_generators(spec[len("file:"):])
    return named_group(spec)


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    with os.fdopen(fd, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


class _Instance:
    """One group with its decomposition and the policy's subspaces."""

    def __init__(self, spec: str, cfg: ExperimentConfig):
        self.group = load_group(spec)
        if not self.group.name:
            self.group.name = spec
        self.tol = cfg.tol
        self.pieces = decompose(self.group, cfg.seed, self.tol)
        self.selectors = selectors_for_policy(len(self.pieces), cfg.subspace_policy, cfg.k)
        self.seed = cfg.seed
        self.corrupt = cfg.corrupt_projection

    def subspace(self, selector: str):
        h = build_subspace(self.group, selector, self.seed, self.tol, self.pieces)
        if self.corrupt:
            i, j, amount = self.corrupt
            h = corrupt_projection(h, int(i), int(j), float(amount))
        return h


def _load_instances(cfg: ExperimentConfig) -> list[_Instance]:
    return [_Instance(spec, cfg) for spec in cfg.instances]


def cmd_decompose(cfg: ExperimentConfig, out=None) -> int:
    out = out or sys.stdout
    rows = []
    for i, inst in enumerate(_load_instances(cfg)):
        g = inst.group
        subspaces = []
        for s, h in enumerate(inst.pieces):
            entry = h.to_json()
            entry["index"] = s
            entry["invariance"] = h.check(inst.tol)
            entry["irreducible"] = is_irreducible(h, trials=3, seed=cfg.seed, tol=inst.tol)
            subspaces.append(entry)
        rows.append({"instance": i, "group": g.name, "degree": g.degree, "order": g.order,
                     "transitive": is_transitive(g), "subspaces": subspaces})
        print(f"{i} {g.name}: order {g.order}, dims {[h.dim for h in inst.pieces]}", file=out)
    _write_atomic(Path(cfg.output_dir) / "subspaces.json",
                  _dumps({"seed": cfg.seed, "instances": rows}))
    return EXIT_OK


def cmd_verify(cfg: ExperimentConfig, out=None) -> int:
    out = out or sys.stdout
    outdir = Path(cfg.output_dir)
    matrix = []
    any_failed = False
    for i, inst in enumerate(_load_instances(cfg)):
        group_report = verify_group(inst.group, cfg.seed, inst.tol)
        for s, selector in enumerate(inst.selectors):
            report = verify_subspace(inst.subspace(selector), cfg.seed, inst.tol)
            report["laws"].update(group_report["laws"])
            report["failed"] = sorted(set(report["failed"]) | set(group_report["failed"]))
            report["passed"] = not report["failed"]
            report.update(instance=i, subspace=s, label=instance_label(inst.group, selector))
            _write_atomic(outdir / f"verify_{i}_{s}.json", _dumps(report))
            any_failed |= not report["passed"]
            matrix.append(report)

    columns = ("invariance",) + SUITES
    print("instance/subspace".ljust(40) + " ".join(c[:6].ljust(6) for c in columns), file=out)
    for report in matrix:
        status = suite_status(report)
        cells = ["PASS" if status.get(c, True) else "FAIL" for c in columns]
        print(report["label"].ljust(40) + " ".join(c.ljust(6) for c in cells), file=out)
        if report["failed"]:
            print("  violated: " + ", ".join(report["failed"]), file=out)
    return EXIT_LAW if any_failed else EXIT_OK


def cmd_conjectures(cfg: ExperimentConfig, out=None) -> int:
    out = out or sys.stdout
    reports: list[ConjectureReport] = []
    for inst in _load_instances(cfg):
        for selector in inst.selectors:
            kf = kernel_family(inst.subspace(selector), inst.tol)
            reports.extend(run_probes(kf, instance_label(inst.group, selector)))
    outdir = Path(cfg.output_dir)
    _write_atomic(outdir / "conjectures.jsonl",
                  "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in reports))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["instance", "conjecture", "status", "witness_count"])
    for r in reports:
        writer.writerow([r.instance_id, r.conjecture_id, r.status, len(r.witnesses)])
    _write_atomic(outdir / "summary.csv", buf.getvalue())
    counts: dict[tuple[str, str], int] = {}
    for r in reports:
        counts[(r.conjecture_id, r.status)] = counts.get((r.conjecture_id, r.status), 0) + 1
    for (cid, status), count in sorted(counts.items()):
        print(f"{cid:40s} {status:22s} {count}", file=out)
    return EXIT_OK


COMMANDS = {"decompose": cmd_decompose, "verify": cmd_verify, "conjectures": cmd_conjectures}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rkhs-action",
        description="Kernels of invariant subspaces of finite group actions.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON file mirroring ExperimentConfig")
        p.add_argument("--family", action="append", default=[],
                       help="named group, e.g. cyclic:4, dihedral:4, symmetric:3, regular:symmetric:3")
        p.add_argument("--generators", action="append", default=[],
                       help="generator file: degree line, then one [i0,...] per line")
        p.add_argument("--policy", choices=POLICIES)
        p.add_argument("--k", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--out")
        for tname in DEFAULT_TOL.as_dict():
            p.add_argument(f"--tol-{tname.replace('_', '-')}", dest=f"tol_{tname}", type=float)
        p.add_argument("--corrupt-projection", help=argparse.SUPPRESS)
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def config_from_args(args) -> ExperimentConfig:
    if args.config:
        cfg = ExperimentConfig.from_json(json.loads(Path(args.config).read_text()))
    else:
        cfg = ExperimentConfig()
    cfg.instances = list(cfg.instances) + args.family + [f"file:{p}" for p in args.generators]
    if args.policy:
        cfg.subspace_policy = args.policy
    if args.k is not None:
        cfg.k = args.k
    if args.seed is not None:
        cfg.seed = args.seed
    if args.out:
        cfg.output_dir = args.out
    overrides = {name: getattr(args, f"tol_{name}") for name in DEFAULT_TOL.as_dict()
                 if getattr(args, f"tol_{name}") is not None}
    cfg.tolerances = {**cfg.tolerances, **overrides}
    if args.corrupt_projection:
        i, j, *amount = args.corrupt_projection.split(",")
        cfg.corrupt_projection = [int(i), int(j), float(amount[0]) if amount else 1e-3]
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        return COMMANDS[args.command](cfg)
    except (RKHSError, ValueError, KeyError, OSError, TypeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
