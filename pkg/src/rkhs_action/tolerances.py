"""Named numeric tolerances shared across the package."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    identity: float = 1e-12  # identities exact in exact arithmetic (measure invariance)
    structure: float = 1e-10  # projector algebra, kernel symmetry and covariance
    reproduce: float = 1e-9
    orthogonal_parts: float = 1e-9  # P_i P_j = 0 between summands
    membership: float = 1e-8  # ||Pf - f||_max for f in H
    trace: float = 1e-8  # trace(P) = dim and c = dim
    lam: float = 1e-8  # |lambda| = 1 and K_y = lambda K_x
    scalar: float = 1e-8  # Schur test in is_irreducible
    relation: float = 1e-7  # x ~ y iff |K_x(y)| >= c (1 - relation)
    orthogonal: float = 1e-8  # K_x perp K_y iff |K_x(y)| <= orthogonal * c
    rank: float = 1e-6  # s_2 <= rank * s_1 counts as rank one
    cluster_gap: float = 1e-6  # eigenvalue gap splitting clusters
    reconstruction: float = 1e-9  # eigendecomposition contract

    def replace(self, **overrides) -> Tolerances:
        names = {f.name for f in dataclasses.fields(self)}
        unknown = set(overrides) - names
        if unknown:
            raise KeyError(f"unknown tolerance name(s): {sorted(unknown)}")
        return dataclasses.replace(self, **{k: float(v) for k, v in overrides.items()})

    def as_dict(self) -> dict[str, float]:
        return dataclasses.asdict(self)


DEFAULT_TOL = Tolerances()
