"""Problem definition shared by the dispersion and oracle solvers."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .angular import AngularSector, SpinorType


class BoundaryCondition(Enum):
    APS_MINUS = "aps"
    APS_PLUS = "aps+"
    CHIRAL_BAG = "chiral"


@dataclass(frozen=True)
class ProblemSpec:
    bc: BoundaryCondition
    sector: AngularSector
    R: float = 1.0
    chiral_lambda: float = 0.0

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError("R must be positive")
        if not isinstance(self.bc, BoundaryCondition):
            object.__setattr__(self, "bc", BoundaryCondition(self.bc))

    @property
    def is_phi(self) -> bool:
        return self.sector.spinor_type is SpinorType.PHI

    def with_type(self, spinor_type: SpinorType) -> "ProblemSpec":
        return ProblemSpec(self.bc, self.sector.with_type(spinor_type), self.R, self.chiral_lambda)

    def with_lambda(self, lam: float) -> "ProblemSpec":
        return ProblemSpec(self.bc, self.sector, self.R, lam)
