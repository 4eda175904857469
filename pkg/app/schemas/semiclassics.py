from pydantic import BaseModel, Field, model_validator
from typing import List, Optional, Dict


class HoppingFactors(BaseModel):
    """Tunneling factors of one band, computed from the first-cell barrier"""
    n: int
    x_left: float
    x_right: float
    action_left: float
    action_right: float
    action_total: float
    eps_L: float
    eps_R: float
    N_L: float
    N_R: float

    @model_validator(mode="after")
    def positive_factors(self):
        if self.eps_L <= 0 or self.eps_R <= 0 or self.N_R <= 0:
            raise ValueError("tunneling factors must be positive")
        return self


class BandResult(BaseModel):
    n: int = Field(..., ge=0)
    N: int = Field(..., ge=1)
    E_n0: float
    Delta_n: float
    hbar_omega: float
    delta_n_shift: List[float]
    energies: List[float]
    bloch_phases: List[float]
    coefficients: List[List[float]]

    @property
    def width(self) -> float:
        return max(self.energies) - min(self.energies)


class EllipticAction(BaseModel):
    n: int
    q_ratio: float
    phi_m: float
    elliptic: float
    asymptotic: float
    turning_point_offset: Optional[float] = None

    @property
    def relative_gap(self) -> float:
        return abs(self.elliptic - self.asymptotic) / abs(self.elliptic)


class DiagnosticsReport(BaseModel):
    periodicity_violation: float
    a_over_l: float
    delta_shift: Dict[int, float] = {}
    flags: List[str] = []

    @property
    def ok(self) -> bool:
        return not self.flags
