from pydantic import BaseModel
from typing import List, Optional


class LevelResidual(BaseModel):
    index: int
    s: int
    fd_energy: float
    predicted: float
    residual: float
    convergence_estimate: float


class VerificationReport(BaseModel):
    n: int
    N: int
    levels: List[LevelResidual]
    predicted_delta: Optional[float] = None
    fitted_delta: Optional[float] = None
    ratio: Optional[float] = None
    correlation: Optional[float] = None
    gap_over_width: Optional[float] = None
    boundary_amplitude: float
    failures: List[str] = []

    @property
    def passed(self) -> bool:
        return not self.failures
