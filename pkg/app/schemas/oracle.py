from pydantic import BaseModel, Field, model_validator
from typing import List, Tuple


class OracleSpectrum(BaseModel):
    eigenvalues: List[float]
    grid_points: int
    grid_spacing: float
    domain: Tuple[float, float]
    convergence_estimate: List[float]
    boundary_amplitude: float = 0.0
    boundary_contaminated: bool = False

    @model_validator(mode="after")
    def sorted_and_estimated(self):
        if any(b < a for a, b in zip(self.eigenvalues, self.eigenvalues[1:])):
            raise ValueError("eigenvalues must be sorted ascending")
        if len(self.convergence_estimate) != len(self.eigenvalues):
            raise ValueError("one convergence estimate per eigenvalue is required")
        return self


class MathieuCharacteristics(BaseModel):
    q: float
    a_values: List[float]
    b_values: List[float] = Field(..., description="b_1, b_2, ...")
    basis_size: int
    band_widths: List[float]
    convergence_delta: float = 0.0
    convention: str = "standard"
