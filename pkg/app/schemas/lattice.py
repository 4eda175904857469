from pydantic import BaseModel, Field, field_validator
from typing import List, Optional


class ChainHamiltonian(BaseModel):
    """Open-chain N-level Hamiltonian: diagonal*I + off_diagonal*T"""
    model_config = {"frozen": True}

    N: int = Field(..., ge=1)
    diagonal: float
    off_diagonal: float
    n: int = Field(0, ge=0)


class RingHamiltonian(BaseModel):
    """Circulant ring Hamiltonian with couplings h_0..h_{N-1}"""
    model_config = {"frozen": True}

    h: List[float] = Field(..., min_length=1)

    @property
    def N(self) -> int:
        return len(self.h)

    @field_validator("h")
    @classmethod
    def mirror_symmetric(cls, h: List[float]) -> List[float]:
        size = len(h)
        scale = max(1.0, max(abs(v) for v in h))
        for m in range(1, size):
            if abs(h[m] - h[size - m]) > 1e-12 * scale:
                raise ValueError(f"h_{m} = {h[m]} differs from h_{size - m} = {h[size - m]}")
        return h


class RingLevel(BaseModel):
    label: int
    energy: float
    partner: Optional[int] = None

    @property
    def degenerate(self) -> bool:
        return self.partner is not None
