from pydantic import BaseModel, Field, field_validator, model_validator
from typing import List, Literal, Optional, Union, Annotated


class PotentialSpecBase(BaseModel):
    model_config = {"extra": "forbid", "frozen": True}


class CosineSpec(PotentialSpecBase):
    """V(x) = 2q cos(2x/l_c); minima at odd multiples of (pi/2) l_c, period pi l_c"""
    family: Literal["cosine"] = "cosine"
    q: float = Field(..., gt=0, description="Half the barrier height (energy)")
    lc: float = Field(1.0, gt=0, description="Length scale l_c")
    wells: int = Field(2, ge=1, description="Number of wells in the window")
    offset: int = Field(0, description="First minimum at (2*offset+1)*pi*l_c/2")


class ParabolicChainSpec(PotentialSpecBase):
    """V(x) = V0 + m omega^2 d(x)^2 / 2, d the distance to the nearest well center"""
    family: Literal["parabolic-chain"] = "parabolic-chain"
    v0: float = 0.0
    omega: float = Field(..., gt=0)
    a: float = Field(..., gt=0, description="Period")
    x1: float = 0.0
    wells: int = Field(2, ge=1)
    mass: float = Field(1.0, gt=0, description="Mass entering m omega^2")


class TabulatedSpec(PotentialSpecBase):
    """Sampled potential, interpolated linearly (order 1) or by cubic spline (order 3)"""
    family: Literal["tabulated"] = "tabulated"
    x: List[float] = Field(..., min_length=4)
    v: List[float] = Field(..., min_length=4)
    order: Literal[1, 3] = 3

    @field_validator("x")
    @classmethod
    def strictly_increasing(cls, x: List[float]) -> List[float]:
        if any(b <= a for a, b in zip(x, x[1:])):
            raise ValueError("tabulated x values must be strictly increasing")
        return x

    @model_validator(mode="after")
    def matching_lengths(self):
        if len(self.x) != len(self.v):
            raise ValueError(f"x has {len(self.x)} samples but v has {len(self.v)}")
        return self


PotentialSpec = Annotated[
    Union[CosineSpec, ParabolicChainSpec, TabulatedSpec],
    Field(discriminator="family"),
]


class TableSource(BaseModel):
    """Tabulated potential given by a two-column CSV path instead of inline samples"""
    model_config = {"extra": "forbid"}

    family: Literal["tabulated"] = "tabulated"
    table: str
    order: Literal[1, 3] = 3
    wells: Optional[int] = None
