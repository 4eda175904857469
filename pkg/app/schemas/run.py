import math

from pydantic import BaseModel, Field, model_validator
from typing import List, Literal, Optional, Tuple

from app.config import FD_PADDING_LENGTHS, DISPERSION_K_POINTS, MAX_BAND_INDEX
from app.schemas.potential import PotentialSpec, CosineSpec, ParabolicChainSpec

Command = Literal["bands", "dispersion", "mathieu", "ring", "verify"]
Convention = Literal["natural", "mathieu"]


class RunConfig(BaseModel):
    """Validated configuration of a single command run"""
    model_config = {"extra": "forbid"}

    command: Command
    potential: Optional[PotentialSpec] = None
    wells: Optional[int] = Field(None, ge=1)
    n: Optional[int] = Field(None, ge=0, le=MAX_BAND_INDEX)
    bands: List[int] = Field(default_factory=lambda: [0])

    # Units
    hbar: float = Field(1.0, gt=0)
    mass: Optional[float] = Field(None, gt=0)
    scale_convention: Optional[Convention] = None

    # Numerics
    grid: Optional[int] = Field(None, ge=64)
    tol: Optional[float] = Field(None, gt=0)
    padding: float = Field(FD_PADDING_LENGTHS, gt=0)
    k_points: int = Field(DISPERSION_K_POINTS, ge=2)
    max_order: Optional[int] = Field(None, ge=0)
    basis: Optional[int] = Field(None, ge=3)

    # Ring couplings
    h: Optional[List[float]] = None
    h0: Optional[float] = None
    h1: Optional[float] = None
    chain_heuristic: bool = False

    # Output
    out: Optional[str] = None
    format: Literal["csv", "json"] = "csv"

    @property
    def convention(self) -> Convention:
        if self.scale_convention is not None:
            return self.scale_convention
        return "mathieu" if self.command == "mathieu" else "natural"

    def units(self) -> Tuple[float, float]:
        """(hbar, mass) for the active unit convention"""
        if self.convention == "mathieu":
            # hbar^2 / (2 m l_c^2) = 1
            return self.hbar, self.hbar ** 2 / (2.0 * self.potential.lc ** 2)
        if self.mass is not None:
            return self.hbar, self.mass
        if isinstance(self.potential, ParabolicChainSpec):
            return self.hbar, self.potential.mass
        return self.hbar, 1.0

    @model_validator(mode="after")
    def required_for_command(self):
        needs_potential = self.command in ("bands", "dispersion", "verify", "mathieu")
        if needs_potential and self.potential is None:
            raise ValueError(f"command '{self.command}' requires a potential")
        if self.command in ("bands", "dispersion") and self.n is None:
            raise ValueError(f"command '{self.command}' requires the band index n")
        if self.convention == "mathieu":
            if not isinstance(self.potential, CosineSpec):
                raise ValueError("the mathieu unit convention needs a cosine potential (it fixes m from l_c)")
            if self.mass is not None:
                raise ValueError("--mass conflicts with the mathieu unit convention")
        if isinstance(self.potential, ParabolicChainSpec) and self.mass is not None:
            if not math.isclose(self.mass, self.potential.mass, rel_tol=1e-12):
                raise ValueError(f"mass {self.mass} conflicts with the parabolic-chain mass {self.potential.mass}")
        if any(b < 0 for b in self.bands):
            raise ValueError("band indices must be non-negative")
        if self.command == "ring":
            if self.h is None and not self.chain_heuristic and (self.h0 is None or self.h1 is None):
                raise ValueError("ring needs --h, or --h0 and --h1, or --chain-heuristic")
            if self.h is None and self.wells is None:
                raise ValueError("ring needs the ring size (--wells) unless --h is given")
            if self.h is None and self.wells is not None and self.wells < 2:
                raise ValueError("a ring needs at least two sites")
            if self.chain_heuristic and (self.potential is None or self.n is None):
                raise ValueError("--chain-heuristic needs a potential and the band index n")
        return self
