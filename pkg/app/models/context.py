import math
from dataclasses import dataclass


@dataclass(frozen=True)
class SemiclassicalContext:
    """Units and harmonic-well parameters shared by all semiclassical quantities"""
    hbar: float
    m: float
    omega: float
    a: float
    x1: float
    N: int
    V0: float

    @property
    def l(self) -> float:
        return math.sqrt(self.hbar / (self.m * self.omega))

    @property
    def a_over_l(self) -> float:
        return self.a / self.l

    @property
    def hbar_omega(self) -> float:
        return self.hbar * self.omega

    def E_n0(self, n: int) -> float:
        """Harmonic level V0 + (n + 1/2) hbar omega"""
        return self.V0 + (n + 0.5) * self.hbar * self.omega

    def well_center(self, j: int) -> float:
        return self.x1 + j * self.a
