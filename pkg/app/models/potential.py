import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Tuple, Union

import numpy as np
from scipy.interpolate import CubicSpline

from app.config import TURNING_POINT_SCAN
from app.middleware.error import DomainError, ValidationFailure

ArrayLike = Union[float, np.ndarray]


def _as_output(values: np.ndarray, scalar: bool) -> ArrayLike:
    return float(values) if scalar else values


class PotentialModel(ABC):
    """A finite periodic N-well potential with quadratic minima at x1 + j*a"""

    family: str = ""

    @property
    @abstractmethod
    def period(self) -> float:
        ...

    @property
    @abstractmethod
    def first_minimum(self) -> float:
        ...

    @property
    @abstractmethod
    def wells(self) -> int:
        ...

    @abstractmethod
    def _formula(self, x: np.ndarray) -> np.ndarray:
        """V on the window (no domain check)"""

    @abstractmethod
    def _periodic_formula(self, x: np.ndarray) -> np.ndarray:
        """The fully periodic continuation V_p"""

    @abstractmethod
    def curvature(self) -> float:
        """V'' at the well minimum"""

    @property
    def bound_mass(self) -> Optional[float]:
        """Mass fixed by the potential's own parameters, if any"""
        return None

    def harmonic_frequency(self, mass: float) -> float:
        return math.sqrt(self.curvature() / mass)

    @property
    def minima(self) -> np.ndarray:
        return self.first_minimum + self.period * np.arange(self.wells)

    @property
    def window(self) -> Tuple[float, float]:
        a = self.period
        return (self.first_minimum - 0.5 * a,
                self.first_minimum + (self.wells - 1) * a + 0.5 * a)

    @property
    def minimum_value(self) -> float:
        return float(self._formula(np.asarray(self.first_minimum, dtype=float)))

    def evaluate(self, x: ArrayLike) -> ArrayLike:
        scalar = np.ndim(x) == 0
        xs = np.asarray(x, dtype=float)
        lo, hi = self.window
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))
        if np.any(xs < lo - slack) or np.any(xs > hi + slack):
            raise DomainError(
                f"x outside the {self.family} window [{lo}, {hi}]",
                detail={"window": [lo, hi]},
            )
        return _as_output(self._formula(xs), scalar)

    def periodic(self, x: ArrayLike) -> ArrayLike:
        scalar = np.ndim(x) == 0
        return _as_output(self._periodic_formula(np.asarray(x, dtype=float)), scalar)

    def padded(self, x: ArrayLike) -> ArrayLike:
        """V held at its window-edge value outside the window"""
        scalar = np.ndim(x) == 0
        lo, hi = self.window
        return _as_output(self._formula(np.clip(np.asarray(x, dtype=float), lo, hi)), scalar)

    def barrier_top(self) -> Tuple[float, float]:
        x_top = self.first_minimum + 0.5 * self.period
        return x_top, float(self._periodic_formula(np.asarray(x_top)))


@dataclass(frozen=True)
class CosinePotential(PotentialModel):
    q: float
    lc: float = 1.0
    n_wells: int = 2
    offset: int = 0
    family: str = field(default="cosine", init=False)

    @property
    def period(self) -> float:
        return math.pi * self.lc

    @property
    def first_minimum(self) -> float:
        return (2 * self.offset + 1) * 0.5 * math.pi * self.lc

    @property
    def wells(self) -> int:
        return self.n_wells

    def _formula(self, x):
        return 2.0 * self.q * np.cos(2.0 * x / self.lc)

    def _periodic_formula(self, x):
        return self._formula(x)

    def curvature(self) -> float:
        return 8.0 * self.q / self.lc ** 2

    @property
    def minimum_value(self) -> float:
        return -2.0 * self.q

    def barrier_top(self) -> Tuple[float, float]:
        return self.first_minimum + 0.5 * self.period, 2.0 * self.q


@dataclass(frozen=True)
class ParabolicChainPotential(PotentialModel):
    omega: float
    a: float
    x1: float = 0.0
    v0: float = 0.0
    n_wells: int = 2
    mass: float = 1.0
    family: str = field(default="parabolic-chain", init=False)

    @property
    def period(self) -> float:
        return self.a

    @property
    def first_minimum(self) -> float:
        return self.x1

    @property
    def wells(self) -> int:
        return self.n_wells

    def _distance(self, x):
        half = 0.5 * self.a
        return np.abs(np.mod(x - self.x1 + half, self.a) - half)

    def _formula(self, x):
        return self.v0 + 0.5 * self.mass * self.omega ** 2 * self._distance(x) ** 2

    def _periodic_formula(self, x):
        return self._formula(x)

    def curvature(self) -> float:
        return self.mass * self.omega ** 2

    @property
    def bound_mass(self) -> Optional[float]:
        return self.mass

    def harmonic_frequency(self, mass: float) -> float:
        return self.omega


@dataclass(frozen=True, eq=False)
class TabulatedPotential(PotentialModel):
    x: np.ndarray
    v: np.ndarray
    order: int = 3
    family: str = field(default="tabulated", init=False)

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "v", np.asarray(self.v, dtype=float))
        if np.any(np.diff(self.x) <= 0):
            raise ValidationFailure("tabulated x values must be strictly increasing")

    @cached_property
    def _spline(self):
        return CubicSpline(self.x, self.v) if self.order == 3 else None

    def _interpolate(self, x):
        if self._spline is not None:
            return self._spline(x)
        return np.interp(x, self.x, self.v)

    @cached_property
    def _minima(self) -> np.ndarray:
        interior = (self.x[0], self.x[-1])
        if self._spline is not None:
            candidates = self._spline.derivative().roots(extrapolate=False)
            curv = self._spline.derivative(2)(candidates)
            found = candidates[(curv > 0) & (candidates > interior[0]) & (candidates < interior[1])]
        else:
            v = self.v
            idx = np.where((v[1:-1] < v[:-2]) & (v[1:-1] < v[2:]))[0] + 1
            found = self.x[idx]
        return np.unique(np.round(found, 12))

    @property
    def minima(self) -> np.ndarray:
        if self._minima.size == 0:
            raise ValidationFailure("tabulated potential has no interior minimum")
        return self._minima

    @property
    def wells(self) -> int:
        return int(self.minima.size)

    @property
    def first_minimum(self) -> float:
        return float(self.minima[0])

    @property
    def period(self) -> float:
        m = self.minima
        if m.size < 2:
            return float(self.x[-1] - self.x[0])
        return float((m[-1] - m[0]) / (m.size - 1))

    @property
    def window(self) -> Tuple[float, float]:
        return float(self.x[0]), float(self.x[-1])

    def _formula(self, x):
        return self._interpolate(x)

    def _periodic_formula(self, x):
        if self.wells < 2:
            raise ValidationFailure("the periodic continuation needs at least two tabulated wells")
        x1, a = self.first_minimum, self.period
        return self._interpolate(x1 + np.mod(x - x1, a))

    def curvature(self) -> float:
        # central second difference on the interpolant, step = finest table spacing
        h = float(np.min(np.diff(self.x)))
        x0 = self.first_minimum
        lo, hi = self.window
        h = min(h, x0 - lo, hi - x0)
        values = self._interpolate(np.array([x0 - h, x0, x0 + h]))
        return float((values[0] - 2.0 * values[1] + values[2]) / h ** 2)

    def barrier_top(self) -> Tuple[float, float]:
        if self.wells < 2:
            raise ValidationFailure("a barrier needs at least two tabulated wells")
        x1, a = self.first_minimum, self.period
        grid = np.linspace(x1, x1 + a, TURNING_POINT_SCAN)
        values = self._periodic_formula(grid)
        k = int(np.argmax(values))
        return float(grid[k]), float(values[k])
