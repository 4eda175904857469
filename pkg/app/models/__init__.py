from app.models.potential import (
    PotentialModel, CosinePotential, ParabolicChainPotential, TabulatedPotential
)
from app.models.context import SemiclassicalContext

__all__ = [
    'PotentialModel', 'CosinePotential', 'ParabolicChainPotential', 'TabulatedPotential',
    'SemiclassicalContext',
]
