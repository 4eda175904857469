from app.schemas.base import ErrorResponse, OutputDocument
from app.schemas.potential import (
    CosineSpec, ParabolicChainSpec, TabulatedSpec, PotentialSpec, TableSource
)
from app.schemas.semiclassics import (
    HoppingFactors, BandResult, EllipticAction, DiagnosticsReport
)
from app.schemas.lattice import ChainHamiltonian, RingHamiltonian, RingLevel
from app.schemas.oracle import OracleSpectrum, MathieuCharacteristics
from app.schemas.verify import LevelResidual, VerificationReport
from app.schemas.run import RunConfig

__all__ = [
    # Base
    'ErrorResponse', 'OutputDocument',

    # Potential
    'CosineSpec', 'ParabolicChainSpec', 'TabulatedSpec', 'PotentialSpec', 'TableSource',

    # Semiclassics
    'HoppingFactors', 'BandResult', 'EllipticAction', 'DiagnosticsReport',

    # Lattice
    'ChainHamiltonian', 'RingHamiltonian', 'RingLevel',

    # Oracle
    'OracleSpectrum', 'MathieuCharacteristics',

    # Verification
    'LevelResidual', 'VerificationReport',

    # Run configuration
    'RunConfig',
]
