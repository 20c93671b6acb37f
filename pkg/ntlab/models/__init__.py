"""
ntlab wraps every computed result in a type-annotated model. Models which
implementers can interact with directly are documented below.
"""

from .record import ExperimentRecord
from .results import (
    GaussCheck,
    JutilaReport,
    LargeSieveReport,
    MeanValueResult,
    PoissonCheck,
    PolyaVinogradovReport,
    PrimeCharSumReport,
    PrimeRange,
    ResidueCheck,
    SmoothedMeanResult,
    SquarePartDecomposition,
)

__all__ = [
    "ExperimentRecord",
    "GaussCheck",
    "JutilaReport",
    "LargeSieveReport",
    "MeanValueResult",
    "PoissonCheck",
    "PolyaVinogradovReport",
    "PrimeCharSumReport",
    "PrimeRange",
    "ResidueCheck",
    "SmoothedMeanResult",
    "SquarePartDecomposition",
]
