"""Registry of verification suites.

Each suite is an ordered list of check classes; ``SuiteManager`` reorders
them only as far as their ``requires`` declarations demand.
"""

from __future__ import annotations

from typing import Dict, List, Type

from pointproc.checks.bag_laws import BagMonadLaws, CompositionDecomposition
from pointproc.checks.distributive import (
    CardinalityLemma,
    PentagonIdentities,
    PolynomialOracle,
    TriangleIdentities,
)
from pointproc.checks.empirical import (
    ClusterIntensity,
    ExactCalibration,
    PoissonIndependence,
    PoissonIntensity,
    WaldLemma,
)
from pointproc.checks.gb_laws import BindJoinAgreement, DistMonadLaws, GBMonadLaws
from pointproc.checks.morphism import (
    CountingIdentity,
    DistributiveIntensity,
    IntensityAdditivity,
    MultLaw,
    UnitLaw,
)
from pointproc.core.base_check import BaseCheck

SUITES: Dict[str, List[Type[BaseCheck]]] = {
    "bag-laws": [BagMonadLaws, CompositionDecomposition],
    "gb-laws": [DistMonadLaws, GBMonadLaws, BindJoinAgreement],
    "distributive": [TriangleIdentities, PentagonIdentities, CardinalityLemma, PolynomialOracle],
    "morphism": [UnitLaw, MultLaw, CountingIdentity, DistributiveIntensity, IntensityAdditivity],
    "empirical": [ExactCalibration, PoissonIntensity, WaldLemma, PoissonIndependence, ClusterIntensity],
}

ALL = "all"
SUITE_NAMES = (*SUITES, ALL)


def expand(name: str) -> List[str]:
    """Suite names a request runs; ``all`` means every suite in registry order."""

    if name == ALL:
        return list(SUITES)
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    return [name]
