"""Subpackage aggregating all verification checks.

One module per suite; ``instances`` holds the seeded random instance
generators they share.
"""

from .bag_laws import BagMonadLaws, CompositionDecomposition  # noqa: F401
from .distributive import CardinalityLemma, PentagonIdentities, PolynomialOracle, TriangleIdentities  # noqa: F401
from .empirical import ClusterIntensity, ExactCalibration, PoissonIndependence, PoissonIntensity, WaldLemma  # noqa: F401
from .gb_laws import BindJoinAgreement, DistMonadLaws, GBMonadLaws  # noqa: F401
from .morphism import CountingIdentity, DistributiveIntensity, IntensityAdditivity, MultLaw, UnitLaw  # noqa: F401
