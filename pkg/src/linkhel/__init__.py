"""Pairwise and triple linking numbers of three-component links in S^3,
computed as mapping degrees and torus-field helicity integrals."""

from .errors import (
    CurvesTooClose,
    DegenerateCurve,
    DegenerateDegree,
    GridTooLarge,
    LinkDocumentError,
    LinkhelError,
    NearDegenerateTriple,
    NonzeroLinking,
    PoleTooClose,
)
from .geometry import CurveR3, CurveS3, Link3, from_samples, inverse_stereo, stereo_from_pole
from .invariants import (
    InvariantReport,
    gauss_linking,
    milnor_mu,
    milnor_mu_bruteforce,
    pairwise_degrees,
    subtorus_degree,
)

__version__ = "0.1.0"

__all__ = [
    "CurveR3",
    "CurveS3",
    "CurvesTooClose",
    "DegenerateCurve",
    "DegenerateDegree",
    "GridTooLarge",
    "InvariantReport",
    "Link3",
    "LinkDocumentError",
    "LinkhelError",
    "NearDegenerateTriple",
    "NonzeroLinking",
    "PoleTooClose",
    "from_samples",
    "gauss_linking",
    "inverse_stereo",
    "milnor_mu",
    "milnor_mu_bruteforce",
    "pairwise_degrees",
    "stereo_from_pole",
    "subtorus_degree",
]
