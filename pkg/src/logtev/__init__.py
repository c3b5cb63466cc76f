"""Logarithmic Tevelev degrees of X_{r,s,a} and of the blow-up of P^2 at two points.

The computations reduce to exact intersection numbers on projective bundles
over products of projective lines.  :mod:`logtev.nilring` does the base-ring
arithmetic, :mod:`logtev.tower` the bundle push-forwards, and
:mod:`logtev.tevelev` / :mod:`logtev.blowup` the two targets.
"""

from .blowup import (
    Blp2Report,
    Blp2Status,
    closed_formula_blp2,
    excess_corrected_logtev,
    integral_blp2,
    status_blp2,
)
from .errors import (
    ConfigurationError,
    CrossCheckError,
    LogTevError,
    ValidationError,
)
from .gamma import (
    GammaBlp2,
    GammaXrsa,
    gamma_from_document,
    gamma_to_document,
    symmetry_factor,
    validate_blp2,
    validate_xrsa,
)
from .nilring import NilPoly
from .tevelev import (
    Status,
    TevReport,
    closed_formula_xrsa,
    integral_xrsa,
    logtev_projective,
    logtev_xrsa,
    tev_blowup_linear,
    tev_hirzebruch,
)

__version__ = "0.1.0"

__all__ = [
    "Blp2Report",
    "Blp2Status",
    "ConfigurationError",
    "CrossCheckError",
    "GammaBlp2",
    "GammaXrsa",
    "LogTevError",
    "NilPoly",
    "Status",
    "TevReport",
    "ValidationError",
    "closed_formula_blp2",
    "closed_formula_xrsa",
    "excess_corrected_logtev",
    "gamma_from_document",
    "gamma_to_document",
    "integral_blp2",
    "integral_xrsa",
    "logtev_projective",
    "logtev_xrsa",
    "status_blp2",
    "symmetry_factor",
    "tev_blowup_linear",
    "tev_hirzebruch",
    "validate_blp2",
    "validate_xrsa",
]
