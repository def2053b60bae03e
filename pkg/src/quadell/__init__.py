"""Matrix quadratic forms of matrix-variate elliptical distributions.

Evaluates the density and characteristic-function series of W = X*AX when X
follows a matrix-variate elliptical law over a real normed division algebra
(beta in {1, 2, 4, 8}), and ships a Monte Carlo harness that verifies the
supporting identities and adjudicates the printed-formula ambiguities.
"""

from .errors import (
    DegenerateCompositionError,
    DomainError,
    IndefiniteInputError,
    NonNormalizableError,
    PoleError,
    QuadellError,
    RankDeficientWError,
    RankError,
    TruncationError,
    UnsupportedAlgebraError,
)
from .special import (
    AlgebraKind,
    JackCache,
    Partition,
    SeriesControl,
    enumerate_partitions,
    gen_pochhammer,
    hypergeom_1F0,
    jack_c,
    jack_layer,
    jack_ones,
    mv_gamma,
    mv_lgamma,
    stiefel_volume,
)

__version__ = "0.1.0"
