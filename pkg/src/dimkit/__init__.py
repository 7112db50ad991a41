"""Spherical measures, angular decompositions and regularised loop integrals
for arbitrary real dimension d."""

from .errors import (
    DimkitError,
    DivergenceError,
    DomainError,
    ExtractionError,
    PoleError,
    QuadratureError,
    RegimeError,
)
from .loop_integrals import (
    LoopResult,
    dot_product_integral,
    external_momentum_integral,
    vacuum_bubble,
)
from .quadrature import QuadratureResult, integrate_finite, integrate_semi_infinite
from .radial import (
    ExtractionResult,
    IntegrandKind,
    RadialIntegrandSpec,
    closed_form_finite_part,
    extract_finite_part,
)
from .sphere_measure import (
    DimensionRegime,
    MeasureDecomposition,
    classify,
    decompose,
    max_angles,
    measure_coefficient,
    omega,
    volume,
)

__version__ = "0.1.0"
