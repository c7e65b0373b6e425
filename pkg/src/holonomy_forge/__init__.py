"""Forge polynomial Lorentzian metrics with prescribed holonomy and certify them."""
from .exact import Matrix, Surd, nullspace, parse_scalar, format_scalar, rank, rref, sqrt
from .lie import (
    LieSubalgebra,
    LorTriple,
    TargetAlgebra,
    bracket,
    lie_closure,
    skew_unit,
    target_algebra,
    triple_embed,
    triple_project,
)
from .weak_curvature import (
    PFamily,
    WeakCurvTensor,
    is_weak_berger,
    pspace_basis,
    pspace_dim,
    select_family,
)
from .poly import Poly, to_latex, to_text
from .metric import MetricSpec, assemble_metric, forge
from .curvature import (
    ChristoffelTable,
    CurvatureEngine,
    CurvDerivative,
    MetricMatrix,
    christoffel,
    covariant_derivative,
    metric_matrix,
    origin_operator,
    riemann,
)
from .holonomy import HolonomyCertificate, certify, classify, generate_holonomy, verify
from .catalog import CATALOG, builtin

__version__ = "0.1.0"
