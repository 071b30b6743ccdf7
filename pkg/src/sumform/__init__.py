"""
sumform
=======

Exact construction and verification of solutions of sum-form functional
equations on the closed probability simplex, over the field Q(√2, √3).

Quick Start::

    from sumform import theorem2_construct, verify_over_grid, MultiplicativeMap

    bundle = theorem2_construct("4.4", 3, 3, {"M": MultiplicativeMap.power(2)})
    report = verify_over_grid(bundle.spec(), bundle, d=6)
    print(report.max_abs_residual)    # 0
    print(report.evaluations)         # 1024, (28 grid + 4 irrational)²
                                      # 784 with include_irrational=False

    from sumform import entropy_alpha, make_distribution
    entropy_alpha(make_distribution(["1/2", "1/2"]), 2)    # Scalar(1)
"""

import logging

__version__ = "0.1.0"

# Exact arithmetic and the simplex
from sumform.scalar import Backend, Scalar, make_rational, format_scalar, parse_scalar
from sumform.simplex import (
    Distribution, ProductMatrix, make_distribution, enumerate_grid, grid_size,
    sample_random, product_matrix, irrational_distributions, grid_abscissae,
)

# Function models
from sumform.maps import (
    AdditiveMap, MultiplicativeKind, MultiplicativeMap, IntervalFunction,
    AffineAdditive, MultCombo, Transformed, Lifted, Table,
    make_additive, make_multiplicative, power_function, function_from_dict,
)

# Equations and solutions
from sumform.equations import EquationId, EquationSpec, FamilyTag
from sumform.families import (
    SolutionBundle, result1_construct, result2_construct, result1_bundle, result2_bundle,
    theorem1_construct, theorem2_construct, theorem3_construct,
    transform_h_to_f, transform_f_to_h, as_eq17,
)
from sumform.entropy import (
    Alpha, lambda_of_alpha, entropy_alpha, entropy_from_solution, shannon_entropy, entropy_bundle,
)
from sumform.residual import ResidualReport, verify_over_grid, verify_over_samples

# Discovery
from sumform.discover import (
    SampleSet, FitResult, fit_affine_family, fit_power_family, grid_solve_eq110, classify_solution,
)

# Errors
from sumform.errors import SumFormError

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    # Version
    "__version__",
    # Scalars and the simplex
    "Backend",
    "Scalar",
    "make_rational",
    "format_scalar",
    "parse_scalar",
    "Distribution",
    "ProductMatrix",
    "make_distribution",
    "enumerate_grid",
    "grid_size",
    "sample_random",
    "product_matrix",
    "irrational_distributions",
    "grid_abscissae",
    # Maps
    "AdditiveMap",
    "MultiplicativeKind",
    "MultiplicativeMap",
    "IntervalFunction",
    "AffineAdditive",
    "MultCombo",
    "Transformed",
    "Lifted",
    "Table",
    "make_additive",
    "make_multiplicative",
    "power_function",
    "function_from_dict",
    # Equations and families
    "EquationId",
    "EquationSpec",
    "FamilyTag",
    "SolutionBundle",
    "result1_construct",
    "result2_construct",
    "result1_bundle",
    "result2_bundle",
    "theorem1_construct",
    "theorem2_construct",
    "theorem3_construct",
    "transform_h_to_f",
    "transform_f_to_h",
    "as_eq17",
    # Entropy
    "Alpha",
    "lambda_of_alpha",
    "entropy_alpha",
    "entropy_from_solution",
    "shannon_entropy",
    "entropy_bundle",
    # Verification
    "ResidualReport",
    "verify_over_grid",
    "verify_over_samples",
    # Discovery
    "SampleSet",
    "FitResult",
    "fit_affine_family",
    "fit_power_family",
    "grid_solve_eq110",
    "classify_solution",
    # Errors
    "SumFormError",
]
