"""
Empirical completeness checks: template fitting, grid solving and
classification of candidate solutions.
"""

from sumform.discover.samples import SampleSet, FitResult
from sumform.discover.fitting import fit_affine_family, fit_power_family, fit_all
from sumform.discover.grid_solver import GridSystem, GridSolution, assemble_eq110, grid_solve_eq110
from sumform.discover.classify import Classification, classify_detailed, classify_solution

__all__ = [
    "SampleSet",
    "FitResult",
    "fit_affine_family",
    "fit_power_family",
    "fit_all",
    "GridSystem",
    "GridSolution",
    "assemble_eq110",
    "grid_solve_eq110",
    "Classification",
    "classify_detailed",
    "classify_solution",
]
