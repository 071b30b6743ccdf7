"""
Solve the product equation for an unknown f on a grid.

For fixed g_1..g_m, ΣΣ f(p_i q_j) = Σf(p_i) Σg_j(q_j) is linear in the
values of f. Over every grid pair at resolution d this gives one
homogeneous equation per pair in the unknowns f(v), v running over all
values k/d and products (a/d)(b/d). The normalization f(1) = 1 picks a
non-trivial member of the solution space.

The unknowns only live on rational points, so Hamel directions of an
additive part are invisible to this solver.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from sumform.discover.samples import SampleSet
from sumform.errors import FitError
from sumform.maps.functions import IntervalFunction, Table
from sumform.scalar import Scalar
from sumform.simplex import enumerate_grid, grid_abscissae

logger = logging.getLogger(__name__)

DEFAULT_CAP = 5000

# Relative singular-value cutoff for the numerical rank
RANK_TOLERANCE = 1e-10

# Homogeneous residual above which f(1) = 1 is taken as infeasible
FEASIBILITY_TOLERANCE = 1e-9


@dataclass
class GridSystem:
    """
    The assembled homogeneous system ``matrix @ f(abscissae) = 0``.

    Attributes:
        abscissae: The unknown points, ascending.
        matrix: One row per grid pair.
    """

    abscissae: List[Scalar]
    matrix: np.ndarray

    @property
    def one_index(self) -> int:
        return len(self.abscissae) - 1

    def values_of(self, F: IntervalFunction) -> np.ndarray:
        """F tabulated on the unknown points, as floats."""
        return np.array([F.evaluate(v).to_float() for v in self.abscissae], dtype=float)

    def residual_norm(self, values: np.ndarray) -> float:
        """Euclidean norm of ``matrix @ values``."""
        return float(np.linalg.norm(self.matrix @ values))

    def nullity(self) -> int:
        """Dimension of the solution space of the homogeneous system."""
        s = np.linalg.svd(self.matrix, compute_uv=False)
        if s.size == 0 or s[0] == 0.0:
            return self.matrix.shape[1]
        rank = int(np.sum(s > RANK_TOLERANCE * s[0]))
        return self.matrix.shape[1] - rank

    def null_vector(self) -> np.ndarray:
        """
        A unit solution of the homogeneous system, or zeros when only the
        trivial solution exists. The largest component is made positive.
        """
        unknowns = self.matrix.shape[1]
        if self.nullity() == 0:
            return np.zeros(unknowns)
        _, _, vt = np.linalg.svd(self.matrix)
        v = vt[-1]
        return v if v[np.argmax(np.abs(v))] >= 0 else -v


@dataclass
class GridSolution:
    """
    Least-squares table for f.

    Attributes:
        system: The system that was solved.
        values: f at ``system.abscissae``.
        residual_norm: Norm of the homogeneous residual of ``values``.
        nullity: Dimension of the homogeneous solution space.
        normalized: False when no solution has f(1) = 1 and ``values`` is
            a null-space vector instead.
    """

    system: GridSystem
    values: np.ndarray
    residual_norm: float
    nullity: int
    normalized: bool = True

    @property
    def abscissae(self) -> List[Scalar]:
        return self.system.abscissae

    def table(self) -> Table:
        """The solution as a table function with exact abscissae."""
        return Table(
            tuple((v, Scalar.from_float(float(y))) for v, y in zip(self.abscissae, self.values))
        )

    def to_sample_set(self) -> SampleSet:
        return SampleSet(self.table().points)

    def projection_rms(self, templates: Sequence[IntervalFunction]) -> float:
        """
        RMS distance from the table to the span of the template functions.

        Example::

            solution.projection_rms([power_function(2)])   # ~0 for g_j = p²
        """
        basis = np.column_stack([self.system.values_of(T) for T in templates])
        coeffs, *_ = np.linalg.lstsq(basis, self.values, rcond=None)
        return float(np.sqrt(np.mean((self.values - basis @ coeffs) ** 2)))


def assemble_eq110(
    g: Sequence[IntervalFunction], n: int, m: int, d: int, cap: int = DEFAULT_CAP
) -> GridSystem:
    """
    Build the linear system for f given g_1..g_m.

    Raises:
        FitError: ``system-too-large`` when the number of unknowns exceeds ``cap``;
            ``arity-mismatch`` when len(g) != m.
    """
    if len(g) != m:
        raise FitError("arity-mismatch", f"need {m} functions g_j, got {len(g)}")
    abscissae = grid_abscissae(n, m, d)
    if len(abscissae) > cap:
        raise FitError("system-too-large", f"{len(abscissae)} unknowns exceed the cap of {cap}")
    index: Dict[Scalar, int] = {v: i for i, v in enumerate(abscissae)}
    grid_p = list(enumerate_grid(n, d))
    grid_q = list(enumerate_grid(m, d))
    g_sums = [sum((gj.evaluate(qj).to_float() for gj, qj in zip(g, q)), 0.0) for q in grid_q]
    matrix = np.zeros((len(grid_p) * len(grid_q), len(abscissae)))
    row = 0
    for p in grid_p:
        for q, g_sum in zip(grid_q, g_sums):
            for pi in p:
                for qj in q:
                    matrix[row, index[pi * qj]] += 1.0
                matrix[row, index[pi]] -= g_sum
            row += 1
    logger.debug(
        "assembled %d x %d system for n=%d m=%d d=%d", matrix.shape[0], matrix.shape[1], n, m, d
    )
    return GridSystem(abscissae, matrix)


def grid_solve_eq110(
    g: Sequence[IntervalFunction], n: int, m: int, d: int, cap: int = DEFAULT_CAP
) -> GridSolution:
    """
    Least-squares f for fixed g on the grid of resolution d, with f(1) = 1.

    Returns the minimum-norm least-squares solution of the system plus the
    normalization row, its homogeneous residual and the nullity of the
    homogeneous system. When the grid equations force f(1) = 0 (g outside
    the affine and multiplicative families) the normalization is dropped
    and a null-space vector, or f = 0, is returned with
    ``normalized=False``.

    Example::

        sol = grid_solve_eq110([power_function(2)] * 3, 3, 3, 4)
        sol.nullity                                  # 1
        sol.projection_rms([power_function(2)])      # < 1e-9
    """
    system = assemble_eq110(g, n, m, d, cap)
    unknowns = len(system.abscissae)
    normalization = np.zeros((1, unknowns))
    normalization[0, system.one_index] = 1.0
    A = np.vstack([system.matrix, normalization])
    b = np.zeros(A.shape[0])
    b[-1] = 1.0
    values, *_ = np.linalg.lstsq(A, b, rcond=None)
    residual = system.residual_norm(values)
    normalized = residual <= FEASIBILITY_TOLERANCE * max(1.0, float(np.linalg.norm(values)))
    if not normalized:
        logger.warning("f(1) = 1 is infeasible (residual %.3g); returning the null space", residual)
        values = system.null_vector()
        residual = system.residual_norm(values)
    solution = GridSolution(system, values, residual, system.nullity(), normalized)
    logger.info(
        "grid solve n=%d m=%d d=%d: %d unknowns, nullity %d, residual %.3g",
        n, m, d, unknowns, solution.nullity, solution.residual_norm,
    )
    return solution
