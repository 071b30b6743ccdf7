"""
Least-squares fits of sampled functions against the solution templates.

- affine: y = slope*x + const (the measurable affine families)
- power:  y = scale*x^α + slope*x (+ const), α in [0.05, 8]

The power fit runs Gauss-Newton from fixed starting exponents, with the
linear coefficients of each start solved exactly first and an Armijo
backtracking line search on every step.
"""

import logging
from typing import List, Tuple

import numpy as np

from sumform.discover.samples import FitResult, SampleSet
from sumform.equations import FamilyTag
from sumform.errors import FitError

logger = logging.getLogger(__name__)

ALPHA_MIN = 0.05
ALPHA_MAX = 8.0
ALPHA_STARTS = (0.5, 1.5, 2.0, 3.0, 5.0)
MAX_ITERATIONS = 200
STEP_TOLERANCE = 1e-12
ARMIJO_C1 = 1e-4
MIN_STEP_FRACTION = 1e-16

# A fit whose rms stays above this while α sits on a search bound failed
BOUND_RMS_LIMIT = 1e-6


def fit_affine_family(samples: SampleSet) -> FitResult:
    """
    Least-squares line through the samples (closed-form normal equations).

    Raises:
        FitError: ``insufficient-points`` (< 3) or ``degenerate-abscissae``.

    Example::

        s = SampleSet.from_function(AffineAdditive(make_additive(-1), Scalar.rational(1, 9)), xs)
        fit_affine_family(s).parameters    # {"slope": -1.0, "const": 0.111...}
    """
    if len(samples) < 3:
        raise FitError("insufficient-points", f"affine fit needs 3 points, got {len(samples)}")
    x, y = samples.xs, samples.ys
    x_mean, y_mean = x.mean(), y.mean()
    sxx = float(np.sum((x - x_mean) ** 2))
    if sxx == 0.0:
        raise FitError("degenerate-abscissae", "all abscissae are equal")
    slope = float(np.sum((x - x_mean) * (y - y_mean)) / sxx)
    const = float(y_mean - slope * x_mean)
    rms = float(np.sqrt(np.mean((y - slope * x - const) ** 2)))
    return FitResult(FamilyTag.T2_AFFINE, {"slope": slope, "const": const}, rms)


def _columns(x: np.ndarray, alpha: float, with_const: bool) -> np.ndarray:
    cols = [np.power(x, alpha), x]
    if with_const:
        cols.append(np.ones_like(x))
    return np.column_stack(cols)


def _residual(x: np.ndarray, y: np.ndarray, theta: np.ndarray, with_const: bool) -> np.ndarray:
    return y - _columns(x, theta[0], with_const) @ theta[1:]


def _jacobian(x: np.ndarray, logx: np.ndarray, theta: np.ndarray, with_const: bool) -> np.ndarray:
    """Jacobian of the model (not of the residual) in (α, linear coefficients)."""
    xa = np.power(x, theta[0])
    d_alpha = theta[1] * xa * logx
    return np.column_stack([d_alpha, _columns(x, theta[0], with_const)])


def _gauss_newton(
    x: np.ndarray, y: np.ndarray, alpha0: float, with_const: bool
) -> Tuple[np.ndarray, bool, int]:
    logx = np.log(np.where(x > 0.0, x, 1.0))
    coeffs, *_ = np.linalg.lstsq(_columns(x, alpha0, with_const), y, rcond=None)
    theta = np.concatenate([[alpha0], coeffs])
    r = _residual(x, y, theta, with_const)
    sse = float(r @ r)
    for iteration in range(1, MAX_ITERATIONS + 1):
        J = _jacobian(x, logx, theta, with_const)
        step, *_ = np.linalg.lstsq(J, r, rcond=None)
        if np.linalg.norm(step) < STEP_TOLERANCE or sse == 0.0:
            return theta, True, iteration
        slope = -2.0 * float(r @ (J @ step))
        t = 1.0
        while True:
            candidate = theta + t * step
            candidate[0] = min(max(candidate[0], ALPHA_MIN), ALPHA_MAX)
            r_new = _residual(x, y, candidate, with_const)
            sse_new = float(r_new @ r_new)
            if sse_new <= sse + ARMIJO_C1 * t * slope:
                break
            t *= 0.5
            if t < MIN_STEP_FRACTION:
                return theta, True, iteration
        if np.linalg.norm(candidate - theta) < STEP_TOLERANCE:
            return candidate, True, iteration
        theta, r, sse = candidate, r_new, sse_new
    return theta, False, MAX_ITERATIONS


def fit_power_family(samples: SampleSet, with_const: bool = False) -> FitResult:
    """
    Fit y = scale*x^α + slope*x (+ const) by multi-start Gauss-Newton.

    Starts at every α in ``ALPHA_STARTS`` and keeps the converged fit with
    the smallest rms; ties go to the earlier start.

    Args:
        samples: At least 4 points, at least 3 of them strictly inside (0, 1).
        with_const: Also fit a constant term.

    Raises:
        FitError: ``insufficient-interior-points`` or ``no-convergence``
            (no start converged, or the best fit is pinned to a bound of
            the α range without fitting the data).
    """
    if len(samples) < 4 or samples.interior_count < 3:
        raise FitError(
            "insufficient-interior-points",
            f"power fit needs 4 points with 3 inside (0, 1), "
            f"got {len(samples)} with {samples.interior_count}",
        )
    x, y = samples.xs, samples.ys
    best = None
    for alpha0 in ALPHA_STARTS:
        theta, converged, iterations = _gauss_newton(x, y, alpha0, with_const)
        if not converged:
            logger.debug(
                "power fit from α=%s did not converge in %d iterations", alpha0, iterations
            )
            continue
        rms = float(np.sqrt(np.mean(_residual(x, y, theta, with_const) ** 2)))
        logger.debug(
            "power fit from α=%s: α=%.12g rms=%.3g (%d iterations)",
            alpha0,
            theta[0],
            rms,
            iterations,
        )
        if best is None or rms < best[1]:
            best = (theta, rms)
    if best is None:
        raise FitError("no-convergence", "no starting exponent converged")
    theta, rms = best
    on_bound = theta[0] <= ALPHA_MIN or theta[0] >= ALPHA_MAX
    if on_bound and rms > BOUND_RMS_LIMIT:
        raise FitError(
            "no-convergence", f"exponent pinned at {theta[0]:g} with rms {rms:.3g}; not a power law"
        )
    parameters = {"alpha": float(theta[0]), "scale": float(theta[1]), "slope": float(theta[2])}
    if with_const:
        parameters["const"] = float(theta[3])
    return FitResult(FamilyTag.T2_MULT, parameters, rms)


def fit_all(samples: SampleSet) -> List[FitResult]:
    """Every template fit that succeeds, affine first."""
    results = []
    for fit in (fit_affine_family, fit_power_family):
        try:
            results.append(fit(samples))
        except FitError as e:
            logger.debug("%s failed: %s", fit.__name__, e)
    return results
