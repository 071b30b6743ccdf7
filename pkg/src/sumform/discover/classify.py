"""
Classify a candidate solution into its solution family.

The candidate is first verified on the exact grid; only a verified
candidate is fitted against the affine and power templates. The affine
template wins ties (the identity fits both).
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

from sumform.discover.fitting import fit_affine_family, fit_power_family
from sumform.discover.samples import FitResult, SampleSet
from sumform.equations import EquationId, EquationSpec, FamilyTag
from sumform.errors import FitError
from sumform.families import SolutionBundle, transform_h_to_f
from sumform.maps.functions import IntervalFunction
from sumform.residual import ResidualReport, verify_over_grid
from sumform.scalar import Scalar

logger = logging.getLogger(__name__)

# Resolution of the abscissae k/FIT_RESOLUTION used for template fits
FIT_RESOLUTION = 12

# A template matches when its rms error is at most this
FIT_TOLERANCE = 1e-9

# Value checks on float samples
VALUE_TOLERANCE = 1e-9

_LAMBDA_FAMILY = {
    FamilyTag.T2_ADDITIVE: FamilyTag.T3_ADDITIVE,
    FamilyTag.T2_AFFINE: FamilyTag.T3_AFFINE,
    FamilyTag.T2_MULT: FamilyTag.T3_MULT,
}


@dataclass
class Classification:
    """
    Family decision with the evidence behind it.

    Attributes:
        family: Recognized family, ``FamilyTag.NONE`` otherwise.
        fits: Successful template fits by template name.
        diagnostic: Why the candidate was or was not recognized.
        report: Verification sweep, when one was run.
    """

    family: FamilyTag
    fits: Dict[str, FitResult] = field(default_factory=dict)
    diagnostic: str = ""
    report: Optional[ResidualReport] = None

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"family": self.family.value}
        result["fits"] = {name: fit.to_dict() for name, fit in self.fits.items()}
        result["diagnostic"] = self.diagnostic
        if self.report is not None:
            result["verification"] = self.report.to_dict()
        return result


def fit_abscissae(resolution: int = FIT_RESOLUTION):
    return [Scalar.rational(k, resolution) for k in range(resolution + 1)]


def _is_zero(value: Scalar) -> bool:
    if value.is_exact:
        return value.is_zero()
    return abs(value.value) <= VALUE_TOLERANCE


def _endpoint(samples: SampleSet, x: int, fit: FitResult) -> Scalar:
    """Sampled value at 0 or 1, or the fitted line's value there."""
    value = samples.value_at(Scalar.rational(x))
    if value is not None:
        return value
    return Scalar.from_float(fit.parameters["slope"] * x + fit.parameters["const"])


def _template_fits(samples: SampleSet) -> Dict[str, FitResult]:
    fits: Dict[str, FitResult] = {}
    try:
        fits["affine"] = fit_affine_family(samples)
    except FitError as e:
        logger.debug("affine template failed: %s", e)
    try:
        fits["power"] = fit_power_family(samples)
    except FitError as e:
        logger.debug("power template failed: %s", e)
    return fits


def classify_product_samples(samples: SampleSet, n: int) -> Classification:
    """
    Family of f in the product equation from samples of f.

    Affine f is ``4.1`` when f(1) + (n-1)f(0) = 0 and ``4.2`` otherwise;
    a power-law f is ``4.4``.
    """
    fits = _template_fits(samples)
    affine = fits.get("affine")
    if affine is not None and affine.rms_error <= FIT_TOLERANCE:
        c = _endpoint(samples, 1, affine) + (n - 1) * _endpoint(samples, 0, affine)
        tag = FamilyTag.T2_ADDITIVE if _is_zero(c) else FamilyTag.T2_AFFINE
        return Classification(tag, fits, f"f is affine with f(1) + (n-1)f(0) = {c}")
    power = fits.get("power")
    if power is not None and power.rms_error <= FIT_TOLERANCE:
        alpha = power.parameters["alpha"]
        return Classification(FamilyTag.T2_MULT, fits, f"f is a power law with α = {alpha:.12g}")
    return Classification(FamilyTag.NONE, fits, _no_template("f", fits))


def classify_phi_samples(samples: SampleSet, n: int) -> Classification:
    """
    Family of φ in the φ(0)-term equation from samples of φ.

    Affine φ is ``3.1ii`` when φ(1) + (n-1)φ(0) = 1 and ``3.1i`` otherwise;
    a power-law φ is ``3.3``.
    """
    fits = _template_fits(samples)
    affine = fits.get("affine")
    if affine is not None and affine.rms_error <= FIT_TOLERANCE:
        governing = _endpoint(samples, 1, affine) + (n - 1) * _endpoint(samples, 0, affine)
        tag = FamilyTag.T1_AFFINE_II if _is_zero(governing - 1) else FamilyTag.T1_AFFINE_I
        return Classification(tag, fits, f"φ is affine with φ(1) + (n-1)φ(0) = {governing}")
    power = fits.get("power")
    if power is not None and power.rms_error <= FIT_TOLERANCE:
        alpha = power.parameters["alpha"]
        return Classification(FamilyTag.T1_MULT, fits, f"φ is a power law with α = {alpha:.12g}")
    return Classification(FamilyTag.NONE, fits, _no_template("φ", fits))


def _no_template(name: str, fits: Dict[str, FitResult]) -> str:
    detail = (
        ", ".join(f"{key} rms {fit.rms_error:.3g}" for key, fit in fits.items())
        or "no template converged"
    )
    return (
        f"{name} matches neither the affine nor the power template ({detail}); "
        "discontinuous multiplicative parts are not recognized from samples"
    )


def _samples_of(F: IntervalFunction) -> SampleSet:
    return SampleSet.from_function(F, fit_abscissae())


def classify_detailed(
    candidate: Union[SolutionBundle, SampleSet],
    spec: Optional[EquationSpec] = None,
    d: int = 6,
) -> Classification:
    """
    Verify and classify a candidate.

    Args:
        candidate: A bundle, or samples of f (product equation) or φ.
            Samples cannot be verified and are only fitted; ``spec`` is
            then required.
        spec: Equation instance; defaults to ``candidate.spec()``.
        d: Grid resolution of the verification sweep.

    Example::

        bundle = theorem2_construct("4.4", 3, 3, {"M": MultiplicativeMap.power(2)})
        classify_detailed(bundle).family     # FamilyTag.T2_MULT
    """
    if isinstance(candidate, SampleSet):
        if spec is None:
            raise FitError("spec-required", "classifying samples needs an equation spec")
        if spec.equation is EquationId.EQ110:
            return classify_product_samples(candidate, spec.n)
        if spec.equation is EquationId.EQ111:
            return classify_phi_samples(candidate, spec.n)
        raise FitError("unsupported-equation", "samples can only be classified for 1.10 and 1.11")

    bundle = candidate
    spec = spec or bundle.spec()
    report = verify_over_grid(spec, bundle, d)
    if not report.passed:
        return Classification(
            FamilyTag.NONE,
            diagnostic=f"residual {report.max_abs_residual} on the grid; not a solution",
            report=report,
        )

    eq = bundle.equation
    fn = bundle.functions
    if eq is EquationId.EQ110:
        result = classify_product_samples(_samples_of(fn["f"]), bundle.n)
    elif eq is EquationId.EQ111:
        result = classify_phi_samples(_samples_of(fn["phi"]), bundle.n)
    elif eq in (EquationId.EQ18, EquationId.EQ15):
        f = transform_h_to_f(fn["h"], bundle.lam)
        result = classify_product_samples(_samples_of(f), bundle.n)
        result.family = _LAMBDA_FAMILY.get(result.family, FamilyTag.NONE)
        result.diagnostic = f"after f = x + λh: {result.diagnostic}"
    elif eq is EquationId.EQ21:
        result = Classification(FamilyTag.RESULT1, diagnostic="constant sum verified on the grid")
    elif eq is EquationId.EQ23:
        result = Classification(FamilyTag.RESULT2, diagnostic="zero sum verified on the grid")
    else:
        result = Classification(
            FamilyTag.NONE, diagnostic="equation 1.7 has no solution families to match"
        )
    result.report = report
    logger.info("classified %s bundle as %s", eq.value, result.family.value)
    return result


def classify_solution(
    candidate: Union[SolutionBundle, SampleSet],
    spec: Optional[EquationSpec] = None,
    d: int = 6,
) -> FamilyTag:
    """Family tag of a candidate; ``FamilyTag.NONE`` when it is not a verified solution."""
    return classify_detailed(candidate, spec, d).family
