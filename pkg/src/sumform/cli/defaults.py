"""
Default parameter sets for building a bundle from command-line flags.
"""

from typing import Any, Optional, Sequence, Union

from sumform.entropy import entropy_bundle, lambda_of_alpha
from sumform.equations import EquationId, FamilyTag
from sumform.errors import UsageError
from sumform.families import (
    SolutionBundle, as_eq17, result1_bundle, result2_bundle,
    theorem1_construct, theorem2_construct, theorem3_construct,
)
from sumform.maps.additive import AdditiveMap
from sumform.maps.multiplicative import MultiplicativeMap
from sumform.scalar import Scalar

DEFAULT_ALPHA = 2

# Family built when only an equation is given
DEFAULT_FAMILY = {
    EquationId.EQ110: FamilyTag.T2_MULT,
    EquationId.EQ111: FamilyTag.T1_MULT,
    EquationId.EQ18: FamilyTag.T3_MULT,
    EquationId.EQ15: FamilyTag.T3_MULT,
    EquationId.EQ17: FamilyTag.T3_MULT,
    EquationId.EQ21: FamilyTag.RESULT1,
    EquationId.EQ23: FamilyTag.RESULT2,
}

# φ(0) for the affine cases; 1/9 stays clear of the case-ii line for n = m = 3
PHI0_CASE_I = Scalar.rational(1, 9)
PHI0_CASE_II = Scalar.rational(0)

# Constant sums: ψ = B - B(1)/k + c/k with B(1) = 2, c = 5 for one function; A(1) = 1 for ψ_j
RESULT1_SLOPE = 2
RESULT1_CONSTANT = 5
RESULT2_SLOPE = 1

ZERO_TAIL = (Scalar.rational(0),) * 3


def _with_tail(at_one: Any, tail: Sequence[Scalar]) -> AdditiveMap:
    return AdditiveMap.from_values(at_one, *tail)


def resolve_lambda(lam: Optional[Scalar], alpha: Any) -> Scalar:
    """The explicit λ, or 2^(1-α) - 1 when only α is known."""
    if lam is not None:
        return lam
    return lambda_of_alpha(alpha)


def default_bundle(
    family: Union[str, FamilyTag],
    n: int = 3,
    m: int = 3,
    alpha: Any = DEFAULT_ALPHA,
    lam: Optional[Scalar] = None,
    tail: Sequence[Scalar] = ZERO_TAIL,
) -> SolutionBundle:
    """
    A representative bundle of a family.

    Multiplicative parts are p^α, ``tail`` becomes the Hamel tail of the
    additive part and λ defaults to 2^(1-α) - 1, so the default ``5.4``
    bundle is the entropy of degree α.

    Example::

        default_bundle("4.4", alpha=3).functions["f"]    # p^3
        default_bundle("5.4").lam                         # Scalar(-1/2)
    """
    tag = family if isinstance(family, FamilyTag) else FamilyTag.parse(family)
    if tag in (FamilyTag.T1_AFFINE_I, FamilyTag.T1_AFFINE_II):
        phi0 = PHI0_CASE_I if tag is FamilyTag.T1_AFFINE_I else PHI0_CASE_II
        return theorem1_construct(tag, n, m, {"phi0": phi0, "tail": tail})
    if tag is FamilyTag.T1_MULT:
        params = {"M": MultiplicativeMap.power(alpha), "B": _with_tail(0, tail)}
        return theorem1_construct(tag, n, m, params)
    if tag is FamilyTag.T2_ADDITIVE:
        return theorem2_construct(tag, n, m, {"b": _with_tail(0, tail)})
    if tag is FamilyTag.T2_AFFINE:
        return theorem2_construct(tag, n, m, {"f0": 0, "f1": 1, "a_tail": tail})
    if tag is FamilyTag.T2_MULT:
        params = {"f1": 1, "M": MultiplicativeMap.power(alpha), "B": _with_tail(0, tail)}
        return theorem2_construct(tag, n, m, params)
    if tag is FamilyTag.T3_ADDITIVE:
        return theorem3_construct(tag, n, m, resolve_lambda(lam, alpha), {"b": _with_tail(0, tail)})
    if tag is FamilyTag.T3_AFFINE:
        return theorem3_construct(tag, n, m, resolve_lambda(lam, alpha), {"a_tail": tail})
    if tag is FamilyTag.T3_MULT:
        params = {"h1": 0, "M": MultiplicativeMap.power(alpha), "B": _with_tail(0, tail)}
        return theorem3_construct(tag, n, m, resolve_lambda(lam, alpha), params)
    if tag is FamilyTag.RESULT1:
        return result1_bundle(_with_tail(RESULT1_SLOPE, tail), n, RESULT1_CONSTANT)
    if tag is FamilyTag.RESULT2:
        slopes = [Scalar.rational(-RESULT2_SLOPE, m)] * m
        return result2_bundle(_with_tail(RESULT2_SLOPE, tail), slopes)
    raise UsageError("unknown-family", "family 'none' has no constructor")


def bundle_for(
    equation: Optional[EquationId],
    family: Optional[FamilyTag],
    n: int = 3,
    m: int = 3,
    alpha: Any = DEFAULT_ALPHA,
    lam: Optional[Scalar] = None,
    tail: Sequence[Scalar] = ZERO_TAIL,
) -> SolutionBundle:
    """
    The bundle named by an equation and/or a family.

    Equation 1.5 gives the entropy solution of degree α and equation 1.7
    the embedding of a λ-family bundle.

    Raises:
        UsageError: ``missing-target`` when neither is given,
            ``equation-family-mismatch`` when they disagree.
    """
    if equation is None and family is None:
        raise UsageError("missing-target", "give --family, --equation or --bundle")
    if family is None:
        family = DEFAULT_FAMILY[equation]
    if family is FamilyTag.NONE:
        raise UsageError("unknown-family", "family 'none' has no constructor")
    if equation is None:
        equation = family.equation
    if equation is EquationId.EQ15:
        if family is not FamilyTag.T3_MULT:
            raise UsageError("equation-family-mismatch", "equation 1.5 only carries family 5.4")
        if lam is not None:
            raise UsageError(
                "lambda-fixed", "λ of equation 1.5 is 2^(1-α) - 1; give --alpha instead"
            )
        return entropy_bundle(alpha, n, m)
    if equation is EquationId.EQ17 and family.equation is EquationId.EQ18:
        return as_eq17(default_bundle(family, n, m, alpha, lam, tail))
    if family.equation is not equation:
        raise UsageError(
            "equation-family-mismatch",
            f"family {family.value} solves equation {family.equation.value}, not {equation.value}",
        )
    return default_bundle(family, n, m, alpha, lam, tail)
