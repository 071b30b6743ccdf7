"""
Entropy of degree α and its link to the λ equation.

    H_n^α(P) = (1 - 2^(1-α))^(-1) (1 - Σ p_i^α),   0^α := 0,  α ≠ 1

With λ = 2^(1-α) - 1 the function h(p) = (p^α - p)/λ solves equation 1.5
and Σ h(p_i) = H_n^α(P).
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from sumform.errors import EntropyError
from sumform.equations import EquationId, FamilyTag
from sumform.families import SolutionBundle, theorem3_construct
from sumform.maps.functions import IntervalFunction
from sumform.maps.multiplicative import MultiplicativeMap
from sumform.scalar import Scalar
from sumform.simplex import Distribution


@dataclass(frozen=True)
class Alpha:
    """
    An entropy order α ≠ 1.

    Integer orders (including integral floats such as ``2.0``) keep exact
    distributions exact.
    """

    value: Union[int, float]

    def __post_init__(self):
        value = self.value
        if isinstance(value, bool) or not isinstance(value, (int, float, Fraction)):
            raise EntropyError("invalid-alpha", f"α must be a number, got {value!r}")
        if isinstance(value, Fraction):
            value = int(value) if value.denominator == 1 else float(value)
        elif isinstance(value, float) and value.is_integer():
            value = int(value)
        if value == 1:
            raise EntropyError("alpha-is-one", "the entropy of degree α needs α ≠ 1")
        object.__setattr__(self, "value", value)

    @property
    def is_integer(self) -> bool:
        return isinstance(self.value, int)

    @classmethod
    def of(cls, value: Any) -> 'Alpha':
        return value if isinstance(value, Alpha) else cls(value)


def lambda_of_alpha(alpha: Any) -> Scalar:
    """
    λ = 2^(1-α) - 1, exact (dyadic) for integer α.

    Example::

        lambda_of_alpha(2)    # Scalar(-1/2)
        lambda_of_alpha(0)    # Scalar(1)
    """
    a = Alpha.of(alpha)
    if a.is_integer:
        return Scalar.of(Fraction(2) ** (1 - a.value) - 1)
    return Scalar.from_float(2.0 ** (1 - a.value) - 1)


def entropy_alpha(P: Distribution, alpha: Any) -> Scalar:
    """
    Entropy of degree α of a distribution.

    Exact for integer α on an exact distribution, float otherwise.

    Raises:
        EntropyError: ``alpha-is-one``.

    Example::

        entropy_alpha(make_distribution(["1/3", "1/3", "1/3"]), 2)   # Scalar(4/3)
    """
    a = Alpha.of(alpha)
    if a.is_integer and P.is_exact:
        total = Scalar.rational(0)
        for p in P:
            if not p.is_zero():
                total = total + p ** a.value
        return (1 - total) / (1 - Fraction(2) ** (1 - a.value))
    power_sum = 0.0
    for p in P:
        x = p.to_float()
        if x > 0.0:
            power_sum += x ** a.value
    return Scalar.from_float((1.0 - power_sum) / (1.0 - 2.0 ** (1 - a.value)))


def entropy_from_solution(P: Distribution, h: IntervalFunction) -> Scalar:
    """Σ h(p_i), the sum-form value of a solution h."""
    values = [h.evaluate(p) for p in P]
    return sum(values[1:], values[0])


def shannon_entropy(P: Distribution) -> float:
    """Σ -p_i log2 p_i with 0·log 0 := 0."""
    total = 0.0
    for p in P:
        x = p.to_float()
        if x > 0.0:
            total -= x * math.log2(x)
    return total


def entropy_bundle(alpha: Any, n: int = 3, m: int = 3) -> SolutionBundle:
    """
    The degree-α solution of equation 1.5 as a bundle.

    h(p) = (p^α - p)/λ with λ = 2^(1-α) - 1, tagged with family ``5.4``.
    """
    a = Alpha.of(alpha)
    lam = lambda_of_alpha(a)
    solved = theorem3_construct(
        FamilyTag.T3_MULT, n, m, lam, {"M": MultiplicativeMap.power(a.value), "h1": 0}
    )
    params = {"alpha": a.value}
    return SolutionBundle(
        EquationId.EQ15, FamilyTag.T3_MULT, n, m, {"h": solved.functions["h"]}, params, lam=lam
    )
