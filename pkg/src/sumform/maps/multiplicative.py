"""
Multiplicative maps on the closed unit interval.

A multiplicative map satisfies M(0) = 0, M(1) = 1 and M(pq) = M(p)M(q).
Three kinds are modelled: the powers p^α (with 0^α := 0), the support
indicator and the indicator of the point 1.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Union

from sumform.errors import MapError
from sumform.scalar import Scalar

# Float arguments may overshoot [0, 1] by this much
INTERVAL_TOLERANCE = 1e-12


class MultiplicativeKind(Enum):
    """Kinds of multiplicative maps."""
    POWER = "power"
    SUPPORT_INDICATOR = "support_indicator"
    ONE_AT_ONE = "one_at_one"


def check_unit_interval(x: Scalar) -> None:
    """
    Raise unless 0 <= x <= 1.

    Raises:
        MapError: ``out-of-interval``.
    """
    if x.is_float:
        if not (-INTERVAL_TOLERANCE <= x.value <= 1.0 + INTERVAL_TOLERANCE):
            raise MapError("out-of-interval", f"{x.value!r} is outside [0, 1]")
        return
    if x.sign() < 0 or (x - 1).sign() > 0:
        raise MapError("out-of-interval", f"{x} is outside [0, 1]")


def _normalize_alpha(alpha: Any) -> Union[int, float]:
    if isinstance(alpha, bool):
        raise MapError("invalid-exponent", "exponent must be a number")
    if isinstance(alpha, int):
        return alpha
    if isinstance(alpha, Fraction):
        return int(alpha) if alpha.denominator == 1 else float(alpha)
    if isinstance(alpha, float):
        return int(alpha) if alpha.is_integer() else alpha
    raise MapError("invalid-exponent", f"exponent must be a number, got {alpha!r}")


@dataclass(frozen=True)
class MultiplicativeMap:
    """
    A multiplicative map of one of the three supported kinds.

    Integer powers keep exact arguments exact; a non-integer exponent
    evaluates on floats.

    Attributes:
        kind: Which multiplicative map this is.
        alpha: Exponent of the power kind, ``None`` otherwise.

    Example::

        M = make_multiplicative(MultiplicativeKind.POWER, 2)
        M(Scalar.rational(1, 2))    # Scalar(1/4)
        M(Scalar.rational(0))       # Scalar(0)
    """

    kind: MultiplicativeKind = MultiplicativeKind.POWER
    alpha: Optional[Union[int, float]] = 2

    def __post_init__(self):
        if self.kind is MultiplicativeKind.POWER:
            if self.alpha is None:
                raise MapError("invalid-exponent", "the power kind needs an exponent")
            alpha = _normalize_alpha(self.alpha)
            if alpha <= 0:
                raise MapError("nonpositive-exponent", f"exponent must be positive, got {alpha}")
            object.__setattr__(self, "alpha", alpha)
        else:
            object.__setattr__(self, "alpha", None)

    @classmethod
    def power(cls, alpha: Any) -> 'MultiplicativeMap':
        return cls(MultiplicativeKind.POWER, alpha)

    @classmethod
    def support_indicator(cls) -> 'MultiplicativeMap':
        return cls(MultiplicativeKind.SUPPORT_INDICATOR, None)

    @classmethod
    def one_at_one(cls) -> 'MultiplicativeMap':
        return cls(MultiplicativeKind.ONE_AT_ONE, None)

    @property
    def is_exact(self) -> bool:
        """False only for non-integer powers."""
        return self.kind is not MultiplicativeKind.POWER or isinstance(self.alpha, int)

    @property
    def is_power(self) -> bool:
        return self.kind is MultiplicativeKind.POWER

    def evaluate(self, x: Scalar) -> Scalar:
        """
        Evaluate at a point of [0, 1].

        Raises:
            MapError: ``out-of-interval``.
        """
        check_unit_interval(x)
        zero = x * 0
        if self.kind is MultiplicativeKind.SUPPORT_INDICATOR:
            return zero if x.is_zero() else zero + 1
        if self.kind is MultiplicativeKind.ONE_AT_ONE:
            return zero + 1 if (x - 1).is_zero() else zero
        if x.is_float:
            if x.value <= 0.0:
                return zero
            return Scalar.from_float(min(x.value, 1.0) ** self.alpha)
        if x.is_zero():
            return zero
        if isinstance(self.alpha, int):
            return x ** self.alpha
        return Scalar.from_float(x.to_float() ** self.alpha)

    __call__ = evaluate

    def to_dict(self) -> Dict[str, Any]:
        """``{"alpha": α}`` for powers, ``{"kind": ...}`` otherwise."""
        if self.kind is MultiplicativeKind.POWER:
            return {"alpha": self.alpha}
        return {"kind": self.kind.value}

    def __str__(self) -> str:
        if self.kind is MultiplicativeKind.POWER:
            return f"Power({self.alpha})"
        return self.kind.value


def make_multiplicative(
    kind: Union[MultiplicativeKind, str], alpha: Any = None
) -> MultiplicativeMap:
    """
    Build a multiplicative map.

    Args:
        kind: A :class:`MultiplicativeKind` or its value string.
        alpha: Exponent, required for the power kind.

    Raises:
        MapError: ``nonpositive-exponent`` for α <= 0, ``unknown-kind``.
    """
    if isinstance(kind, str):
        try:
            kind = MultiplicativeKind(kind)
        except ValueError:
            raise MapError("unknown-kind", f"unknown multiplicative kind {kind!r}")
    return MultiplicativeMap(kind, alpha)


def eval_multiplicative(M: MultiplicativeMap, x: Scalar) -> Scalar:
    """Evaluate M at x, with 0^α := 0."""
    return M.evaluate(x)
