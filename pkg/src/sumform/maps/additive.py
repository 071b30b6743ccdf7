"""
Additive maps on the scalar field.

An additive map is fixed by its values on the basis (1, √2, √3, √6). With
a zero tail it is the linear map x -> t0*x; a non-zero tail gives a map
that is additive but not linear, the finite analogue of a Hamel-basis
solution of Cauchy's equation.
"""

from dataclasses import dataclass
from typing import Any, List, Sequence, Tuple

from sumform.errors import MapError
from sumform.scalar import Scalar, parse_scalar, promote


def _to_scalar(value: Any) -> Scalar:
    if isinstance(value, str):
        return parse_scalar(value)
    return Scalar.of(value)


@dataclass(frozen=True)
class AdditiveMap:
    """
    A Q-linear map determined by ``(t0, t1, t2, t3)``.

    ``A(c0 + c1*√2 + c2*√3 + c3*√6) = t0*c0 + t1*c1 + t2*c2 + t3*c3``.

    Attributes:
        basis_values: Values at 1, √2, √3, √6.

    Example::

        a = make_additive(0, 7, 0, 0)
        a.at_one                                  # Scalar(0)
        a(Scalar.exact(0, "1/2"))                 # Scalar(7/2)
    """

    basis_values: Tuple[Scalar, Scalar, Scalar, Scalar]

    def __post_init__(self):
        if len(self.basis_values) != 4:
            raise MapError("invalid-additive", f"need 4 basis values, got {len(self.basis_values)}")
        if any(t.is_float for t in self.basis_values) and not self.is_linear:
            raise MapError(
                "nonlinear-additive-needs-exact", "a non-linear additive map needs exact values"
            )

    @classmethod
    def from_values(cls, t0: Any = 0, t1: Any = 0, t2: Any = 0, t3: Any = 0) -> 'AdditiveMap':
        values = [_to_scalar(t) for t in (t0, t1, t2, t3)]
        return cls((values[0], values[1], values[2], values[3]))

    @classmethod
    def zero(cls) -> 'AdditiveMap':
        return cls.from_values()

    @classmethod
    def identity(cls) -> 'AdditiveMap':
        return cls.from_values(1)

    @classmethod
    def linear(cls, slope: Any) -> 'AdditiveMap':
        """The measurable map x -> slope*x."""
        return cls.from_values(slope)

    @property
    def at_one(self) -> Scalar:
        """A(1), the value on the rational direction."""
        return self.basis_values[0]

    @property
    def tail(self) -> Tuple[Scalar, Scalar, Scalar]:
        """Values on the irrational directions √2, √3, √6."""
        return self.basis_values[1], self.basis_values[2], self.basis_values[3]

    @property
    def is_linear(self) -> bool:
        return all(t.is_zero() for t in self.tail)

    @property
    def is_exact(self) -> bool:
        return all(t.is_exact for t in self.basis_values)

    def evaluate(self, x: Scalar) -> Scalar:
        """
        Apply the map.

        Raises:
            MapError: ``nonlinear-additive-needs-exact`` for a float argument
                to a map with a non-zero tail.
        """
        if x.is_float:
            if not self.is_linear:
                raise MapError(
                    "nonlinear-additive-needs-exact",
                    "non-linear additive maps only accept exact arguments",
                )
            return self.at_one.like(x) * x
        if not self.is_exact:
            return self.at_one * x.as_float()
        result = Scalar.rational(0)
        for t, c in zip(self.basis_values, x.coords):
            if c:
                result = result + t * c
        return result

    __call__ = evaluate

    def __add__(self, other: 'AdditiveMap') -> 'AdditiveMap':
        v = promote(*self.basis_values, *other.basis_values)
        return AdditiveMap((v[0] + v[4], v[1] + v[5], v[2] + v[6], v[3] + v[7]))

    def __neg__(self) -> 'AdditiveMap':
        a = self.basis_values
        return AdditiveMap((-a[0], -a[1], -a[2], -a[3]))

    def __sub__(self, other: 'AdditiveMap') -> 'AdditiveMap':
        return self + (-other)

    def scaled(self, factor: Any) -> 'AdditiveMap':
        """Pointwise multiple ``factor * A``."""
        s, *a = promote(_to_scalar(factor), *self.basis_values)
        return AdditiveMap((s * a[0], s * a[1], s * a[2], s * a[3]))

    def with_value_at_one(self, value: Any) -> 'AdditiveMap':
        """Same tail, new A(1)."""
        a = self.basis_values
        return AdditiveMap((_to_scalar(value), a[1], a[2], a[3]))

    def to_list(self) -> List[str]:
        return [str(t) for t in self.basis_values]

    @classmethod
    def from_list(cls, values: Sequence[Any]) -> 'AdditiveMap':
        if len(values) != 4:
            raise MapError("invalid-additive", f"need 4 basis values, got {len(values)}")
        return cls.from_values(*values)

    def __str__(self) -> str:
        return "A[" + ", ".join(self.to_list()) + "]"


def make_additive(t0: Any = 0, t1: Any = 0, t2: Any = 0, t3: Any = 0) -> AdditiveMap:
    """
    Additive map with the given basis values.

    Example::

        make_additive(2)          # x -> 2x on rationals
        make_additive(0, 7)       # zero at 1, 7 at √2: additive, not linear
    """
    return AdditiveMap.from_values(t0, t1, t2, t3)


def eval_additive(a: AdditiveMap, x: Scalar) -> Scalar:
    """``t0*c0 + t1*c1 + t2*c2 + t3*c3`` for x = (c0, c1, c2, c3)."""
    return a.evaluate(x)
