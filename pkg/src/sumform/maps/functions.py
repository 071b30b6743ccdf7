"""
Evaluable functions on I = [0, 1].

Every function that appears in an equation is one of a few declared forms,
so bundles serialize to JSON and reports can be reproduced:

- :class:`AffineAdditive`  ``a(x) + const``
- :class:`MultCombo`       ``scale*(M(x) - B(x)) + const``
- :class:`Transformed`     ``(inner(x) - x)/λ``
- :class:`Lifted`          ``x + λ*inner(x)``
- :class:`Table`           listed ``(x, y)`` pairs

Evaluation keeps exact points exact when every parameter of the function is
exact; otherwise the point is converted to a float first.
"""

from abc import ABC, abstractmethod
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sumform.errors import MapError, ScalarError, SpecError
from sumform.maps.additive import AdditiveMap
from sumform.maps.multiplicative import MultiplicativeKind, MultiplicativeMap, check_unit_interval
from sumform.scalar import Scalar, parse_scalar, promote


# Largest |x - key| a float argument may sit from a listed abscissa
TABLE_LOOKUP_TOLERANCE = 1e-12


def _scalar(value: Any) -> Scalar:
    return parse_scalar(value) if isinstance(value, str) else Scalar.of(value)


def _shift(value: Scalar, delta: Any) -> Scalar:
    value, d = promote(value, _scalar(delta))
    return value + d


class IntervalFunction(ABC):
    """
    Base class for functions I -> R.

    Subclasses implement ``_evaluate``, ``is_exact``, ``to_dict`` and
    ``shifted``; range checking and backend promotion happen here.
    """

    form: str = ""

    def evaluate(self, x: Scalar) -> Scalar:
        """
        Evaluate at a point of [0, 1].

        Raises:
            MapError: ``out-of-interval``, ``table-miss`` or
                ``nonlinear-additive-needs-exact``.
        """
        check_unit_interval(x)
        if x.is_exact and not self.is_exact:
            x = x.as_float()
        return self._evaluate(x)

    def __call__(self, x: Scalar) -> Scalar:
        return self.evaluate(x)

    @abstractmethod
    def _evaluate(self, x: Scalar) -> Scalar:
        """Evaluate at an already validated point."""
        pass

    @property
    @abstractmethod
    def is_exact(self) -> bool:
        """True when exact points give exact values."""
        pass

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """Function-spec JSON object."""
        pass

    @abstractmethod
    def shifted(self, delta: Any) -> 'IntervalFunction':
        """The same form with ``delta`` added to every value."""
        pass

    def memoized(self) -> 'MemoizedFunction':
        """Wrap in a value cache for repeated sweeps."""
        return MemoizedFunction(self)


@dataclass(frozen=True, eq=True)
class AffineAdditive(IntervalFunction):
    """
    ``a(x) + const`` with an additive map ``a``.

    Example::

        F = AffineAdditive(make_additive(2), Scalar.rational(1))
        F(Scalar.rational(1, 2))     # Scalar(2)
    """

    a: AdditiveMap
    const: Scalar = Scalar.rational(0)

    form = "affine_additive"

    def _evaluate(self, x: Scalar) -> Scalar:
        return self.a.evaluate(x) + self.const.like(x)

    @property
    def is_exact(self) -> bool:
        return self.a.is_exact and self.const.is_exact

    def to_dict(self) -> Dict[str, Any]:
        return {"form": self.form, "t": self.a.to_list(), "const": str(self.const)}

    def shifted(self, delta: Any) -> 'AffineAdditive':
        return AffineAdditive(self.a, _shift(self.const, delta))


@dataclass(frozen=True, eq=True)
class MultCombo(IntervalFunction):
    """
    ``scale*(M(x) - B(x)) + const``.

    Example::

        F = MultCombo(Scalar.rational(1), MultiplicativeMap.power(2))
        F(Scalar.rational(1, 2))     # Scalar(1/4)
    """

    scale: Scalar
    M: MultiplicativeMap
    B: AdditiveMap = AdditiveMap.zero()
    const: Scalar = Scalar.rational(0)

    form = "mult_combo"

    def _evaluate(self, x: Scalar) -> Scalar:
        inner = self.M.evaluate(x) - self.B.evaluate(x)
        return self.scale.like(x) * inner + self.const.like(x)

    @property
    def is_exact(self) -> bool:
        return self.scale.is_exact and self.M.is_exact and self.B.is_exact and self.const.is_exact

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"form": self.form, "scale": str(self.scale)}
        result.update(self.M.to_dict())
        result["B"] = self.B.to_list()
        result["const"] = str(self.const)
        return result

    def shifted(self, delta: Any) -> 'MultCombo':
        return MultCombo(self.scale, self.M, self.B, _shift(self.const, delta))


@dataclass(frozen=True, eq=True)
class Transformed(IntervalFunction):
    """
    ``(inner(x) - x)/λ``, turning a solution f of the product form into
    the matching h of the λ form.
    """

    inner: IntervalFunction
    lam: Scalar

    form = "transformed"

    def __post_init__(self):
        if self.lam.is_zero():
            raise MapError("lambda-zero", "transform parameter λ must be non-zero")

    def _evaluate(self, x: Scalar) -> Scalar:
        return (self.inner.evaluate(x) - x) / self.lam.like(x)

    @property
    def is_exact(self) -> bool:
        return self.inner.is_exact and self.lam.is_exact

    def to_dict(self) -> Dict[str, Any]:
        return {"form": self.form, "lambda": str(self.lam), "inner": self.inner.to_dict()}

    def shifted(self, delta: Any) -> 'Transformed':
        lam, d = promote(self.lam, _scalar(delta))
        return Transformed(self.inner.shifted(lam * d), self.lam)


@dataclass(frozen=True, eq=True)
class Lifted(IntervalFunction):
    """``x + λ*inner(x)``, the inverse of :class:`Transformed`."""

    inner: IntervalFunction
    lam: Scalar

    form = "lifted"

    def __post_init__(self):
        if self.lam.is_zero():
            raise MapError("lambda-zero", "transform parameter λ must be non-zero")

    def _evaluate(self, x: Scalar) -> Scalar:
        return x + self.lam.like(x) * self.inner.evaluate(x)

    @property
    def is_exact(self) -> bool:
        return self.inner.is_exact and self.lam.is_exact

    def to_dict(self) -> Dict[str, Any]:
        return {"form": self.form, "lambda": str(self.lam), "inner": self.inner.to_dict()}

    def shifted(self, delta: Any) -> 'Lifted':
        lam, d = promote(self.lam, _scalar(delta))
        return Lifted(self.inner.shifted(d / lam), self.lam)


@dataclass(frozen=True, eq=True)
class Table(IntervalFunction):
    """
    A function known only at listed abscissae.

    Example::

        T = Table.from_function(power_function(2), grid_abscissae(3, 3, 4))
        T(Scalar.rational(1, 4))     # Scalar(1/16)
        T(Scalar.rational(1, 3))     # MapError: table-miss
    """

    points: Tuple[Tuple[Scalar, Scalar], ...]
    _exact_index: Dict[Scalar, Scalar] = field(init=False, repr=False, compare=False, hash=False)
    _float_keys: Tuple[float, ...] = field(init=False, repr=False, compare=False, hash=False)
    _float_values: Tuple[Scalar, ...] = field(init=False, repr=False, compare=False, hash=False)

    form = "table"

    def __post_init__(self):
        exact_index: Dict[Scalar, Scalar] = {}
        by_float: Dict[float, Scalar] = {}
        for x, y in self.points:
            check_unit_interval(x)
            key = x.to_float()
            if key in by_float:
                raise MapError("duplicate-abscissa", f"abscissa {x} is listed twice")
            by_float[key] = y
            if x.is_exact:
                exact_index[x] = y
        keys = sorted(by_float)
        object.__setattr__(self, "_exact_index", exact_index)
        object.__setattr__(self, "_float_keys", tuple(keys))
        object.__setattr__(self, "_float_values", tuple(by_float[k] for k in keys))

    @classmethod
    def from_points(cls, points: Iterable[Tuple[Any, Any]]) -> 'Table':
        return cls(tuple((_scalar(x), _scalar(y)) for x, y in points))

    @classmethod
    def from_function(cls, F: IntervalFunction, abscissae: Iterable[Scalar]) -> 'Table':
        """Tabulate ``F`` at the given points."""
        return cls(tuple((x, F.evaluate(x)) for x in abscissae))

    def _nearest(self, value: float) -> Optional[Scalar]:
        # float products such as p_i*q_j can land a few ulps off the listed key
        keys = self._float_keys
        i = bisect_left(keys, value)
        for j in (i - 1, i):
            if 0 <= j < len(keys) and abs(keys[j] - value) <= TABLE_LOOKUP_TOLERANCE:
                return self._float_values[j]
        return None

    def _evaluate(self, x: Scalar) -> Scalar:
        y = self._exact_index.get(x) if x.is_exact else self._nearest(x.value)
        if y is None:
            raise MapError("table-miss", f"{x} is not a listed abscissa")
        return y.like(x)

    @property
    def is_exact(self) -> bool:
        return all(x.is_exact and y.is_exact for x, y in self.points)

    def to_dict(self) -> Dict[str, Any]:
        return {"form": self.form, "points": [[str(x), str(y)] for x, y in self.points]}

    def shifted(self, delta: Any) -> 'Table':
        return Table(tuple((x, _shift(y, delta)) for x, y in self.points))


class MemoizedFunction(IntervalFunction):
    """Caches the values of another function; serializes as that function."""

    def __init__(self, inner: IntervalFunction):
        self.inner = inner.inner if isinstance(inner, MemoizedFunction) else inner
        self.form = self.inner.form
        self._cache: Dict[Scalar, Scalar] = {}

    def evaluate(self, x: Scalar) -> Scalar:
        y = self._cache.get(x)
        if y is None:
            y = self.inner.evaluate(x)
            self._cache[x] = y
        return y

    def _evaluate(self, x: Scalar) -> Scalar:
        return self.inner._evaluate(x)

    @property
    def is_exact(self) -> bool:
        return self.inner.is_exact

    def to_dict(self) -> Dict[str, Any]:
        return self.inner.to_dict()

    def shifted(self, delta: Any) -> IntervalFunction:
        return self.inner.shifted(delta)

    def memoized(self) -> 'MemoizedFunction':
        return self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MemoizedFunction):
            return self.inner == other.inner
        return self.inner == other

    def __hash__(self) -> int:
        return hash(self.inner)

    def __repr__(self) -> str:
        return f"MemoizedFunction({self.inner!r})"


def unwrap(F: IntervalFunction) -> IntervalFunction:
    """Strip a memo cache."""
    return F.inner if isinstance(F, MemoizedFunction) else F


# ----------------------------------------------------------------------
# Common functions
# ----------------------------------------------------------------------

def identity_function() -> AffineAdditive:
    """x -> x."""
    return AffineAdditive(AdditiveMap.identity())


def constant_function(c: Any) -> AffineAdditive:
    """x -> c."""
    return AffineAdditive(AdditiveMap.zero(), _scalar(c))


def power_function(alpha: Any, scale: Any = 1) -> MultCombo:
    """x -> scale * x^α (0 at 0)."""
    return MultCombo(_scalar(scale), MultiplicativeMap.power(alpha))


def eval_interval_function(F: IntervalFunction, x: Scalar) -> Scalar:
    """
    Evaluate any declared function form at x.

    Example::

        h = Transformed(power_function(2), Scalar.rational(-1, 2))
        eval_interval_function(h, Scalar.rational(1, 2))   # Scalar(1/2)
    """
    return F.evaluate(x)


# ----------------------------------------------------------------------
# Function-spec JSON
# ----------------------------------------------------------------------

FORMS = ("affine_additive", "mult_combo", "transformed", "lifted", "table")


def _require(data: Dict[str, Any], key: str, pointer: str) -> Any:
    if key not in data:
        raise SpecError("schema-violation", f"missing key {key!r}", f"{pointer}/{key}")
    return data[key]


def _spec_scalar(value: Any, pointer: str) -> Scalar:
    if not isinstance(value, str):
        raise SpecError("schema-violation", "scalars must be given in text form", pointer)
    try:
        return parse_scalar(value)
    except ScalarError as e:
        raise SpecError("schema-violation", e.message, pointer)


def _spec_additive(value: Any, pointer: str) -> AdditiveMap:
    if not isinstance(value, list) or len(value) != 4:
        raise SpecError("schema-violation", "additive maps need a list of 4 scalars", pointer)
    coords = [_spec_scalar(v, f"{pointer}/{i}") for i, v in enumerate(value)]
    try:
        return AdditiveMap((coords[0], coords[1], coords[2], coords[3]))
    except MapError as e:
        raise SpecError("schema-violation", e.message, pointer)


def _spec_multiplicative(data: Dict[str, Any], pointer: str) -> MultiplicativeMap:
    if "alpha" in data:
        alpha = data["alpha"]
        if isinstance(alpha, bool) or not isinstance(alpha, (int, float)):
            raise SpecError("schema-violation", "alpha must be a number", f"{pointer}/alpha")
        try:
            return MultiplicativeMap.power(alpha)
        except MapError as e:
            raise SpecError("schema-violation", e.message, f"{pointer}/alpha")
    if "kind" in data:
        kind = data["kind"]
        if kind == MultiplicativeKind.SUPPORT_INDICATOR.value:
            return MultiplicativeMap.support_indicator()
        if kind == MultiplicativeKind.ONE_AT_ONE.value:
            return MultiplicativeMap.one_at_one()
        raise SpecError(
            "schema-violation", f"unknown multiplicative kind {kind!r}", f"{pointer}/kind"
        )
    raise SpecError("schema-violation", "mult_combo needs 'alpha' or 'kind'", f"{pointer}/alpha")


def _spec_lambda(data: Dict[str, Any], pointer: str) -> Scalar:
    lam = _spec_scalar(_require(data, "lambda", pointer), f"{pointer}/lambda")
    if lam.is_zero():
        raise SpecError("schema-violation", "lambda must be non-zero", f"{pointer}/lambda")
    return lam


def function_from_dict(data: Any, pointer: str = "") -> IntervalFunction:
    """
    Build a function from its spec object.

    Args:
        data: Decoded JSON object.
        pointer: JSON pointer of ``data`` inside a larger document.

    Raises:
        SpecError: ``schema-violation`` or ``unknown-form``, with the pointer
            of the offending value.
    """
    if not isinstance(data, dict):
        raise SpecError("schema-violation", "a function spec must be an object", pointer)
    form = _require(data, "form", pointer)
    if form not in FORMS:
        raise SpecError("unknown-form", f"unknown function form {form!r}", f"{pointer}/form")

    if form == "affine_additive":
        a = _spec_additive(_require(data, "t", pointer), f"{pointer}/t")
        const = _spec_scalar(_require(data, "const", pointer), f"{pointer}/const")
        return AffineAdditive(a, const)
    if form == "mult_combo":
        scale = _spec_scalar(_require(data, "scale", pointer), f"{pointer}/scale")
        M = _spec_multiplicative(data, pointer)
        B = _spec_additive(_require(data, "B", pointer), f"{pointer}/B")
        const = _spec_scalar(_require(data, "const", pointer), f"{pointer}/const")
        return MultCombo(scale, M, B, const)
    if form in ("transformed", "lifted"):
        lam = _spec_lambda(data, pointer)
        inner = function_from_dict(_require(data, "inner", pointer), f"{pointer}/inner")
        return Transformed(inner, lam) if form == "transformed" else Lifted(inner, lam)

    points = _require(data, "points", pointer)
    if not isinstance(points, list) or not points:
        raise SpecError("schema-violation", "points must be a non-empty list", f"{pointer}/points")
    parsed: List[Tuple[Scalar, Scalar]] = []
    for i, pair in enumerate(points):
        where = f"{pointer}/points/{i}"
        if not isinstance(pair, list) or len(pair) != 2:
            raise SpecError("schema-violation", "each point is a pair [x, y]", where)
        parsed.append((_spec_scalar(pair[0], f"{where}/0"), _spec_scalar(pair[1], f"{where}/1")))
    try:
        return Table(tuple(parsed))
    except MapError as e:
        raise SpecError("schema-violation", e.message, f"{pointer}/points")


def functions_from_list(
    data: Any, pointer: str, expected: Optional[int] = None
) -> List[IntervalFunction]:
    """Parse a JSON list of function specs."""
    if not isinstance(data, list):
        raise SpecError("schema-violation", "expected a list of function specs", pointer)
    if expected is not None and len(data) != expected:
        raise SpecError(
            "schema-violation", f"expected {expected} functions, got {len(data)}", pointer
        )
    return [function_from_dict(item, f"{pointer}/{i}") for i, item in enumerate(data)]


def functions_to_list(functions: Sequence[IntervalFunction]) -> List[Dict[str, Any]]:
    return [F.to_dict() for F in functions]
