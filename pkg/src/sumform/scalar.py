"""
Exact arithmetic in the field Q(√2, √3) with a float fallback.

An exact :class:`Scalar` is ``c0 + c1*√2 + c2*√3 + c3*√6`` with rational
coordinates, so a residual that is zero is zero by construction and not
merely small. A float scalar wraps a 64-bit value. The two backends never
mix silently.
"""

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Any, List, Tuple

import mpmath

from sumform.errors import FieldDivisionError, ScalarError

Coords = Tuple[Fraction, Fraction, Fraction, Fraction]

_ZERO = Fraction(0)
_ZERO_COORDS: Coords = (_ZERO, _ZERO, _ZERO, _ZERO)

# Text labels and radicands of the basis (1, √2, √3, √6)
BASIS_LABELS = ("1", "r2", "r3", "r6")
_RADICANDS = (1, 2, 3, 6)


def _basis_product(i: int, j: int) -> Tuple[int, int]:
    """Return (factor, k) with e_i * e_j = factor * e_k."""
    a, b = _RADICANDS[i], _RADICANDS[j]
    g = math.gcd(a, b)
    return g, _RADICANDS.index(a * b // (g * g))


_PRODUCT_TABLE = [[_basis_product(i, j) for j in range(4)] for i in range(4)]


class Backend(Enum):
    """Arithmetic backend of a scalar."""
    EXACT = "exact"
    FLOAT = "float"


@dataclass(frozen=True)
class Scalar:
    """
    An element of Q(√2, √3) or a float.

    Use the class constructors rather than the raw fields.

    Attributes:
        backend: ``Backend.EXACT`` or ``Backend.FLOAT``.
        coords: Rational coordinates on (1, √2, √3, √6); exact backend only.
        value: The float value; float backend only.

    Example::

        half = Scalar.rational(1, 2)
        r = Scalar.exact(0, Fraction(1, 2))      # √2/2
        assert r * r == half
        assert str(1 - r) == "1 - 1/2*r2"
    """

    backend: Backend = Backend.EXACT
    coords: Coords = _ZERO_COORDS
    value: float = 0.0

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def exact(cls, c0: Any = 0, c1: Any = 0, c2: Any = 0, c3: Any = 0) -> 'Scalar':
        """
        Create an exact scalar ``c0 + c1*√2 + c2*√3 + c3*√6``.

        Args:
            c0, c1, c2, c3: Integers, Fractions or rational strings ("1/2").
        """
        coords = []
        for c in (c0, c1, c2, c3):
            if isinstance(c, float):
                raise ScalarError(
                    "backend-mismatch", "exact coordinates must be rational, got a float"
                )
            try:
                coords.append(Fraction(c))
            except ZeroDivisionError:
                raise ScalarError("zero-denominator", f"coordinate {c!r} has a zero denominator")
            except (TypeError, ValueError):
                raise ScalarError("parse-error", f"not a rational coordinate: {c!r}")
        return cls(Backend.EXACT, (coords[0], coords[1], coords[2], coords[3]))

    @classmethod
    def rational(cls, num: int, den: int = 1) -> 'Scalar':
        """Create the reduced exact rational ``num/den``."""
        if den == 0:
            raise ScalarError("zero-denominator", f"{num}/{den}")
        return cls(Backend.EXACT, (Fraction(num, den), _ZERO, _ZERO, _ZERO))

    @classmethod
    def from_float(cls, value: float) -> 'Scalar':
        """Create a float-backend scalar."""
        return cls(Backend.FLOAT, _ZERO_COORDS, float(value))

    @classmethod
    def of(cls, x: Any) -> 'Scalar':
        """
        Coerce a Python number or text form into a scalar.

        Integers and Fractions become exact, floats become float scalars and
        strings are parsed with :func:`parse_scalar`.
        """
        if isinstance(x, Scalar):
            return x
        if isinstance(x, bool):
            raise ScalarError("parse-error", "booleans are not scalars")
        if isinstance(x, Rational):
            return cls(Backend.EXACT, (Fraction(x), _ZERO, _ZERO, _ZERO))
        if isinstance(x, float):
            return cls.from_float(x)
        if isinstance(x, str):
            return parse_scalar(x)
        raise ScalarError("parse-error", f"cannot convert {type(x).__name__} to a scalar")

    # ------------------------------------------------------------------
    # Properties
    # ------------------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.backend is Backend.EXACT

    @property
    def is_float(self) -> bool:
        return self.backend is Backend.FLOAT

    @property
    def is_rational(self) -> bool:
        """True for exact scalars with no √2, √3, √6 component."""
        c = self.coords
        return self.is_exact and not (c[1] or c[2] or c[3])

    def rational_value(self) -> Fraction:
        """Return the value as a Fraction; only for rational scalars."""
        if not self.is_rational:
            raise ScalarError("not-rational", f"{self} is not a rational number")
        return self.coords[0]

    def is_zero(self) -> bool:
        if self.is_float:
            return self.value == 0.0
        c = self.coords
        return not (c[0] or c[1] or c[2] or c[3])

    def sign(self) -> int:
        """Exact sign (-1, 0 or +1); see :func:`field_sign`."""
        return field_sign(self)

    # ------------------------------------------------------------------
    # Backend conversion
    # ------------------------------------------------------------------

    def to_float(self) -> float:
        """Nearest float, accurate even when the coordinates cancel."""
        if self.is_float:
            return self.value
        c = self.coords
        if not (c[1] or c[2] or c[3]):
            return float(c[0])
        return _precise_float(c)

    def as_float(self) -> 'Scalar':
        """Convert to the float backend."""
        if self.is_float:
            return self
        return Scalar.from_float(self.to_float())

    def like(self, other: 'Scalar') -> 'Scalar':
        """
        Move this scalar to the backend of ``other``.

        Exact values may be converted to floats; the reverse is an error.
        """
        if self.backend is other.backend:
            return self
        if other.is_float:
            return self.as_float()
        raise ScalarError("backend-mismatch", f"cannot make float {self.value!r} exact")

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _coerce(self, other: Any) -> Any:
        if isinstance(other, Scalar):
            if other.backend is not self.backend:
                raise ScalarError(
                    "backend-mismatch",
                    f"cannot combine {self.backend.value} and {other.backend.value} scalars",
                )
            return other
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, Rational):
            if self.is_float:
                return Scalar.from_float(float(other))
            return Scalar(Backend.EXACT, (Fraction(other), _ZERO, _ZERO, _ZERO))
        if isinstance(other, float):
            if self.is_float:
                return Scalar.from_float(other)
            raise ScalarError(
                "backend-mismatch", f"cannot combine exact scalar with float {other!r}"
            )
        return NotImplemented

    def __add__(self, other: Any) -> 'Scalar':
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_float:
            return Scalar.from_float(self.value + o.value)
        a, b = self.coords, o.coords
        return Scalar(Backend.EXACT, (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]))

    __radd__ = __add__

    def __neg__(self) -> 'Scalar':
        if self.is_float:
            return Scalar.from_float(-self.value)
        a = self.coords
        return Scalar(Backend.EXACT, (-a[0], -a[1], -a[2], -a[3]))

    def __sub__(self, other: Any) -> 'Scalar':
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other: Any) -> 'Scalar':
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other: Any) -> 'Scalar':
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_float:
            return Scalar.from_float(self.value * o.value)
        return Scalar(Backend.EXACT, _field_product(self.coords, o.coords))

    __rmul__ = __mul__

    def inverse(self) -> 'Scalar':
        """
        Multiplicative inverse.

        Uses the conjugate over Q(√2) and then over Q, so the denominator
        is rational.
        """
        if self.is_zero():
            raise FieldDivisionError(f"cannot invert {self}")
        if self.is_float:
            return Scalar.from_float(1.0 / self.value)
        c0, c1, c2, c3 = self.coords
        conj3 = (c0, c1, -c2, -c3)
        w, z, _, _ = _field_product(self.coords, conj3)
        conj2 = (w, -z, _ZERO, _ZERO)
        norm = w * w - 2 * z * z
        num = _field_product(conj3, conj2)
        return Scalar(Backend.EXACT, (num[0] / norm, num[1] / norm, num[2] / norm, num[3] / norm))

    def __truediv__(self, other: Any) -> 'Scalar':
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_rational and not o.is_zero():
            q = o.coords[0]
            a = self.coords
            return Scalar(Backend.EXACT, (a[0] / q, a[1] / q, a[2] / q, a[3] / q))
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> 'Scalar':
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, exponent: int) -> 'Scalar':
        if isinstance(exponent, bool) or not isinstance(exponent, int):
            raise ScalarError("non-integer-exponent", "only integer powers are defined on scalars")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if self.is_float:
            return Scalar.from_float(self.value ** exponent)
        result = Scalar.rational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __abs__(self) -> 'Scalar':
        return -self if self.sign() < 0 else self

    # ------------------------------------------------------------------
    # Ordering
    # ------------------------------------------------------------------

    def compare(self, other: Any) -> int:
        """Sign of ``self - other``."""
        return (self - other).sign()

    def __lt__(self, other: Any) -> bool:
        return self.compare(other) < 0

    def __le__(self, other: Any) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: Any) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: Any) -> bool:
        return self.compare(other) >= 0

    def __float__(self) -> float:
        return self.to_float()

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        if self.is_float:
            return f"Scalar({self.value!r}, float)"
        return f"Scalar({format_scalar(self)})"


def _field_product(a: Coords, b: Coords) -> Coords:
    if not (a[1] or a[2] or a[3]):
        x = a[0]
        return (x * b[0], x * b[1], x * b[2], x * b[3])
    if not (b[1] or b[2] or b[3]):
        y = b[0]
        return (a[0] * y, a[1] * y, a[2] * y, a[3] * y)
    out = [_ZERO, _ZERO, _ZERO, _ZERO]
    for i, x in enumerate(a):
        if not x:
            continue
        row = _PRODUCT_TABLE[i]
        for j, y in enumerate(b):
            if y:
                factor, k = row[j]
                out[k] += factor * x * y
    return (out[0], out[1], out[2], out[3])


# ----------------------------------------------------------------------
# Multi-precision evaluation
# ----------------------------------------------------------------------

def _magnitude(coords: Coords) -> Fraction:
    return sum((abs(c) for c in coords), _ZERO)


def _mp_value(coords: Coords) -> Any:
    total = mpmath.mpf(0)
    for c, radicand in zip(coords, _RADICANDS):
        if c:
            term = mpmath.mpf(c.numerator) / c.denominator
            if radicand != 1:
                term *= mpmath.sqrt(radicand)
            total += term
    return total


def _precise_float(coords: Coords) -> float:
    prec = 72 + math.ceil(_magnitude(coords)).bit_length()
    with mpmath.mp.workprec(prec):
        return float(_mp_value(coords))


# ----------------------------------------------------------------------
# Module-level operations
# ----------------------------------------------------------------------

def make_rational(num: int, den: int = 1) -> Scalar:
    """
    Create a reduced exact rational scalar.

    Raises:
        ScalarError: ``zero-denominator`` when ``den == 0``.

    Example::

        make_rational(2, 4)   # Scalar(1/2)
    """
    return Scalar.rational(num, den)


def field_mul(a: Scalar, b: Scalar) -> Scalar:
    """Exact product using √2·√3 = √6, √2·√6 = 2√3, √3·√6 = 3√2."""
    return a * b


def field_sign(a: Scalar) -> int:
    """
    Exact sign of ``c0 + c1*√2 + c2*√3 + c3*√6``.

    Rational values are decided directly. Otherwise the value is evaluated
    at 64, 128, 256, ... bits until it clears the accumulated rounding
    bound; this terminates because 1, √2, √3, √6 are linearly independent
    over Q, so a non-zero coordinate vector never evaluates to zero.
    """
    if a.is_float:
        return (a.value > 0) - (a.value < 0)
    c = a.coords
    if not (c[1] or c[2] or c[3]):
        return (c[0] > 0) - (c[0] < 0)
    scale = _magnitude(c)
    prec = 64
    while True:
        with mpmath.mp.workprec(prec):
            v = _mp_value(c)
            magnitude = mpmath.mpf(scale.numerator) / scale.denominator
            bound = 3 * magnitude * mpmath.ldexp(1, 8 - prec)
            if v > bound:
                return 1
            if v < -bound:
                return -1
        prec *= 2


def to_float(a: Scalar) -> float:
    """Float value of a scalar."""
    return a.to_float()


def promote(*values: Scalar) -> Tuple[Scalar, ...]:
    """
    Bring parameters to one backend: all floats if any of them is a float.

    Arithmetic never mixes backends on its own; constructors call this
    explicitly when a float parameter meets exact defaults.

    Example::

        lam, h1 = promote(Scalar.from_float(-0.29), Scalar.rational(0))
        1 + lam * h1                # Scalar(1.0)
    """
    if all(v.is_exact for v in values):
        return tuple(values)
    return tuple(v.as_float() for v in values)


# ----------------------------------------------------------------------
# Text form
# ----------------------------------------------------------------------

_TERM = re.compile(r"([+-])?(?:(\d+(?:/\d+)?)(?:\*(r[236]))?|(r[236]))")


def format_scalar(a: Scalar) -> str:
    """
    Shortest text form, e.g. ``"1/2"``, ``"1 - 1/2*r2"``, ``"r6"``.

    Float scalars print with ``repr`` so parsing restores the same bits.
    """
    if a.is_float:
        return repr(a.value)
    parts: List[Tuple[str, str]] = []
    for c, label in zip(a.coords, BASIS_LABELS):
        if not c:
            continue
        mag = abs(c)
        if label == "1":
            body = str(mag)
        elif mag == 1:
            body = label
        else:
            body = f"{mag}*{label}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def _looks_like_float(s: str) -> bool:
    if "r" in s:
        return False
    low = s.lower().lstrip("+-")
    return "." in low or "e" in low or low in ("inf", "nan")


def parse_scalar(text: str) -> Scalar:
    """
    Parse the text form produced by :func:`format_scalar`.

    Accepts ``"1/2"``, ``"-3"``, ``"1/2*r2"``, ``"r3"``, ``"1 - 1/2*r2"``
    and float literals such as ``"0.5"`` (float backend).

    Raises:
        ScalarError: ``parse-error`` or ``zero-denominator``.
    """
    if not isinstance(text, str):
        raise ScalarError("parse-error", f"expected text, got {type(text).__name__}")
    s = text.replace(" ", "")
    if not s:
        raise ScalarError("parse-error", "empty scalar text")
    if _looks_like_float(s):
        try:
            return Scalar.from_float(float(s))
        except ValueError:
            raise ScalarError("parse-error", f"invalid float literal {text!r}")
    coords = [_ZERO, _ZERO, _ZERO, _ZERO]
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ScalarError("parse-error", f"cannot parse {text!r} at position {pos}")
        sign, coef, label, bare_label = m.groups()
        if pos > 0 and sign is None:
            raise ScalarError("parse-error", f"missing sign between terms in {text!r}")
        try:
            value = Fraction(coef) if coef else Fraction(1)
        except ZeroDivisionError:
            raise ScalarError("zero-denominator", f"coefficient {coef!r} in {text!r}")
        if sign == "-":
            value = -value
        coords[BASIS_LABELS.index(label or bare_label or "1")] += value
        pos = m.end()
    return Scalar(Backend.EXACT, (coords[0], coords[1], coords[2], coords[3]))


ZERO = Scalar.rational(0)
ONE = Scalar.rational(1)
HALF = Scalar.rational(1, 2)
SQRT2 = Scalar.exact(0, 1)
SQRT3 = Scalar.exact(0, 0, 1)
SQRT6 = Scalar.exact(0, 0, 0, 1)
