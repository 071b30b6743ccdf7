"""
Solution families of the sum-form equations.

Each constructor builds the functions of one solution family, checks the
side conditions attached to it and returns a :class:`SolutionBundle` that
can be verified, serialized and classified.

Families:

- ``3.1i``, ``3.1ii``, ``3.3``: the equation with φ(0) term (1.11)
- ``4.1``, ``4.2``, ``4.4``: the product equation (1.10)
- ``5.1``, ``5.2``, ``5.4``: the λ equation (1.8), obtained from the
  product equation through f(x) = x + λ h(x)
- ``R1``, ``R2``: the constant-sum equations (2.1) and (2.3)

Example::

    bundle = theorem2_construct("4.4", 3, 3, {"M": MultiplicativeMap.power(2)})
    report = verify_over_grid(bundle.spec(), bundle, d=6)
    report.max_abs_residual    # Scalar(0)
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from sumform.equations import EquationId, EquationSpec, FamilyTag
from sumform.errors import FamilyError, ScalarError, SpecError
from sumform.maps.additive import AdditiveMap
from sumform.maps.functions import (
    AffineAdditive, IntervalFunction, Lifted, MultCombo, Transformed,
    function_from_dict, functions_from_list, power_function, unwrap,
)
from sumform.maps.multiplicative import MultiplicativeMap
from sumform.scalar import Scalar, parse_scalar, promote

logger = logging.getLogger(__name__)

# Function names and list sizes per equation: "1" is a single function,
# "n", "m", "nm" are lists of that length.
FUNCTION_LAYOUT: Dict[EquationId, Tuple[Tuple[str, str], ...]] = {
    EquationId.EQ110: (("f", "1"), ("g", "m")),
    EquationId.EQ18: (("h", "1"), ("k", "m")),
    EquationId.EQ15: (("h", "1"),),
    EquationId.EQ111: (("phi", "1"),),
    EquationId.EQ21: (("psi", "1"),),
    EquationId.EQ23: (("psi", "m"),),
    EquationId.EQ17: (("f", "nm"), ("h", "n"), ("k", "m")),
}

# Exponent of the default "arbitrary" g_j / k_j
ARBITRARY_POWER = 3

DEFAULT_PERTURBATION = Scalar.rational(1, 10)


def _scalar(value: Any) -> Scalar:
    return parse_scalar(value) if isinstance(value, str) else Scalar.of(value)


def _jsonify(value: Any) -> Any:
    if isinstance(value, Scalar):
        return str(value)
    if isinstance(value, AdditiveMap):
        return value.to_list()
    if isinstance(value, MultiplicativeMap):
        return value.to_dict()
    if isinstance(value, IntervalFunction):
        return value.to_dict()
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, dict):
        return {key: _jsonify(v) for key, v in value.items()}
    return value


@dataclass(frozen=True)
class SolutionBundle:
    """
    The functions of one (candidate) solution of an equation.

    Attributes:
        equation: Equation the functions are meant to solve.
        family: Constructing family, ``FamilyTag.NONE`` for arbitrary input.
        n: Length of p (k for 2.1).
        m: Length of q.
        functions: Name -> function or tuple of functions, per FUNCTION_LAYOUT.
        params: Raw constructor parameters in JSON-ready form.
        lam: λ for 1.5, 1.7, 1.8.
        constant: c for 2.1.
    """

    equation: EquationId
    family: FamilyTag
    n: int
    m: int
    functions: Dict[str, Any]
    params: Dict[str, Any] = field(default_factory=dict)
    lam: Optional[Scalar] = None
    constant: Optional[Scalar] = None

    def __post_init__(self):
        sizes = {"1": 1, "n": self.n, "m": self.m, "nm": self.n * self.m}
        layout = FUNCTION_LAYOUT[self.equation]
        expected = [name for name, _ in layout]
        if sorted(self.functions) != sorted(expected):
            raise FamilyError(
                "arity-mismatch",
                f"equation {self.equation.value} needs functions {expected}, "
                f"got {sorted(self.functions)}",
            )
        functions: Dict[str, Any] = {}
        for name, size in layout:
            value = self.functions[name]
            if size == "1":
                if not isinstance(value, IntervalFunction):
                    raise FamilyError("arity-mismatch", f"{name} must be a single function")
                functions[name] = value
            else:
                if isinstance(value, IntervalFunction) or len(value) != sizes[size]:
                    raise FamilyError("arity-mismatch", f"{name} must list {sizes[size]} functions")
                functions[name] = tuple(value)
        object.__setattr__(self, "functions", functions)
        if self.equation.needs_lambda:
            if self.lam is None or self.lam.is_zero():
                raise FamilyError(
                    "lambda-zero", f"equation {self.equation.value} needs a non-zero λ"
                )

    def spec(self) -> EquationSpec:
        """The equation instance this bundle is checked against."""
        return EquationSpec(self.equation, self.n, self.m, self.lam, self.constant)

    def all_functions(self) -> List[IntervalFunction]:
        result: List[IntervalFunction] = []
        for name, size in FUNCTION_LAYOUT[self.equation]:
            value = self.functions[name]
            result.extend([value] if size == "1" else value)
        return result

    @property
    def is_exact(self) -> bool:
        """True when every function and λ evaluate exactly."""
        if self.lam is not None and not self.lam.is_exact:
            return False
        if self.constant is not None and not self.constant.is_exact:
            return False
        return all(F.is_exact for F in self.all_functions())

    def _with_functions(self, functions: Dict[str, Any], **changes: Any) -> 'SolutionBundle':
        values = dict(
            equation=self.equation, family=self.family, n=self.n, m=self.m,
            functions=functions, params=dict(self.params), lam=self.lam, constant=self.constant,
        )
        values.update(changes)
        return SolutionBundle(**values)

    def memoized(self) -> 'SolutionBundle':
        """Same bundle with value caches on every function."""
        functions = {
            name: (
                value.memoized()
                if isinstance(value, IntervalFunction)
                else tuple(F.memoized() for F in value)
            )
            for name, value in self.functions.items()
        }
        return self._with_functions(functions)

    def perturbed(self, delta: Any = DEFAULT_PERTURBATION) -> 'SolutionBundle':
        """
        Add ``delta`` to the first function (negative control).

        The family tag is cleared and the shift recorded in ``params``.
        """
        d = _scalar(delta)
        first_name, size = FUNCTION_LAYOUT[self.equation][0]
        functions = dict(self.functions)
        value = functions[first_name]
        if size == "1":
            functions[first_name] = unwrap(value).shifted(d)
        else:
            functions[first_name] = (unwrap(value[0]).shifted(d),) + tuple(value[1:])
        params = dict(self.params)
        params["perturbation"] = str(d)
        params["source_family"] = self.family.value
        return self._with_functions(functions, family=FamilyTag.NONE, params=params)

    def to_dict(self) -> Dict[str, Any]:
        """JSON form; function specs follow the function-spec schema."""
        result: Dict[str, Any] = {
            "equation": self.equation.value,
            "family": self.family.value,
            "n": self.n,
            "m": self.m,
        }
        if self.lam is not None:
            result["lambda"] = str(self.lam)
        if self.constant is not None:
            result["c"] = str(self.constant)
        result["params"] = _jsonify(self.params)
        functions: Dict[str, Any] = {}
        for name, size in FUNCTION_LAYOUT[self.equation]:
            value = self.functions[name]
            functions[name] = value.to_dict() if size == "1" else [F.to_dict() for F in value]
        result["functions"] = functions
        return result

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SolutionBundle':
        """
        Rebuild a bundle from :meth:`to_dict` output.

        Raises:
            SpecError: when a function spec is malformed.
            FamilyError, EquationError: when the bundle itself is inconsistent.
        """
        if not isinstance(data, dict):
            raise SpecError("schema-violation", "a bundle must be an object", "")
        for key in ("equation", "n", "m", "functions"):
            if key not in data:
                raise SpecError("schema-violation", f"missing key {key!r}", f"/{key}")
        equation = EquationId.parse(data["equation"])
        family = FamilyTag.parse(data.get("family", "none"))
        n, m = data["n"], data["m"]
        if not isinstance(n, int) or not isinstance(m, int):
            raise SpecError("schema-violation", "n and m must be integers", "/n")
        lam = _parse_optional(data, "lambda")
        constant = _parse_optional(data, "c")
        raw = data["functions"]
        if not isinstance(raw, dict):
            raise SpecError("schema-violation", "functions must be an object", "/functions")
        functions: Dict[str, Any] = {}
        for name, size in FUNCTION_LAYOUT[equation]:
            if name not in raw:
                raise SpecError(
                    "schema-violation", f"missing function {name!r}", f"/functions/{name}"
                )
            pointer = f"/functions/{name}"
            if size == "1":
                functions[name] = function_from_dict(raw[name], pointer)
            else:
                functions[name] = functions_from_list(raw[name], pointer)
        return cls(equation, family, n, m, functions, dict(data.get("params", {})), lam, constant)


def _parse_optional(data: Dict[str, Any], key: str) -> Optional[Scalar]:
    if key not in data:
        return None
    value = data[key]
    if not isinstance(value, str):
        raise SpecError("schema-violation", "scalars must be given in text form", f"/{key}")
    try:
        return parse_scalar(value)
    except ScalarError as e:
        raise SpecError("schema-violation", e.message, f"/{key}")


# ----------------------------------------------------------------------
# Parameter helpers
# ----------------------------------------------------------------------

def _param(params: Dict[str, Any], key: str, default: Any) -> Any:
    value = params.get(key)
    return default if value is None else value


def _param_scalar(params: Dict[str, Any], key: str, default: Any = 0) -> Scalar:
    return _scalar(_param(params, key, default))


def _param_tail(params: Dict[str, Any], key: str) -> Tuple[Scalar, Scalar, Scalar]:
    tail = _param(params, key, (0, 0, 0))
    if len(tail) != 3:
        raise FamilyError("invalid-tail", f"{key} needs 3 values, got {len(tail)}")
    values = [_scalar(t) for t in tail]
    return values[0], values[1], values[2]


def _param_additive(params: Dict[str, Any], key: str) -> AdditiveMap:
    value = _param(params, key, AdditiveMap.zero())
    if isinstance(value, AdditiveMap):
        return value
    return AdditiveMap.from_list(value)


def _param_multiplicative(params: Dict[str, Any], key: str) -> MultiplicativeMap:
    value = _param(params, key, MultiplicativeMap.power(2))
    if not isinstance(value, MultiplicativeMap):
        raise FamilyError("invalid-parameter", f"{key} must be a multiplicative map")
    return value


def _param_scalars(params: Dict[str, Any], key: str, count: int) -> List[Scalar]:
    values = [_scalar(v) for v in _param(params, key, [0] * count)]
    if len(values) != count:
        raise FamilyError("arity-mismatch", f"{key} needs {count} values, got {len(values)}")
    return values


def _param_functions(params: Dict[str, Any], key: str, count: int) -> List[IntervalFunction]:
    functions = list(_param(params, key, [power_function(ARBITRARY_POWER)] * count))
    if len(functions) != count:
        raise FamilyError("arity-mismatch", f"{key} needs {count} functions, got {len(functions)}")
    return functions


def _additive_from(at_one: Scalar, tail: Sequence[Scalar]) -> AdditiveMap:
    return AdditiveMap((at_one, tail[0], tail[1], tail[2]))


def _check_sizes(n: int, m: int) -> None:
    if n < 3 or m < 3:
        raise FamilyError("arity-too-small", f"need n >= 3 and m >= 3, got n={n}, m={m}")


def _family(value: Union[str, FamilyTag], allowed: Sequence[FamilyTag]) -> FamilyTag:
    tag = value if isinstance(value, FamilyTag) else FamilyTag.parse(value)
    if tag not in allowed:
        names = [t.value for t in allowed]
        raise FamilyError("unknown-family", f"{tag.value} is not one of {names}")
    return tag


def _astar(params: Dict[str, Any], required_at_one: Scalar) -> AdditiveMap:
    """A* from a full map (checked) or from a tail with the required A*(1)."""
    given = params.get("astar")
    if given is not None:
        astar = given if isinstance(given, AdditiveMap) else AdditiveMap.from_list(given)
        given_one, required_one = promote(astar.at_one, required_at_one)
        if given_one != required_one:
            raise FamilyError(
                "A*-constraint-violated",
                f"A*(1) must be {required_at_one}, got {astar.at_one}",
            )
        return astar
    return _additive_from(required_at_one, _param_tail(params, "astar_tail"))


# ----------------------------------------------------------------------
# Constant-sum equations
# ----------------------------------------------------------------------

def result1_construct(B: AdditiveMap, k: int, c: Any) -> IntervalFunction:
    """
    ψ(p) = B(p) - B(1)/k + c/k, so that Σψ(p_i) = c on every point of Γ_k.

    Raises:
        FamilyError: ``k-too-small`` when k < 3.

    Example::

        psi = result1_construct(make_additive(2), 3, 5)   # ψ(p) = 2p + 1
    """
    if k < 3:
        raise FamilyError("k-too-small", f"k must be at least 3, got {k}")
    c = _scalar(c)
    return AffineAdditive(B, (c - B.at_one) / k)


def result2_construct(A: AdditiveMap, c: Sequence[Any]) -> List[IntervalFunction]:
    """
    ψ_j(p) = A(p) + c_j, so that Σψ_j(q_j) = 0 on every point of Γ_m.

    Raises:
        FamilyError: ``constraint-2.5-violated`` unless A(1) + Σc_j = 0.
    """
    constants = [_scalar(cj) for cj in c]
    if len(constants) < 3:
        raise FamilyError("arity-too-small", f"need at least 3 constants, got {len(constants)}")
    total = A.at_one
    for cj in constants:
        total = total + cj
    if not total.is_zero():
        raise FamilyError("constraint-2.5-violated", f"A(1) + Σc_j = {total}, must be 0")
    return [AffineAdditive(A, cj) for cj in constants]


def result1_bundle(B: AdditiveMap, k: int, c: Any) -> SolutionBundle:
    """:func:`result1_construct` as a bundle for equation 2.1."""
    psi = result1_construct(B, k, c)
    params = {"B": B, "c": _scalar(c)}
    return SolutionBundle(
        EquationId.EQ21, FamilyTag.RESULT1, k, k, {"psi": psi}, _jsonify(params),
        constant=_scalar(c),
    )


def result2_bundle(A: AdditiveMap, c: Sequence[Any]) -> SolutionBundle:
    """:func:`result2_construct` as a bundle for equation 2.3."""
    psi = result2_construct(A, c)
    m = len(psi)
    params = {"A": A, "c": [_scalar(cj) for cj in c]}
    return SolutionBundle(EquationId.EQ23, FamilyTag.RESULT2, m, m, {"psi": psi}, _jsonify(params))


# ----------------------------------------------------------------------
# Equation 1.11
# ----------------------------------------------------------------------

def theorem1_construct(
    case: Union[str, FamilyTag],
    n: int,
    m: int,
    params: Optional[Dict[str, Any]] = None,
) -> SolutionBundle:
    """
    Build φ for equation 1.11.

    Args:
        case: ``"3.1i"``, ``"3.1ii"`` or ``"3.3"``.
        n: Length of p.
        m: Length of q.
        params: ``phi0`` and ``tail`` (Hamel tail of a) for the affine
            cases; ``M`` and ``B`` for ``3.3``.

    The affine cases set φ = a + φ(0) with a(1) = -nm·φ(0) (case i) or
    a(1) = 1 - n·φ(0) (case ii). Case 3.3 is φ = M - B with B(1) = 0.

    Raises:
        FamilyError: ``case-condition-violated`` when case i lands on
            φ(1) + (n-1)φ(0) = 1; ``B1-nonzero`` for 3.3.
    """
    params = dict(params or {})
    tag = _family(case, (FamilyTag.T1_AFFINE_I, FamilyTag.T1_AFFINE_II, FamilyTag.T1_MULT))
    _check_sizes(n, m)

    if tag is FamilyTag.T1_MULT:
        M = _param_multiplicative(params, "M")
        B = _param_additive(params, "B")
        if not B.at_one.is_zero():
            raise FamilyError("B1-nonzero", f"B(1) must be 0, got {B.at_one}")
        phi: IntervalFunction = MultCombo(Scalar.rational(1), M, B)
        raw = {"M": M, "B": B}
    else:
        phi0 = _param_scalar(params, "phi0")
        tail = _param_tail(params, "tail")
        if tag is FamilyTag.T1_AFFINE_I:
            a = _additive_from(-(n * m) * phi0, tail)
        else:
            a = _additive_from(1 - n * phi0, tail)
        phi = AffineAdditive(a, phi0)
        if tag is FamilyTag.T1_AFFINE_I:
            governing = phi.evaluate(Scalar.rational(1)) + (n - 1) * phi0
            if (governing - 1).is_zero():
                raise FamilyError(
                    "case-condition-violated",
                    f"φ(1) + (n-1)φ(0) = 1 for φ(0) = {phi0}; use case 3.1ii",
                )
        raw = {"phi0": phi0, "tail": list(tail)}

    logger.debug("constructed %s bundle for n=%d m=%d", tag.value, n, m)
    return SolutionBundle(EquationId.EQ111, tag, n, m, {"phi": phi}, _jsonify(raw))


# ----------------------------------------------------------------------
# Equation 1.10
# ----------------------------------------------------------------------

def theorem2_construct(
    family: Union[str, FamilyTag],
    n: int,
    m: int,
    params: Optional[Dict[str, Any]] = None,
) -> SolutionBundle:
    """
    Build (f, g_1..g_m) for equation 1.10.

    Args:
        family: ``"4.1"``, ``"4.2"`` or ``"4.4"``.
        n: Length of p.
        m: Length of q.
        params: Family parameters:

            - ``4.1``: ``b`` (b(1) = 0), ``g`` (m functions, default p^3)
            - ``4.2``: ``f0``, ``f1``, ``a_tail``, ``astar_tail`` or
              ``astar``, ``g0`` (the m values g_j(0))
            - ``4.4``: ``f1``, ``M``, ``B`` (B(1) = 0), ``astar_tail`` or
              ``astar``, ``g0``

    Family 4.2 sets c = f(1) + (n-1)f(0), f = c·a + f(0),
    g_j = a + A* + g_j(0) with a(1) = 1 - n·f(0)/c and
    A*(1) = -Σg_j(0) + nm·f(0)/c. Family 4.4 sets f = f(1)(M - B) and
    g_j = M - B + A* + g_j(0) with A*(1) = -Σg_j(0).

    Raises:
        FamilyError: ``b1-nonzero``, ``c-zero``, ``f1-zero``, ``B1-nonzero``
            or ``A*-constraint-violated``.
    """
    params = dict(params or {})
    tag = _family(family, (FamilyTag.T2_ADDITIVE, FamilyTag.T2_AFFINE, FamilyTag.T2_MULT))
    _check_sizes(n, m)
    one = Scalar.rational(1)

    if tag is FamilyTag.T2_ADDITIVE:
        b = _param_additive(params, "b")
        if not b.at_one.is_zero():
            raise FamilyError("b1-nonzero", f"b(1) must be 0, got {b.at_one}")
        f: IntervalFunction = AffineAdditive(b)
        g = _param_functions(params, "g", m)
        raw: Dict[str, Any] = {"b": b, "g": g}

    elif tag is FamilyTag.T2_AFFINE:
        f0 = _param_scalar(params, "f0", 0)
        f1 = _param_scalar(params, "f1", 1)
        g0 = _param_scalars(params, "g0", m)
        f0, f1, *g0 = promote(f0, f1, *g0)
        c = f1 + (n - 1) * f0
        if c.is_zero():
            raise FamilyError("c-zero", f"f(1) + (n-1)f(0) must be non-zero (f(0)={f0}, f(1)={f1})")
        a = _additive_from(one.like(c) - n * f0 / c, _param_tail(params, "a_tail"))
        g0_sum = sum(g0[1:], g0[0])
        astar = _astar(params, -g0_sum + (n * m) * f0 / c)
        f = AffineAdditive(a.scaled(c), f0)
        g = [AffineAdditive(a + astar, gj) for gj in g0]
        raw = {"f0": f0, "f1": f1, "c": c, "a": a, "astar": astar, "g0": g0}

    else:
        f1 = _param_scalar(params, "f1", 1)
        if f1.is_zero():
            raise FamilyError("f1-zero", "f(1) must be non-zero")
        M = _param_multiplicative(params, "M")
        B = _param_additive(params, "B")
        if not B.at_one.is_zero():
            raise FamilyError("B1-nonzero", f"B(1) must be 0, got {B.at_one}")
        g0 = _param_scalars(params, "g0", m)
        f1, *g0 = promote(f1, *g0)
        g0_sum = sum(g0[1:], g0[0])
        astar = _astar(params, -g0_sum)
        f = MultCombo(f1, M, B)
        g = [MultCombo(one.like(f1), M, B - astar, gj) for gj in g0]
        raw = {"f1": f1, "M": M, "B": B, "astar": astar, "g0": g0}

    logger.debug("constructed %s bundle for n=%d m=%d", tag.value, n, m)
    return SolutionBundle(EquationId.EQ110, tag, n, m, {"f": f, "g": g}, _jsonify(raw))


# ----------------------------------------------------------------------
# Equation 1.8 and the transform
# ----------------------------------------------------------------------

def transform_h_to_f(h: IntervalFunction, lam: Any) -> IntervalFunction:
    """
    f(x) = x + λ h(x).

    Raises:
        FamilyError: ``lambda-zero``.

    Example::

        h = Transformed(power_function(2), Scalar.rational(-1, 2))   # 2p - 2p²
        transform_h_to_f(h, Scalar.rational(-1, 2))                  # p²
    """
    lam = _scalar(lam)
    if lam.is_zero():
        raise FamilyError("lambda-zero", "λ must be non-zero")
    h = unwrap(h)
    if isinstance(h, Transformed) and h.lam == lam:
        return h.inner
    return Lifted(h, lam)


def transform_f_to_h(f: IntervalFunction, lam: Any) -> IntervalFunction:
    """
    h(x) = (f(x) - x)/λ.

    Raises:
        FamilyError: ``lambda-zero``.
    """
    lam = _scalar(lam)
    if lam.is_zero():
        raise FamilyError("lambda-zero", "λ must be non-zero")
    f = unwrap(f)
    if isinstance(f, Lifted) and f.lam == lam:
        return f.inner
    return Transformed(f, lam)


def theorem3_construct(
    family: Union[str, FamilyTag],
    n: int,
    m: int,
    lam: Any,
    params: Optional[Dict[str, Any]] = None,
) -> SolutionBundle:
    """
    Build (h, k_1..k_m) for equation 1.8 with the given λ.

    Args:
        family: ``"5.1"``, ``"5.2"`` or ``"5.4"``.
        n: Length of p.
        m: Length of q.
        lam: Non-zero λ.
        params: Family parameters:

            - ``5.1``: ``b`` (b(1) = 0), ``k`` (m functions, default p^3)
            - ``5.2``: ``h0``, ``h1``, ``a_tail``, ``astar_tail`` or
              ``astar``, ``k0`` (the m values k_j(0))
            - ``5.4``: ``h1``, ``M``, ``B`` (B(1) = 0), ``astar_tail`` or
              ``astar``, ``k0``

    Family 5.1 is h(p) = (b(p) - p)/λ with k_j arbitrary. Families 5.2 and
    5.4 build the matching product-equation solution with f(0) = λh(0),
    f(1) = 1 + λh(1), g_j(0) = λk_j(0) and map it back through
    h = (f - x)/λ, so λ(h(1) + (n-1)h(0)) + 1 must be non-zero for 5.2 and
    λh(1) + 1 must be non-zero for 5.4.

    Raises:
        FamilyError: ``lambda-zero`` plus the conditions of the product form.
    """
    params = dict(params or {})
    tag = _family(family, (FamilyTag.T3_ADDITIVE, FamilyTag.T3_AFFINE, FamilyTag.T3_MULT))
    lam = _scalar(lam)
    if lam.is_zero():
        raise FamilyError("lambda-zero", "λ must be non-zero")
    _check_sizes(n, m)

    if tag is FamilyTag.T3_ADDITIVE:
        b = _param_additive(params, "b")
        if not b.at_one.is_zero():
            raise FamilyError("b1-nonzero", f"b(1) must be 0, got {b.at_one}")
        h: IntervalFunction = Transformed(AffineAdditive(b), lam)
        k = _param_functions(params, "k", m)
        raw: Dict[str, Any] = {"b": b, "k": k}
    else:
        k0 = _param_scalars(params, "k0", m)
        h0 = _param_scalar(params, "h0", 0)
        h1 = _param_scalar(params, "h1", 0)
        lam, h0, h1, *k0 = promote(lam, h0, h1, *k0)
        product_params: Dict[str, Any] = {
            "f1": 1 + lam * h1,
            "g0": [lam * kj for kj in k0],
            "astar_tail": params.get("astar_tail"),
            "astar": params.get("astar"),
        }
        if tag is FamilyTag.T3_AFFINE:
            product_params["f0"] = lam * h0
            product_params["a_tail"] = params.get("a_tail")
            source = FamilyTag.T2_AFFINE
            raw = {"h0": h0, "h1": h1, "k0": k0}
        else:
            product_params["M"] = params.get("M")
            product_params["B"] = params.get("B")
            source = FamilyTag.T2_MULT
            raw = {"h1": h1, "k0": k0}
        product = theorem2_construct(source, n, m, product_params)
        h = transform_f_to_h(product.functions["f"], lam)
        k = [transform_f_to_h(gj, lam) for gj in product.functions["g"]]
        raw["product"] = product.params

    logger.debug("constructed %s bundle for n=%d m=%d λ=%s", tag.value, n, m, lam)
    return SolutionBundle(EquationId.EQ18, tag, n, m, {"h": h, "k": k}, _jsonify(raw), lam=lam)


def as_eq17(bundle: SolutionBundle) -> SolutionBundle:
    """
    Embed a 1.8 or 1.5 bundle into equation 1.7 with f_ij = h_i = h.

    Equation 1.7 has no solution constructor of its own; this is the
    degenerate case its residual evaluator is checked on.
    """
    if bundle.equation not in (EquationId.EQ18, EquationId.EQ15):
        raise FamilyError(
            "arity-mismatch", f"cannot embed equation {bundle.equation.value} into 1.7"
        )
    h = bundle.functions["h"]
    k = bundle.functions.get("k", (h,) * bundle.m)
    params = {"source_family": bundle.family.value}
    return SolutionBundle(
        EquationId.EQ17, FamilyTag.NONE, bundle.n, bundle.m,
        {"f": [h] * (bundle.n * bundle.m), "h": [h] * bundle.n, "k": list(k)},
        params, lam=bundle.lam,
    )
