"""
Residuals of the sum-form equations and grid verification.

Every residual is LHS - RHS with the double-sum side on the left. On exact
inputs a true solution gives exactly zero; on floats a bundle passes when
the largest residual is at most 1e-9 * (1 + largest side value).
"""

import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from sumform.equations import EquationId, EquationSpec
from sumform.errors import ResidualError
from sumform.families import SolutionBundle
from sumform.maps.functions import IntervalFunction
from sumform.scalar import Backend, Scalar
from sumform.simplex import Distribution, enumerate_grid, irrational_distributions, sample_random

logger = logging.getLogger(__name__)

# Relative tolerance for float-backend sweeps
FLOAT_TOLERANCE = 1e-9

# Default number of random pairs for sampled sweeps
DEFAULT_SAMPLE_COUNT = 50


def _total(values: Sequence[Scalar]) -> Scalar:
    return sum(values[1:], values[0])


def _needs_float(functions: Sequence[IntervalFunction], *scalars: Optional[Scalar]) -> bool:
    if any(not F.is_exact for F in functions):
        return True
    return any(s is not None and s.is_float for s in scalars)


def _align(
    functions: Sequence[IntervalFunction],
    dists: Sequence[Distribution],
    *scalars: Optional[Scalar],
) -> Tuple[List[Distribution], bool]:
    backend = dists[0].backend
    for dist in dists[1:]:
        if dist.backend is not backend:
            raise ResidualError("backend-mismatch", "distributions use different scalar backends")
    use_float = backend is Backend.FLOAT or _needs_float(functions, *scalars)
    if use_float:
        return [d.as_float() for d in dists], True
    return list(dists), False


def _check_length(name: str, actual: int, expected: int) -> None:
    if actual != expected:
        raise ResidualError("arity-mismatch", f"{name} has {actual} entries, expected {expected}")


def _check_lambda(lam: Scalar) -> None:
    if lam.is_zero():
        raise ResidualError("lambda-zero", "λ must be non-zero")


def _double_sum(f: IntervalFunction, p: Distribution, q: Distribution) -> Scalar:
    return _total([f.evaluate(pi * qj) for pi in p for qj in q])


# ----------------------------------------------------------------------
# Sides of each equation
# ----------------------------------------------------------------------

def sides_eq110(
    f: IntervalFunction, g: Sequence[IntervalFunction], p: Distribution, q: Distribution
) -> Tuple[Scalar, Scalar]:
    """(LHS, RHS) of ΣΣ f(p_i q_j) = Σ f(p_i) Σ g_j(q_j)."""
    _check_length("g", len(g), len(q))
    (p, q), _ = _align([f, *g], [p, q])
    lhs = _double_sum(f, p, q)
    rhs = _total([f.evaluate(pi) for pi in p]) * _total([gj.evaluate(qj) for gj, qj in zip(g, q)])
    return lhs, rhs


def sides_eq111(phi: IntervalFunction, p: Distribution, q: Distribution) -> Tuple[Scalar, Scalar]:
    """(LHS, RHS) of ΣΣ φ(p_i q_j) = Σφ(p_i) Σφ(q_j) + m(n-1) φ(0) Σφ(p_i)."""
    (p, q), _ = _align([phi], [p, q])
    n, m = p.n, q.n
    lhs = _double_sum(phi, p, q)
    sum_p = _total([phi.evaluate(pi) for pi in p])
    sum_q = _total([phi.evaluate(qj) for qj in q])
    phi0 = phi.evaluate(p[0] * 0)
    return lhs, sum_p * sum_q + (m * (n - 1)) * phi0 * sum_p


def sides_eq18(
    h: IntervalFunction,
    k: Sequence[IntervalFunction],
    lam: Scalar,
    p: Distribution,
    q: Distribution,
) -> Tuple[Scalar, Scalar]:
    """(LHS, RHS) of ΣΣ h(p_i q_j) = Σh(p_i) + Σk_j(q_j) + λ Σh(p_i) Σk_j(q_j)."""
    _check_lambda(lam)
    _check_length("k", len(k), len(q))
    (p, q), use_float = _align([h, *k], [p, q], lam)
    lam = lam.as_float() if use_float else lam
    lhs = _double_sum(h, p, q)
    sum_h = _total([h.evaluate(pi) for pi in p])
    sum_k = _total([kj.evaluate(qj) for kj, qj in zip(k, q)])
    return lhs, sum_h + sum_k + lam * sum_h * sum_k


def sides_eq17(
    f: Sequence[Any],
    h: Sequence[IntervalFunction],
    k: Sequence[IntervalFunction],
    lam: Scalar,
    p: Distribution,
    q: Distribution,
) -> Tuple[Scalar, Scalar]:
    """(LHS, RHS) of ΣΣ f_ij(p_i q_j) = Σh_i(p_i) + Σk_j(q_j) + λ Σh_i(p_i) Σk_j(q_j)."""
    _check_lambda(lam)
    flat = _flatten_matrix(f)
    _check_length("f", len(flat), p.n * q.n)
    _check_length("h", len(h), p.n)
    _check_length("k", len(k), q.n)
    (p, q), use_float = _align([*flat, *h, *k], [p, q], lam)
    lam = lam.as_float() if use_float else lam
    m = q.n
    lhs = _total(
        [flat[i * m + j].evaluate(pi * qj) for i, pi in enumerate(p) for j, qj in enumerate(q)]
    )
    sum_h = _total([hi.evaluate(pi) for hi, pi in zip(h, p)])
    sum_k = _total([kj.evaluate(qj) for kj, qj in zip(k, q)])
    return lhs, sum_h + sum_k + lam * sum_h * sum_k


def _flatten_matrix(f: Sequence[Any]) -> List[IntervalFunction]:
    if f and not isinstance(f[0], IntervalFunction):
        return [F for row in f for F in row]
    return list(f)


def sides_eq21(psi: IntervalFunction, c: Scalar, P: Distribution) -> Tuple[Scalar, Scalar]:
    """(LHS, RHS) of Σψ(p_i) = c."""
    (P,), use_float = _align([psi], [P], c)
    lhs = _total([psi.evaluate(pi) for pi in P])
    return lhs, c.as_float() if use_float else c


def sides_eq23(psi: Sequence[IntervalFunction], Q: Distribution) -> Tuple[Scalar, Scalar]:
    """(LHS, RHS) of Σψ_j(q_j) = 0."""
    _check_length("psi", len(psi), Q.n)
    (Q,), _ = _align(list(psi), [Q])
    lhs = _total([pj.evaluate(qj) for pj, qj in zip(psi, Q)])
    return lhs, lhs * 0


# ----------------------------------------------------------------------
# Residuals
# ----------------------------------------------------------------------

def residual_eq110(
    f: IntervalFunction, g: Sequence[IntervalFunction], p: Distribution, q: Distribution
) -> Scalar:
    """
    Residual of the product equation.

    Raises:
        ResidualError: ``arity-mismatch`` when len(g) != len(q),
            ``backend-mismatch`` when p and q use different backends.

    Example::

        p = make_distribution(["1/2", "1/2", "0"])
        q = make_distribution(["1/3", "1/3", "1/3"])
        sq = power_function(2)
        residual_eq110(sq, [identity_function()] * 3, p, q)   # Scalar(-1/3)
    """
    lhs, rhs = sides_eq110(f, g, p, q)
    return lhs - rhs


def residual_eq111(
    phi: IntervalFunction,
    p: Distribution,
    q: Distribution,
    n: Optional[int] = None,
    m: Optional[int] = None,
) -> Scalar:
    """Residual of the equation with the m(n-1)φ(0) term."""
    if n is not None:
        _check_length("p", p.n, n)
    if m is not None:
        _check_length("q", q.n, m)
    lhs, rhs = sides_eq111(phi, p, q)
    return lhs - rhs


def residual_eq18(
    h: IntervalFunction,
    k: Sequence[IntervalFunction],
    lam: Scalar,
    p: Distribution,
    q: Distribution,
) -> Scalar:
    """Residual of the λ equation; ``residual_eq15`` is the case k_j = h."""
    lhs, rhs = sides_eq18(h, k, lam, p, q)
    return lhs - rhs


def residual_eq15(h: IntervalFunction, lam: Scalar, p: Distribution, q: Distribution) -> Scalar:
    """Residual of the λ equation with every k_j equal to h."""
    return residual_eq18(h, [h] * q.n, lam, p, q)


def residual_eq17(
    f: Sequence[Any],
    h: Sequence[IntervalFunction],
    k: Sequence[IntervalFunction],
    lam: Scalar,
    p: Distribution,
    q: Distribution,
) -> Scalar:
    """
    Residual of the general λ equation with separate f_ij, h_i, k_j.

    ``f`` is an n x m nested list or a flat row-major list.
    """
    lhs, rhs = sides_eq17(f, h, k, lam, p, q)
    return lhs - rhs


def residual_eq21(psi: IntervalFunction, c: Scalar, P: Distribution) -> Scalar:
    lhs, rhs = sides_eq21(psi, c, P)
    return lhs - rhs


def residual_eq23(psi: Sequence[IntervalFunction], Q: Distribution) -> Scalar:
    lhs, rhs = sides_eq23(psi, Q)
    return lhs - rhs


def residual_result_eqs(
    psi: Union[IntervalFunction, Sequence[IntervalFunction]],
    size: int,
    c: Optional[Scalar],
    P: Distribution,
) -> Scalar:
    """
    Σψ(p_i) - c for a single ψ on Γ_k, or Σψ_j(q_j) for a list of ψ_j on Γ_m.

    Raises:
        ResidualError: ``arity-mismatch`` when the distribution length is not ``size``.
    """
    _check_length("distribution", P.n, size)
    if isinstance(psi, IntervalFunction):
        return residual_eq21(psi, c if c is not None else Scalar.rational(0), P)
    _check_length("psi", len(psi), size)
    return residual_eq23(psi, P)


def bundle_sides(bundle: SolutionBundle, dists: Sequence[Distribution]) -> Tuple[Scalar, Scalar]:
    """(LHS, RHS) of the bundle's equation at one point (p, q) or (P,)."""
    fn = bundle.functions
    eq = bundle.equation
    if eq is EquationId.EQ110:
        return sides_eq110(fn["f"], fn["g"], dists[0], dists[1])
    if eq is EquationId.EQ111:
        return sides_eq111(fn["phi"], dists[0], dists[1])
    if eq is EquationId.EQ18:
        return sides_eq18(fn["h"], fn["k"], bundle.lam, dists[0], dists[1])
    if eq is EquationId.EQ15:
        return sides_eq18(fn["h"], [fn["h"]] * bundle.m, bundle.lam, dists[0], dists[1])
    if eq is EquationId.EQ17:
        return sides_eq17(fn["f"], fn["h"], fn["k"], bundle.lam, dists[0], dists[1])
    if eq is EquationId.EQ21:
        c = bundle.constant if bundle.constant is not None else Scalar.rational(0)
        return sides_eq21(fn["psi"], c, dists[0])
    return sides_eq23(fn["psi"], dists[0])


# ----------------------------------------------------------------------
# Sweeps
# ----------------------------------------------------------------------

@dataclass
class ResidualReport:
    """
    Outcome of a sweep.

    Attributes:
        spec: Equation instance checked.
        d: Grid resolution, ``None`` for sampled sweeps.
        max_abs_residual: Largest |LHS - RHS| seen.
        witness: Distributions where the maximum was first reached.
        exact: True when every value was computed exactly.
        evaluations: Number of points evaluated.
        passed: Exact zero, or within the float tolerance.
        boundary_pairs: Points where every distribution has a zero component.
        family: Family tag of the checked bundle.
        max_side: Largest |side value| seen (float tolerance scale).
        samples: Sample count and seed for sampled sweeps.
    """

    spec: EquationSpec
    d: Optional[int]
    max_abs_residual: Scalar
    witness: Tuple[Distribution, ...]
    exact: bool
    evaluations: int
    passed: bool
    boundary_pairs: int = 0
    family: str = "none"
    max_side: float = 0.0
    samples: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """JSON form with keys in report order."""
        result: Dict[str, Any] = {"equation": self.spec.equation.value}
        result.update(self.spec.sizes)
        if self.d is not None:
            result["d"] = self.d
        result.update(self.samples)
        result["exact"] = self.exact
        result["max_abs_residual"] = str(self.max_abs_residual)
        names = ("p", "q") if len(self.witness) == 2 else ("p",)
        result["witness"] = {name: dist.to_list() for name, dist in zip(names, self.witness)}
        result["evaluations"] = self.evaluations
        result["passed"] = self.passed
        result["boundary_pairs"] = self.boundary_pairs
        result["family"] = self.family
        return result


@lru_cache(maxsize=64)
def _sweep_distributions(n: int, d: int, include_irrational: bool) -> Tuple[Distribution, ...]:
    dists = list(enumerate_grid(n, d))
    if include_irrational:
        dists.extend(irrational_distributions(n))
    return tuple(dists)


def _check_bundle(spec: EquationSpec, bundle: SolutionBundle) -> None:
    if bundle.equation is not spec.equation or bundle.n != spec.n or bundle.m != spec.m:
        raise ResidualError(
            "bundle-mismatch",
            f"bundle solves {bundle.equation.value} with n={bundle.n}, m={bundle.m}; "
            f"spec is {spec.equation.value} with n={spec.n}, m={spec.m}",
        )


def _resolve_backend(bundle: SolutionBundle, backend: Optional[Backend]) -> bool:
    """True when the sweep must run on floats."""
    if backend is None:
        return not bundle.is_exact
    if backend is Backend.EXACT and not bundle.is_exact:
        raise ResidualError(
            "backend-mismatch", "the bundle has float parameters; use the float backend"
        )
    return backend is Backend.FLOAT


def _point_sets(spec: EquationSpec, grid_n: Sequence[Distribution], grid_m: Sequence[Distribution]):
    if spec.equation is EquationId.EQ21:
        return [(P,) for P in grid_n]
    if spec.equation is EquationId.EQ23:
        return [(Q,) for Q in grid_m]
    return list(product(grid_n, grid_m))


class _Sweep:
    """Running maximum of |residual| with the first maximal witness."""

    def __init__(self, use_float: bool):
        self.use_float = use_float
        self.max_abs: Optional[Scalar] = None
        self.witness: Tuple[Distribution, ...] = ()
        self.max_side = 0.0
        self.evaluations = 0
        self.boundary = 0

    def add(self, bundle: SolutionBundle, dists: Tuple[Distribution, ...]) -> None:
        lhs, rhs = bundle_sides(bundle, dists)
        residual = lhs - rhs
        self.evaluations += 1
        if all(d.has_zero() for d in dists):
            self.boundary += 1
        if self.use_float:
            self.max_side = max(self.max_side, abs(lhs.value), abs(rhs.value))
        if self.max_abs is None:
            self.max_abs, self.witness = abs(residual), dists
        elif not residual.is_zero():
            size = abs(residual)
            if size > self.max_abs:
                self.max_abs, self.witness = size, dists

    def passed(self) -> bool:
        if self.max_abs is None:
            return True
        if self.use_float:
            return self.max_abs.value <= FLOAT_TOLERANCE * (1.0 + self.max_side)
        return self.max_abs.is_zero()


def _report(
    spec: EquationSpec,
    bundle: SolutionBundle,
    sweep: _Sweep,
    d: Optional[int],
    **extra: Any,
) -> ResidualReport:
    max_abs = sweep.max_abs if sweep.max_abs is not None else Scalar.rational(0)
    report = ResidualReport(
        spec=spec,
        d=d,
        max_abs_residual=max_abs,
        witness=sweep.witness,
        exact=not sweep.use_float,
        evaluations=sweep.evaluations,
        passed=sweep.passed(),
        boundary_pairs=sweep.boundary,
        family=bundle.family.value,
        max_side=sweep.max_side,
        **extra,
    )
    logger.info(
        "equation %s family %s: %d evaluations, max |residual| %s, passed=%s",
        spec.equation.value, report.family, report.evaluations, max_abs, report.passed,
    )
    return report


def verify_over_grid(
    spec: EquationSpec,
    bundle: SolutionBundle,
    d: int,
    include_irrational: bool = True,
    backend: Optional[Backend] = None,
) -> ResidualReport:
    """
    Evaluate the residual on every grid point pair at resolution d.

    The grid is every distribution with components in {0, 1/d, ..., 1},
    plus the fixed irrational distributions unless ``include_irrational``
    is False. The witness is the first pair, in enumeration order, that
    reaches the maximum. ``evaluations`` counts every pair checked, the
    irrational distributions included: 28 + 4 points give 1024 pairs at
    n = m = 3, d = 6, and 784 without them.

    Args:
        spec: Equation instance; must match the bundle.
        bundle: Functions to check.
        d: Grid resolution (>= 1).
        include_irrational: Append the fixed irrational distributions.
        backend: Force a backend; default exact when the bundle is exact.

    Raises:
        ResidualError: ``bundle-mismatch`` or ``backend-mismatch``.

    Example::

        bundle = theorem1_construct("3.3", 3, 3, {"M": MultiplicativeMap.power(2)})
        verify_over_grid(bundle.spec(), bundle, 6).max_abs_residual   # Scalar(0)
    """
    _check_bundle(spec, bundle)
    use_float = _resolve_backend(bundle, backend)
    grid_n = _sweep_distributions(spec.n, d, include_irrational)
    grid_m = _sweep_distributions(spec.m, d, include_irrational)
    if use_float:
        grid_n = tuple(p.as_float() for p in grid_n)
        grid_m = tuple(q.as_float() for q in grid_m)
    sweep = _Sweep(use_float)
    memo = bundle.memoized()
    for dists in _point_sets(spec, grid_n, grid_m):
        sweep.add(memo, dists)
    return _report(spec, bundle, sweep, d)


def verify_over_samples(
    spec: EquationSpec,
    bundle: SolutionBundle,
    count: int = DEFAULT_SAMPLE_COUNT,
    seed: int = 0,
    backend: Optional[Backend] = None,
) -> ResidualReport:
    """
    Evaluate the residual on random pairs stratified by number of zeros.

    Point i uses i mod n zeros in p and i mod m zeros in q, so most pairs
    lie on the boundary of both simplices. Deterministic for a fixed seed.
    """
    _check_bundle(spec, bundle)
    use_float = _resolve_backend(bundle, backend)
    rng = random.Random(seed)
    sweep = _Sweep(use_float)
    memo = bundle.memoized()
    single = not spec.equation.uses_pair
    for i in range(count):
        if single:
            size = spec.n if spec.equation is EquationId.EQ21 else spec.m
            draw = rng.randrange(2 ** 32)
            dists: Tuple[Distribution, ...] = (sample_random(size, draw, i % size),)
        else:
            p = sample_random(spec.n, rng.randrange(2 ** 32), i % spec.n)
            q = sample_random(spec.m, rng.randrange(2 ** 32), i % spec.m)
            dists = (p, q)
        if use_float:
            dists = tuple(x.as_float() for x in dists)
        sweep.add(memo, dists)
    return _report(spec, bundle, sweep, None, samples={"samples": count, "seed": seed})
