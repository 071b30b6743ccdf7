"""
Complete probability distributions on the closed simplex.

Zero components are allowed everywhere: grid enumeration always reaches
the vertices and faces, and random sampling takes an explicit number of
zeros so boundary coverage can be stratified.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, List, Sequence, Tuple

from sumform.errors import DistributionError
from sumform.scalar import Backend, Scalar, parse_scalar

logger = logging.getLogger(__name__)

# Sum tolerance for float-backend distributions
FLOAT_SUM_TOLERANCE = 1e-12

# Denominator range for random weights in sample_random
RANDOM_WEIGHT_MAX = 1000


@dataclass(frozen=True)
class Distribution:
    """
    A complete probability distribution (p_1, ..., p_n), zeros allowed.

    Validated on construction: every component lies in [0, 1] and the
    components sum to exactly 1 (within 1e-12 for float scalars).

    Attributes:
        components: The n probabilities as scalars of one backend.

    Example::

        p = make_distribution(["1/2", "1/2", "0"])
        p.n             # 3
        p.has_zero()    # True
    """

    components: Tuple[Scalar, ...]

    def __post_init__(self):
        """Validate simplex membership."""
        comps = self.components
        if len(comps) < 2:
            raise DistributionError(
                "too-few-components", f"need at least 2 components, got {len(comps)}"
            )
        backend = comps[0].backend
        for c in comps:
            if c.backend is not backend:
                raise DistributionError(
                    "backend-mismatch", "components mix exact and float scalars"
                )
        for i, c in enumerate(comps):
            if c.sign() < 0 or (c - 1).sign() > 0:
                raise DistributionError(
                    "component-out-of-range", f"component {i} = {c} is outside [0, 1]"
                )
        total = sum(comps, Scalar.of(0) if backend is Backend.EXACT else Scalar.from_float(0.0))
        if backend is Backend.EXACT:
            if total != Scalar.rational(1):
                raise DistributionError("sum-not-one", f"components sum to {total}")
        elif abs(total.value - 1.0) > FLOAT_SUM_TOLERANCE:
            raise DistributionError("sum-not-one", f"components sum to {total.value!r}")

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def backend(self) -> Backend:
        return self.components[0].backend

    @property
    def is_exact(self) -> bool:
        return self.backend is Backend.EXACT

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.components)

    def __getitem__(self, i: int) -> Scalar:
        return self.components[i]

    def has_zero(self) -> bool:
        """True when some component is exactly 0 (a boundary point)."""
        return any(c.is_zero() for c in self.components)

    def as_float(self) -> 'Distribution':
        """Same distribution on the float backend."""
        if not self.is_exact:
            return self
        return Distribution(tuple(c.as_float() for c in self.components))

    def permuted(self, order: Sequence[int]) -> 'Distribution':
        """Reorder components; ``order[i]`` is the source index of slot i."""
        if sorted(order) != list(range(self.n)):
            raise DistributionError(
                "invalid-permutation", f"{list(order)} is not a permutation of 0..{self.n - 1}"
            )
        return Distribution(tuple(self.components[i] for i in order))

    def to_list(self) -> List[str]:
        """Components in scalar text form."""
        return [str(c) for c in self.components]

    def to_csv_row(self) -> str:
        """One CSV row of scalar text forms."""
        return ",".join(self.to_list())

    @classmethod
    def from_csv_row(cls, row: str) -> 'Distribution':
        """Parse a row written by :meth:`to_csv_row`."""
        return make_distribution([field for field in row.strip().split(",")])

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_list()) + ")"


def make_distribution(components: Sequence) -> Distribution:
    """
    Build a validated distribution.

    Args:
        components: Scalars, ints, Fractions, floats or scalar text forms.

    Raises:
        DistributionError: ``too-few-components``, ``component-out-of-range``
            or ``sum-not-one``.

    Example::

        make_distribution([Scalar.exact(0, "1/2"), Scalar.exact(1, "-1/2"), 0])
    """
    scalars = []
    for c in components:
        scalars.append(parse_scalar(c) if isinstance(c, str) else Scalar.of(c))
    if scalars and any(s.is_float for s in scalars):
        scalars = [s.as_float() for s in scalars]
    return Distribution(tuple(scalars))


def grid_size(n: int, d: int) -> int:
    """Number of grid distributions, C(d+n-1, n-1)."""
    return comb(d + n - 1, n - 1)


def _compositions(n: int, d: int) -> Iterator[Tuple[int, ...]]:
    if n == 1:
        yield (d,)
        return
    for k in range(d, -1, -1):
        for rest in _compositions(n - 1, d - k):
            yield (k,) + rest


def enumerate_grid(n: int, d: int) -> Iterator[Distribution]:
    """
    Every distribution with components in {0, 1/d, ..., 1}.

    Compositions (k_1, ..., k_n) of d are emitted with k_1 running from d
    down to 0, then k_2, and so on, so the vertex (1, 0, ..., 0) comes first.

    Example::

        [str(p) for p in enumerate_grid(2, 1)]   # ['(1, 0)', '(0, 1)']
    """
    if n < 2:
        raise DistributionError("too-few-components", f"n must be at least 2, got {n}")
    if d < 1:
        raise DistributionError("invalid-grid", f"d must be at least 1, got {d}")
    for ks in _compositions(n, d):
        yield Distribution(tuple(Scalar.rational(k, d) for k in ks))


def sample_random(n: int, seed: int, zero_count: int = 0) -> Distribution:
    """
    Deterministic random distribution with exactly ``zero_count`` zeros.

    Positive components are random integer weights renormalized exactly,
    so the result is rational and sums to 1 without rounding.

    Raises:
        DistributionError: ``zero-count-too-large`` unless 0 <= zero_count <= n-1.
    """
    if n < 2:
        raise DistributionError("too-few-components", f"n must be at least 2, got {n}")
    if zero_count < 0 or zero_count > n - 1:
        raise DistributionError(
            "zero-count-too-large", f"zero_count must be between 0 and {n - 1}, got {zero_count}"
        )
    rng = random.Random(seed)
    zeros = set(rng.sample(range(n), zero_count))
    weights = [0 if i in zeros else rng.randint(1, RANDOM_WEIGHT_MAX) for i in range(n)]
    total = sum(weights)
    return Distribution(tuple(Scalar.rational(w, total) for w in weights))


@dataclass(frozen=True)
class ProductMatrix:
    """
    The n x m matrix of products p_i * q_j.

    Attributes:
        entries: Row-major tuple of rows.
    """

    entries: Tuple[Tuple[Scalar, ...], ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    def __getitem__(self, i: int) -> Tuple[Scalar, ...]:
        return self.entries[i]

    def flat(self) -> List[Scalar]:
        """Entries in row-major order."""
        return [x for row in self.entries for x in row]

    def total(self) -> Scalar:
        """Sum of all entries (exactly 1 for exact inputs)."""
        values = self.flat()
        return sum(values[1:], values[0])


def product_matrix(p: Distribution, q: Distribution) -> ProductMatrix:
    """
    Outer product of two distributions.

    Raises:
        DistributionError: ``backend-mismatch`` when p and q use different backends.

    Example::

        half = make_distribution(["1/2", "1/2"])
        product_matrix(half, half)[0][0]   # Scalar(1/4)
    """
    if p.backend is not q.backend:
        raise DistributionError("backend-mismatch", "p and q use different scalar backends")
    return ProductMatrix(tuple(tuple(pi * qj for qj in q) for pi in p))


def irrational_distributions(n: int) -> List[Distribution]:
    """
    Fixed distributions with irrational coordinates, padded with zeros.

    Built from √2/2, √3/3 and √6/6 so non-linear additive maps see every
    irrational basis direction. Two distributions for n = 2, four otherwise.
    """
    if n < 2:
        raise DistributionError("too-few-components", f"n must be at least 2, got {n}")
    half = Fraction(1, 2)
    third = Fraction(1, 3)
    sixth = Fraction(1, 6)
    r2 = Scalar.exact(0, half)
    r3 = Scalar.exact(0, 0, third)
    r6 = Scalar.exact(0, 0, 0, sixth)
    one = Scalar.rational(1)
    bases = [
        [r2, one - r2],
        [r3, one - r3],
    ]
    if n >= 3:
        bases.append([one - r2, r2 - r3, r3])
        bases.append([r6, r2 - r6, one - r2])
    zero = Scalar.rational(0)
    return [Distribution(tuple(b + [zero] * (n - len(b)))) for b in bases]


def grid_abscissae(n: int, m: int, d: int) -> List[Scalar]:
    """
    Every point a grid sweep of (Γ_n, Γ_m) at resolution d feeds to a function.

    These are the values k/d and the products (a/d)(b/d), sorted ascending.
    Both n and m must be at least 2; the set does not grow with them.
    """
    if n < 2 or m < 2:
        raise DistributionError("too-few-components", f"n and m must be at least 2, got {n}, {m}")
    if d < 1:
        raise DistributionError("invalid-grid", f"d must be at least 1, got {d}")
    values = {Fraction(k, d) for k in range(d + 1)}
    values.update(Fraction(a * b, d * d) for a in range(d + 1) for b in range(a, d + 1))
    return [Scalar.rational(v.numerator, v.denominator) for v in sorted(values)]
