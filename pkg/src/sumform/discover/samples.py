"""
Sample sets and fit results.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from sumform.equations import FamilyTag
from sumform.errors import FitError, ScalarError
from sumform.maps.functions import IntervalFunction, Table
from sumform.scalar import Scalar, parse_scalar

CSV_HEADER = "x,y"


@dataclass(frozen=True)
class SampleSet:
    """
    Points (x, y) of a function on [0, 1] with distinct abscissae.

    Example::

        s = SampleSet.from_function(power_function(2), [Scalar.rational(k, 12) for k in range(13)])
        s.interior_count     # 11
    """

    points: Tuple[Tuple[Scalar, Scalar], ...]

    def __post_init__(self):
        seen = set()
        for x, _ in self.points:
            key = x.to_float()
            if key in seen:
                raise FitError("duplicate-abscissa", f"abscissa {x} appears twice")
            seen.add(key)

    @classmethod
    def from_function(cls, F: IntervalFunction, abscissae: Iterable[Scalar]) -> 'SampleSet':
        return cls(tuple((x, F.evaluate(x)) for x in abscissae))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Any, Any]]) -> 'SampleSet':
        def conv(v: Any) -> Scalar:
            return parse_scalar(v) if isinstance(v, str) else Scalar.of(v)
        return cls(tuple((conv(x), conv(y)) for x, y in pairs))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def xs(self) -> np.ndarray:
        return np.array([x.to_float() for x, _ in self.points], dtype=float)

    @property
    def ys(self) -> np.ndarray:
        return np.array([y.to_float() for _, y in self.points], dtype=float)

    @property
    def interior_count(self) -> int:
        """Number of abscissae strictly inside (0, 1)."""
        return sum(1 for x, _ in self.points if x.sign() > 0 and (x - 1).sign() < 0)

    def value_at(self, x: Scalar) -> Optional[Scalar]:
        """The sampled y at x, if x was sampled."""
        key = x.to_float()
        for px, py in self.points:
            if px.to_float() == key:
                return py
        return None

    def to_table(self) -> Table:
        return Table(self.points)

    def to_csv(self) -> str:
        """CSV text with header ``x,y``, one row per point."""
        lines = [CSV_HEADER]
        lines.extend(f"{x},{y}" for x, y in self.points)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> 'SampleSet':
        """
        Parse CSV written by :meth:`to_csv`.

        Raises:
            FitError: ``invalid-csv`` on a bad header or row.
        """
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if not lines or lines[0].replace(" ", "") != CSV_HEADER:
            raise FitError("invalid-csv", f"expected header {CSV_HEADER!r}")
        points: List[Tuple[Scalar, Scalar]] = []
        for number, line in enumerate(lines[1:], start=2):
            fields = line.split(",")
            if len(fields) != 2:
                raise FitError(
                    "invalid-csv", f"line {number}: expected 2 fields, got {len(fields)}"
                )
            try:
                points.append((parse_scalar(fields[0]), parse_scalar(fields[1])))
            except ScalarError as e:
                raise FitError("invalid-csv", f"line {number}: {e.message}")
        return cls(tuple(points))


@dataclass
class FitResult:
    """
    Best template fit to a sample set.

    Attributes:
        family: Family the template stands for (``4.2`` affine, ``4.4`` power).
        parameters: Fitted parameters (slope/const or alpha/scale/slope).
        rms_error: Root-mean-square residual of the fit.
        converged: False when the optimizer stopped without converging.
    """

    family: FamilyTag
    parameters: Dict[str, float] = field(default_factory=dict)
    rms_error: float = 0.0
    converged: bool = True

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"family": self.family.value}
        result.update(self.parameters)
        result["rms"] = self.rms_error
        return result
