"""
Shared vocabulary: equation identifiers, solution-family tags and the
validated description of one equation instance.

The sum-form equations, with p in Γ_n and q in Γ_m (LHS - RHS is the residual)::

    1.5   ΣΣ h(p_i q_j) = Σh(p_i) + Σh(q_j) + λ Σh(p_i) Σh(q_j)
    1.7   ΣΣ f_ij(p_i q_j) = Σh_i(p_i) + Σk_j(q_j) + λ Σh_i(p_i) Σk_j(q_j)
    1.8   ΣΣ h(p_i q_j) = Σh(p_i) + Σk_j(q_j) + λ Σh(p_i) Σk_j(q_j)
    1.10  ΣΣ f(p_i q_j) = Σf(p_i) Σg_j(q_j)
    1.11  ΣΣ φ(p_i q_j) = Σφ(p_i) Σφ(q_j) + m(n-1)φ(0) Σφ(p_i)
    2.1   Σψ(p_i) = c                  (p in Γ_k)
    2.3   Σψ_j(q_j) = 0                (q in Γ_m)
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional

from sumform.errors import EquationError
from sumform.scalar import Scalar


class EquationId(Enum):
    """Identifiers of the supported functional equations."""
    EQ15 = "1.5"
    EQ17 = "1.7"
    EQ18 = "1.8"
    EQ110 = "1.10"
    EQ111 = "1.11"
    EQ21 = "2.1"
    EQ23 = "2.3"

    @classmethod
    def parse(cls, text: str) -> 'EquationId':
        try:
            return cls(text)
        except ValueError:
            known = ", ".join(e.value for e in cls)
            raise EquationError("unknown-equation", f"unknown equation {text!r} (known: {known})")

    @property
    def uses_pair(self) -> bool:
        """True for equations over a pair of distributions (p, q)."""
        return self not in (EquationId.EQ21, EquationId.EQ23)

    @property
    def needs_lambda(self) -> bool:
        return self in (EquationId.EQ15, EquationId.EQ17, EquationId.EQ18)


class FamilyTag(Enum):
    """Labels of the solution families, named after their solution forms."""
    T1_AFFINE_I = "3.1i"
    T1_AFFINE_II = "3.1ii"
    T1_MULT = "3.3"
    T2_ADDITIVE = "4.1"
    T2_AFFINE = "4.2"
    T2_MULT = "4.4"
    T3_ADDITIVE = "5.1"
    T3_AFFINE = "5.2"
    T3_MULT = "5.4"
    RESULT1 = "R1"
    RESULT2 = "R2"
    NONE = "none"

    @classmethod
    def parse(cls, text: str) -> 'FamilyTag':
        try:
            return cls(text)
        except ValueError:
            known = ", ".join(t.value for t in cls)
            raise EquationError("unknown-family", f"unknown family {text!r} (known: {known})")

    @property
    def equation(self) -> Optional[EquationId]:
        """The equation a family solves."""
        return _FAMILY_EQUATION.get(self)


_FAMILY_EQUATION = {
    FamilyTag.T1_AFFINE_I: EquationId.EQ111,
    FamilyTag.T1_AFFINE_II: EquationId.EQ111,
    FamilyTag.T1_MULT: EquationId.EQ111,
    FamilyTag.T2_ADDITIVE: EquationId.EQ110,
    FamilyTag.T2_AFFINE: EquationId.EQ110,
    FamilyTag.T2_MULT: EquationId.EQ110,
    FamilyTag.T3_ADDITIVE: EquationId.EQ18,
    FamilyTag.T3_AFFINE: EquationId.EQ18,
    FamilyTag.T3_MULT: EquationId.EQ18,
    FamilyTag.RESULT1: EquationId.EQ21,
    FamilyTag.RESULT2: EquationId.EQ23,
}


@dataclass(frozen=True)
class EquationSpec:
    """
    One equation instance.

    For (2.1) ``n`` is the length k of the distribution; for (2.3) ``m`` is.

    Attributes:
        equation: Which equation.
        n: Length of p (or k for 2.1).
        m: Length of q.
        lam: λ for 1.5, 1.7, 1.8.
        constant: c for 2.1 (defaults to 0).

    Example::

        spec = EquationSpec(EquationId.EQ18, 3, 3, lam=Scalar.rational(-1, 2))
    """

    equation: EquationId
    n: int = 3
    m: int = 3
    lam: Optional[Scalar] = None
    constant: Optional[Scalar] = None

    def __post_init__(self):
        eq = self.equation
        if eq.uses_pair:
            if self.n < 3 or self.m < 3:
                raise EquationError(
                    "arity-too-small", f"need n >= 3 and m >= 3, got n={self.n}, m={self.m}"
                )
        elif eq is EquationId.EQ21 and self.n < 3:
            raise EquationError("arity-too-small", f"need k >= 3, got {self.n}")
        elif eq is EquationId.EQ23 and self.m < 3:
            raise EquationError("arity-too-small", f"need m >= 3, got {self.m}")
        if eq.needs_lambda:
            if self.lam is None:
                raise EquationError("lambda-required", f"equation {eq.value} needs λ")
            if self.lam.is_zero():
                raise EquationError("lambda-zero", "λ must be non-zero")
        if eq is EquationId.EQ21 and self.constant is None:
            object.__setattr__(self, "constant", Scalar.rational(0))

    @property
    def sizes(self) -> Dict[str, int]:
        """Distribution lengths used by the equation."""
        if self.equation is EquationId.EQ21:
            return {"k": self.n}
        if self.equation is EquationId.EQ23:
            return {"m": self.m}
        return {"n": self.n, "m": self.m}

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"equation": self.equation.value}
        result.update(self.sizes)
        if self.lam is not None:
            result["lambda"] = str(self.lam)
        if self.constant is not None:
            result["c"] = str(self.constant)
        return result
