"""
Tests for the entropy of degree α.
"""

import math

import pytest

from sumform.entropy import (
    Alpha, entropy_alpha, entropy_bundle, entropy_from_solution, lambda_of_alpha, shannon_entropy,
)
from sumform.equations import EquationId, FamilyTag
from sumform.errors import EntropyError
from sumform.residual import verify_over_grid
from sumform.scalar import Backend, Scalar
from sumform.simplex import enumerate_grid, irrational_distributions, make_distribution


class TestEntropyValues:
    """Tests for entropy_alpha."""

    def test_fair_coin(self):
        """Test H(1/2, 1/2) = 1 at α = 2."""
        assert entropy_alpha(make_distribution(["1/2", "1/2"]), 2) == Scalar.rational(1)

    def test_uniform_three(self):
        """Test H(1/3, 1/3, 1/3) = 4/3 at α = 2."""
        assert entropy_alpha(make_distribution(["1/3", "1/3", "1/3"]), 2) == Scalar.rational(4, 3)

    def test_vertex_is_zero(self):
        """Test that a certain outcome carries no entropy."""
        for alpha in (2, 3, 0.5):
            assert entropy_alpha(make_distribution(["1", "0", "0"]), alpha).to_float() == 0.0

    def test_fractional_alpha_is_float(self):
        """Test α = 1/2 on the fair coin."""
        H = entropy_alpha(make_distribution(["1/2", "1/2"]), 0.5)
        assert H.backend is Backend.FLOAT
        assert H.value == pytest.approx(1.0)

    def test_near_shannon(self):
        """Test α = 1 ± 1e-6 against the Shannon entropy."""
        for P in list(enumerate_grid(3, 6))[:12] + [make_distribution([0.2, 0.3, 0.5])]:
            shannon = shannon_entropy(P)
            for alpha in (1 - 1e-6, 1 + 1e-6):
                assert entropy_alpha(P, alpha).to_float() == pytest.approx(shannon, abs=1e-4)

    def test_shannon_fair_coin(self):
        """Test one bit for a fair coin."""
        assert shannon_entropy(make_distribution(["1/2", "1/2"])) == pytest.approx(1.0)
        assert shannon_entropy(make_distribution(["1/4"] * 4)) == pytest.approx(math.log2(4))


class TestAlpha:
    """Tests for the α order and λ."""

    def test_alpha_is_one(self):
        """Test the excluded order."""
        with pytest.raises(EntropyError) as exc:
            entropy_alpha(make_distribution(["1/2", "1/2"]), 1)
        assert exc.value.code == "alpha-is-one"
        with pytest.raises(EntropyError):
            Alpha(1.0)

    def test_invalid_alpha(self):
        """Test non-numeric orders."""
        with pytest.raises(EntropyError) as exc:
            Alpha("2")
        assert exc.value.code == "invalid-alpha"

    def test_integral_float(self):
        """Test that 3.0 is the integer order 3."""
        assert Alpha(3.0).value == 3
        assert Alpha(3.0).is_integer

    def test_lambda_of_alpha(self):
        """Test λ = 2^(1-α) - 1."""
        assert lambda_of_alpha(2) == Scalar.rational(-1, 2)
        assert lambda_of_alpha(0) == Scalar.rational(1)
        assert lambda_of_alpha(3) == Scalar.rational(-3, 4)
        assert lambda_of_alpha(0.5).value == pytest.approx(math.sqrt(2) - 1)


class TestEntropyBridge:
    """Tests that the λ-equation solution reproduces the entropy."""

    @pytest.mark.parametrize("alpha", [2, 3, 4])
    def test_sum_of_solution(self, alpha):
        """Test Σh(p_i) = H_α(P) exactly on the d = 6 grid."""
        h = entropy_bundle(alpha).functions["h"]
        points = list(enumerate_grid(3, 6)) + list(irrational_distributions(3))
        for P in points:
            assert entropy_from_solution(P, h) == entropy_alpha(P, alpha)

    def test_bundle_verifies(self):
        """Test that the degree-2 solution solves equation 1.5 exactly."""
        bundle = entropy_bundle(2)
        assert bundle.equation is EquationId.EQ15
        assert bundle.family is FamilyTag.T3_MULT
        assert bundle.lam == Scalar.rational(-1, 2)
        report = verify_over_grid(bundle.spec(), bundle, 6)
        assert report.exact
        assert report.max_abs_residual == Scalar.rational(0)

    def test_fractional_bundle_on_floats(self):
        """Test α = 5/2 within the float tolerance."""
        bundle = entropy_bundle(2.5)
        assert not bundle.is_exact
        report = verify_over_grid(bundle.spec(), bundle, 4)
        assert not report.exact
        assert report.passed

    def test_bundle_alpha_is_one(self):
        """Test that the bundle rejects α = 1."""
        with pytest.raises(EntropyError):
            entropy_bundle(1)
