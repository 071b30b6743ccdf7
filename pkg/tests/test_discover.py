"""
Tests for fitting, grid solving and classification.
"""

import numpy as np
import pytest

from sumform.discover import (
    SampleSet, assemble_eq110, classify_detailed, classify_solution, fit_affine_family, fit_all,
    fit_power_family, grid_solve_eq110,
)
from sumform.discover.classify import fit_abscissae
from sumform.entropy import entropy_bundle
from sumform.equations import EquationId, EquationSpec, FamilyTag
from sumform.errors import FitError
from sumform.families import (
    SolutionBundle, result1_bundle, result2_bundle, theorem1_construct, theorem2_construct,
    theorem3_construct,
)
from sumform.maps import (
    AffineAdditive,
    MultCombo,
    MultiplicativeMap,
    constant_function,
    identity_function,
    make_additive,
    power_function,
)
from sumform.residual import verify_over_grid
from sumform.scalar import Backend, Scalar


def _samples(F, resolution=12):
    return SampleSet.from_function(F, fit_abscissae(resolution))


class TestSampleSet:
    """Tests for SampleSet."""

    def test_csv_round_trip(self):
        """Test to_csv followed by from_csv."""
        s = _samples(power_function(2), 4)
        text = s.to_csv()
        assert text.splitlines()[0] == "x,y"
        assert text.splitlines()[2] == "1/4,1/16"
        assert SampleSet.from_csv(text) == s

    def test_invalid_csv(self):
        """Test header and row errors."""
        with pytest.raises(FitError) as exc:
            SampleSet.from_csv("a,b\n0,0\n")
        assert exc.value.code == "invalid-csv"
        with pytest.raises(FitError) as exc:
            SampleSet.from_csv("x,y\n0,0,0\n")
        assert exc.value.code == "invalid-csv"
        with pytest.raises(FitError):
            SampleSet.from_csv("x,y\nabc,1\n")

    def test_duplicate_abscissa(self):
        """Test repeated x values."""
        with pytest.raises(FitError) as exc:
            SampleSet.from_pairs([("1/2", "0"), ("1/2", "1")])
        assert exc.value.code == "duplicate-abscissa"

    def test_interior_count(self):
        """Test points strictly inside (0, 1)."""
        assert _samples(identity_function()).interior_count == 11
        assert SampleSet.from_pairs([(0, 0), (1, 1)]).interior_count == 0


class TestFitting:
    """Tests for the template fits."""

    def test_affine(self):
        """Test y = -p + 1/9."""
        fit = fit_affine_family(_samples(AffineAdditive(make_additive(-1), Scalar.rational(1, 9))))
        assert fit.family is FamilyTag.T2_AFFINE
        assert fit.parameters["slope"] == pytest.approx(-1.0)
        assert fit.parameters["const"] == pytest.approx(1 / 9)
        assert fit.rms_error < 1e-12

    def test_power_square(self):
        """Test α = 2 recovered within 1e-9 at d = 12."""
        fit = fit_power_family(_samples(power_function(2)))
        assert fit.family is FamilyTag.T2_MULT
        assert abs(fit.parameters["alpha"] - 2.0) < 1e-9
        assert fit.parameters["scale"] == pytest.approx(1.0)
        assert fit.rms_error < 1e-9

    def test_power_with_linear_part(self):
        """Test y = 3p^(5/2) - p on floats."""
        pairs = [(k / 16, 3 * (k / 16) ** 2.5 - k / 16) for k in range(17)]
        fit = fit_power_family(SampleSet.from_pairs(pairs))
        assert fit.parameters["alpha"] == pytest.approx(2.5, abs=1e-7)
        assert fit.parameters["scale"] == pytest.approx(3.0, abs=1e-6)
        assert fit.parameters["slope"] == pytest.approx(-1.0, abs=1e-6)

    def test_power_with_const(self):
        """Test the optional constant term."""
        pairs = [(k / 12, (k / 12) ** 3 + 0.25) for k in range(13)]
        fit = fit_power_family(SampleSet.from_pairs(pairs), with_const=True)
        assert fit.parameters["alpha"] == pytest.approx(3.0, abs=1e-7)
        assert fit.parameters["const"] == pytest.approx(0.25, abs=1e-7)

    def test_power_not_affine(self):
        """Test that p² is far from every line."""
        assert fit_affine_family(_samples(power_function(2))).rms_error > 1e-3

    def test_insufficient_points(self):
        """Test the point-count errors."""
        s = SampleSet.from_pairs([(0, 0), ("1/2", "1/4"), (1, 1)])
        with pytest.raises(FitError) as exc:
            fit_power_family(s)
        assert exc.value.code == "insufficient-interior-points"
        with pytest.raises(FitError) as exc:
            fit_affine_family(SampleSet.from_pairs([(0, 0), (1, 1)]))
        assert exc.value.code == "insufficient-points"

    def test_fit_all(self):
        """Test that both templates report on a smooth function."""
        results = fit_all(_samples(power_function(3)))
        assert [r.family for r in results] == [FamilyTag.T2_AFFINE, FamilyTag.T2_MULT]
        assert results[1].to_dict()["family"] == "4.4"


class TestGridSolver:
    """Tests for the grid solve of the product equation."""

    def test_square_g(self):
        """Test g_j = p² at d = 4: ten unknowns, nullity 1, f = p²."""
        solution = grid_solve_eq110([power_function(2)] * 3, 3, 3, 4)
        assert len(solution.abscissae) == 10
        assert solution.nullity == 1
        assert solution.residual_norm < 1e-9
        assert solution.projection_rms([power_function(2)]) < 1e-9
        assert solution.values[-1] == pytest.approx(1.0)

    def test_solution_table(self):
        """Test the table and CSV forms of a solution."""
        solution = grid_solve_eq110([power_function(2)] * 3, 3, 3, 4)
        T = solution.table()
        assert T(Scalar.rational(1, 4)).value == pytest.approx(1 / 16)
        csv = solution.to_sample_set().to_csv()
        assert len(csv.splitlines()) == 11

    def test_exact_values_satisfy_system(self):
        """Test that p² tabulated on the unknowns solves the system."""
        system = assemble_eq110([power_function(2)] * 3, 3, 3, 3)
        assert system.residual_norm(system.values_of(power_function(2))) < 1e-12
        assert system.residual_norm(np.ones(len(system.abscissae))) > 1e-3

    def test_cap(self):
        """Test the unknown-count cap."""
        with pytest.raises(FitError) as exc:
            assemble_eq110([power_function(2)] * 3, 3, 3, 4, cap=5)
        assert exc.value.code == "system-too-large"

    def test_zero_g(self):
        """Test g_j = 0: f(x) = 9x/8 - 1/8 keeps f(1) = 1 and solves the system."""
        g = [constant_function(0)] * 3
        solution = grid_solve_eq110(g, 3, 3, 3)
        assert solution.normalized
        assert solution.residual_norm < 1e-9
        assert solution.values[-1] == pytest.approx(1.0)
        system = solution.system
        affine = AffineAdditive(make_additive("9/8"), Scalar.rational(-1, 8))
        assert system.residual_norm(system.values_of(affine)) < 1e-12
        assert system.residual_norm(np.zeros(len(system.abscissae))) == 0.0

    def test_infeasible_normalization(self):
        """Test g_j = p² + p, which forces f(1) = 0 on the grid."""
        g = [MultCombo(Scalar.rational(1), MultiplicativeMap.power(2), make_additive(-1))] * 3
        solution = grid_solve_eq110(g, 3, 3, 4)
        assert not solution.normalized
        assert solution.residual_norm < 1e-9
        assert abs(solution.values[-1]) < 1e-9

    def test_solved_table_on_floats(self):
        """Test a solved table swept on floats, where p_i*q_j is inexact."""
        solution = grid_solve_eq110([power_function(2)] * 3, 3, 3, 3)
        bundle = SolutionBundle(
            EquationId.EQ110,
            FamilyTag.NONE,
            3,
            3,
            {"f": solution.table(), "g": [power_function(2)] * 3},
        )
        report = verify_over_grid(
            bundle.spec(), bundle, 3, include_irrational=False, backend=Backend.FLOAT
        )
        assert not report.exact
        assert report.passed
        assert report.evaluations == 10 * 10

    def test_g_count(self):
        """Test len(g) != m."""
        with pytest.raises(FitError) as exc:
            grid_solve_eq110([power_function(2)] * 2, 3, 3, 4)
        assert exc.value.code == "arity-mismatch"


class TestClassification:
    """Tests for classify_solution / classify_detailed."""

    @pytest.mark.parametrize(
        "bundle, family",
        [
            (theorem1_construct("3.1i", 3, 3, {"phi0": "1/9"}), "3.1i"),
            (theorem1_construct("3.1i", 3, 3, {"phi0": "2", "tail": ("1", "0", "0")}), "3.1i"),
            (theorem1_construct("3.1ii", 3, 3, {"phi0": "-1/3"}), "3.1ii"),
            (theorem1_construct("3.3", 3, 3, {"M": MultiplicativeMap.power(3)}), "3.3"),
            (theorem2_construct("4.1", 3, 3, {"b": make_additive(0, 1)}), "4.1"),
            (theorem2_construct("4.2", 3, 3, {"f0": "1/3", "f1": "2"}), "4.2"),
            (theorem2_construct("4.4", 3, 3, {"M": MultiplicativeMap.power(2), "f1": "3"}), "4.4"),
            (theorem3_construct("5.1", 3, 3, "-1/2"), "5.1"),
            (theorem3_construct("5.2", 3, 3, "1", {"h0": "1/3", "h1": "1"}), "5.2"),
            (theorem3_construct("5.4", 3, 3, "3", {"M": MultiplicativeMap.power(2)}), "5.4"),
            (entropy_bundle(2), "5.4"),
            (result1_bundle(make_additive(2), 3, 5), "R1"),
            (result2_bundle(make_additive(1), ["-1/3", "-1/3", "-1/3"]), "R2"),
        ],
    )
    def test_round_trip(self, bundle, family):
        """Test that constructed bundles classify to their family."""
        assert classify_solution(bundle, d=4).value == family

    def test_perturbed_is_none(self):
        """Test that a perturbed solution is not classified."""
        bundle = theorem2_construct("4.4", 3, 3).perturbed()
        result = classify_detailed(bundle, d=4)
        assert result.family is FamilyTag.NONE
        assert "not a solution" in result.diagnostic
        assert result.to_dict()["verification"]["passed"] is False

    def test_indicator_not_recognized(self):
        """Test that a discontinuous multiplicative part is reported, not guessed."""
        bundle = theorem1_construct("3.3", 3, 3, {"M": MultiplicativeMap.support_indicator()})
        result = classify_detailed(bundle, d=4)
        assert result.family is FamilyTag.NONE
        assert "discontinuous" in result.diagnostic
        assert result.report.passed

    def test_identity_prefers_affine(self):
        """Test that f = p goes to the affine family."""
        bundle = theorem2_construct("4.2", 3, 3, {"f0": "0", "f1": "1"})
        assert classify_solution(bundle, d=4) is FamilyTag.T2_AFFINE

    def test_samples(self):
        """Test classification of bare samples."""
        spec = EquationSpec(EquationId.EQ110, 3, 3)
        assert classify_solution(_samples(power_function(2)), spec) is FamilyTag.T2_MULT
        affine = AffineAdditive(make_additive(1), Scalar.rational(-1, 3))
        assert classify_solution(_samples(affine), spec) is FamilyTag.T2_ADDITIVE
        phi_spec = EquationSpec(EquationId.EQ111, 3, 3)
        assert classify_solution(_samples(power_function(3)), phi_spec) is FamilyTag.T1_MULT

    def test_samples_need_spec(self):
        """Test the spec-required and unsupported-equation errors."""
        samples = _samples(power_function(2))
        with pytest.raises(FitError) as exc:
            classify_solution(samples)
        assert exc.value.code == "spec-required"
        with pytest.raises(FitError) as exc:
            classify_solution(samples, EquationSpec(EquationId.EQ21, 3, 3))
        assert exc.value.code == "unsupported-equation"
