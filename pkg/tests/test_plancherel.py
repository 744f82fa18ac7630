"""
Tests for the π₂ residue calculus, the line density and the assembled inversion.
"""

import math

import numpy as np
import pytest

from g2_plancherel.errors import ChamberError, ProviderError, ToleranceError
from g2_plancherel.analysis.plancherel import (
    PowerTerm,
    RegionLabel,
    c1_constant,
    contour_shift_plan,
    density_frame,
    inverse_transform_full,
    kernel_identity,
    line_density_scan,
    line_residue_terms,
    line_weight,
    mu_residue,
    p_factorization,
    plancherel_identity,
    region_of,
    region_scan,
    residue_density_p,
    residue_density_tanh,
    residue_lemma_check,
    restemp,
    restemp0,
    singular_lines,
    vanishing_off_weyl_set,
)
from g2_plancherel.analysis.transform import LeadingTermProvider, QuadratureSpec, bump_function
from g2_plancherel.spectral.cfun import SmallKType


def _gaussian_spectrum(lams):
    return np.exp(0.5 * np.sum(np.asarray(lams) ** 2, axis=1))


def test_c1_constant(g2):
    """c₁ = √3/2 at the unit metric."""
    assert abs(c1_constant(g2) - math.sqrt(3) / 2) < 1e-12


def test_singular_lines(g2):
    """Only π₂ has singular lines, one per short root."""
    assert singular_lines("triv", g2) == [] and singular_lines("pi1", g2) == []
    labels = [line.root.label for line in singular_lines("pi2", g2)]
    assert labels == ["a1", "a1+a2", "2a1+a2"]


def test_region_labels(g2):
    """Sample points of each region get the right label."""
    assert region_of([0.0, 0.0], g2) is RegionLabel.IV
    assert region_of([-1.0, 0.0], g2) is RegionLabel.I
    assert region_of([-0.3, -0.2], g2) is RegionLabel.II
    assert region_of([-0.1, -0.12], g2) is RegionLabel.III


def test_region_rejects_bad_points(g2):
    """Points outside −closure(a₊*) or on a singular line raise ChamberError."""
    with pytest.raises(ChamberError):
        region_of([0.1, 0.0], g2)
    with pytest.raises(ChamberError):
        region_of([-0.1, -0.1], g2)


def test_region_scan_is_consistent(g2):
    """Every scanned label satisfies its region inequalities."""
    df = region_scan(200, g2, seed=3)
    assert len(df) == 200
    assert df["consistent"].all(), "label disagrees with inequalities"
    assert set(df["region"]) <= {"I", "II", "III", "IV"}


def test_kernel_identity():
    """The rank-one kernel identity holds off the integers."""
    for z in (0.3 + 0.7j, -1.2 + 0.4j, 2.5j):
        lhs, rhs = kernel_identity(z)
        assert abs(lhs - rhs) < 1e-11 * abs(rhs), f"kernel identity fails at {z}"


def test_residue_lemma(g2_scaled):
    """Numerical restriction and residues match the closed forms at any scale."""
    report = residue_lemma_check(R=g2_scaled)
    assert report.passed
    assert len(report.rows) == 20 * 6, "one row per point and Weyl element"
    assert report.max_limit_error < 1e-8 and report.max_circle_error < 1e-8
    assert report.w_spread < 1e-9


def test_residue_lemma_raises_on_tight_tolerance(g2):
    """A tolerance of zero cannot be met."""
    with pytest.raises(ToleranceError):
        residue_lemma_check([1j], g2, tol=0.0, w_tol=0.0)
    report = residue_lemma_check([1j], g2, tol=0.0, w_tol=0.0, raise_on_failure=False)
    assert not report.passed


def test_p_forms_agree():
    """p(is) equals its tanh form and the product of the two residue pieces."""
    for s in np.linspace(-3, 3, 13):
        assert abs(residue_density_p(1j * s) - residue_density_tanh(s)) < 1e-12
    for t in (0.4j, 1.3j, 2.2j):
        product = (math.pi / 16) ** 2 * restemp0(t) * restemp(t)
        assert abs(residue_density_p(t) - product) < 1e-12 * abs(product)


def test_p_exponents_are_exact():
    """The constants multiply to 2⁻¹⁷ π."""
    assert p_factorization().total == PowerTerm(1, -17, 1)


def test_p_removable_points():
    """p(0) = 0 and p is continuous through t = ±½."""
    assert residue_density_p(0) == 0
    for t in (0.5, -0.5):
        at = residue_density_p(t)
        near = residue_density_p(t + 1e-7)
        assert abs(at - (-16 / 2 ** 17)) < 1e-15
        assert abs(at - near) < 1e-9


def test_mu_residue_is_p(g2):
    """The residue of μ^{π₂} across the line is p."""
    for t in (0.5j, 1.5j):
        got = mu_residue(t, g2)
        want = residue_density_p(t)
        assert abs(got - want) < 1e-6 * abs(want), f"Res μ at {t}: {got} vs {want}"


def test_line_weight(g2):
    """The line weight is nonnegative, vanishes at 0 and is ≈ 3.0445e-4 at s = 1."""
    s = np.linspace(-5, 5, 101)
    assert np.all(line_weight(s, g2) >= 0)
    assert line_weight(0.0, g2) == 0
    assert abs(float(line_weight(1.0, g2)) - 3.0445e-4) < 1e-7


def test_line_density_scan_is_finite(g2):
    """p stays finite along the crossing segment."""
    df = line_density_scan(100, g2)
    assert np.isfinite(df["p"]).all()
    crossing = df[np.isclose(df["t"].abs(), 1 / 6)]
    assert len(crossing) == 2 and np.allclose(crossing["p"], 0, atol=1e-18)


def test_contour_shift_plan(g2):
    """π₂ collects one line term with the six-element Weyl set."""
    assert contour_shift_plan("triv", g2) == []
    (term,) = contour_shift_plan("pi2", g2)
    assert term.line.root.label == "2a1+a2"
    assert len(term.weyl_set) == 6
    assert abs(term.prefactor - (-c1_constant(g2) / (4j * math.pi))) < 1e-15


def test_unsymmetrised_terms(g2):
    """The three unsymmetrised terms sit on the three short lines."""
    terms = line_residue_terms("pi2", g2)
    assert sorted(t.line.root.label for t in terms) == ["2a1+a2", "a1", "a1+a2"]
    assert line_residue_terms(SmallKType.PI1, g2) == []


def test_vanishing_off_weyl_set(g2):
    """c^{π₂}(wλ) = 0 on the line for w outside W^{2α₁+α₂}."""
    flags = vanishing_off_weyl_set(g2)
    assert len(flags) == 6 and all(flags.values())


def test_full_inversion_needs_provider(g2):
    """π₂ without a provider raises ProviderError."""
    with pytest.raises(ProviderError):
        inverse_transform_full("pi2", _gaussian_spectrum, [0.7, 2.0], g2)


def test_full_inversion_adds_line_term(g2):
    """With a stub provider the result is continuous part plus residual."""
    quad = QuadratureSpec(lambda_box=3, lambda_step=0.5)
    H = np.linalg.solve(g2.simple_root_vectors(), np.ones(2))
    result = inverse_transform_full("pi2", _gaussian_spectrum, H, g2, quad, LeadingTermProvider())
    assert abs(result.value - (result.continuous + result.residual)) < 1e-14 * max(abs(result.value), 1)
    assert result.residual != 0
    triv = inverse_transform_full("triv", _gaussian_spectrum, H, g2, QuadratureSpec(lambda_box=3, lambda_step=0.5, max_height=10))
    assert triv.residual == 0


def test_plancherel_identity_a1(a1):
    """‖f‖² matches ∫|f^∧|²|c|⁻² for the A1 bump."""
    quad = QuadratureSpec(lambda_box=30, h_box=1.0, h_step=0.01, max_height=400)
    identity = plancherel_identity("triv", bump_function(a1), quad)
    assert identity.line_part == 0
    assert identity.rel_err < 1e-3, f"relative error {identity.rel_err}"


def test_density_frame_sections(g2):
    """π₂ tables carry the line weight; other K-types only the grid."""
    triv = density_frame("triv", g2, box=1.0, step=0.5)
    assert set(triv["section"]) == {"grid"} and len(triv) == 25
    pi2 = density_frame("pi2", g2, box=1.0, step=0.5)
    line = pi2[pi2["section"] == "line"]
    assert len(line) == 5
    assert line.loc[np.isclose(line["x1"], 0), "value"].iloc[0] == 0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
