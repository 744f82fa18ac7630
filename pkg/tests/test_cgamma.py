"""
Tests for the complex Gamma function (mpmath as oracle).
"""

import cmath
import math

import mpmath
import numpy as np
import pytest

from g2_plancherel.errors import PoleError, PoleMismatchError
from g2_plancherel.special.cgamma import (
    gamma,
    gamma_ratio,
    log_gamma,
    log_gamma_array,
    log_gamma_quotient,
    reciprocal_gamma,
    reciprocal_gamma_array,
)

POINTS = [0.5, 1.0, 3.7, 0.1 + 0.2j, -2.5 + 0.3j, 1.5 - 4j, -0.3 - 7j, 12 + 1j, 0.5 + 10j]


def _mp(z):
    return complex(mpmath.gamma(mpmath.mpc(z.real, z.imag)))


def test_gamma_matches_mpmath():
    """Γ agrees with mpmath to 1e-12 relative."""
    for z in POINTS:
        z = complex(z)
        got = gamma(z).value
        want = _mp(z)
        assert abs(got - want) / abs(want) < 1e-12, f"Γ({z}) = {got}, expected {want}"


def test_gamma_half():
    """Γ(1/2) = √π."""
    assert abs(gamma(0.5).value - math.sqrt(math.pi)) < 1e-13


def test_recurrence_and_reflection():
    """Γ(z+1) = zΓ(z) and Γ(z)Γ(1−z) = π/sin πz."""
    for z in (0.3 + 0.4j, -1.2 + 2j, 2.5 - 1j):
        g = gamma(z).value
        assert abs(gamma(z + 1).value - z * g) < 1e-12 * abs(z * g)
        refl = math.pi / cmath.sin(math.pi * z)
        assert abs(g * gamma(1 - z).value - refl) < 1e-12 * abs(refl)


def test_log_gamma_raises_at_pole():
    """log Γ at a nonpositive integer raises PoleError with the pole."""
    with pytest.raises(PoleError) as info:
        log_gamma(-3 + 1e-14j)
    assert info.value.pole == -3, "wrong pole reported"


def test_gamma_flags_poles():
    """gamma() reports poles instead of raising."""
    v = gamma(0)
    assert v.is_pole and v.pole_order == 1
    assert math.isinf(v.value.real)


def test_gamma_ratio_pole_bookkeeping():
    """Poles cancel to residue ratios; lone poles give inf or 0."""
    assert abs(gamma_ratio(-2, -1) - (-0.5)) < 1e-14, "Γ(−2)/Γ(−1) should be −1/2"
    assert math.isinf(gamma_ratio(-1, 2).real)
    assert gamma_ratio(2, -1) == 0
    with pytest.raises(PoleMismatchError):
        gamma_ratio(-1, 2, require_finite=True)


def test_quotient_with_slopes():
    """Γ(t/2)/Γ(t) → 2 as t → 0."""
    log_val, order = log_gamma_quotient([(0, 0.5)], [(0, 1.0)])
    assert order == 0
    assert abs(cmath.exp(log_val) - 2) < 1e-13


def test_reciprocal_gamma_is_entire():
    """1/Γ vanishes at the poles and matches mpmath elsewhere."""
    assert reciprocal_gamma(-4) == 0
    z = 0.2 - 3j
    assert abs(reciprocal_gamma(z) - 1 / _mp(z)) < 1e-12 * abs(1 / _mp(z))


def test_array_versions_match_scalar():
    """Vectorized log Γ and 1/Γ agree with the scalar code."""
    z = np.asarray([complex(p) for p in POINTS] + [-2.0])
    logs = log_gamma_array(z)
    for zi, li in zip(z[:-1], logs[:-1]):
        assert abs(cmath.exp(li) - cmath.exp(log_gamma(zi))) < 1e-12 * abs(cmath.exp(li))
    assert np.isinf(logs[-1].real), "pole entry should be inf"
    rec = reciprocal_gamma_array(z)
    assert rec[-1] == 0
    assert abs(rec[0] - 1 / math.sqrt(math.pi)) < 1e-14


def test_conjugate_symmetry():
    """Γ(z̄) = conj Γ(z)."""
    for z in (0.7 + 2j, -3.3 + 0.5j):
        assert abs(gamma(z.conjugate()).value - gamma(z).value.conjugate()) < 1e-12 * abs(gamma(z).value)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
