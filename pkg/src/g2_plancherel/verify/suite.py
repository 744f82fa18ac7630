"""
Identity suite behind ``verify``.

Each check returns a CheckResult (pass/fail, worst deviation, details);
``run_suite`` runs them in order, prints a progress tree when verbose and
collects a report that serializes to JSON.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
import pandas as pd
from scipy import special

from ..config import DEFAULT_TOLERANCES, RunConfig
from ..errors import G2PlancherelError
from ..roots.rootsys import (
    RootSystemData,
    SpectralPoint,
    build_root_system,
    doubled,
    weyl_group,
    weyl_positivity_set,
)
from ..special.cgamma import gamma
from ..spectral import cfun
from ..spectral.cfun import SmallKType, closed_form_c, collapsed_factor, sl2_factor
from ..spectral.hcseries import MultiplicityFunction, coeff_table, phi, upsilon_grid, upsilon_phi
from ..analysis import plancherel
from ..analysis.dschecker import no_discrete_series_check
from ..analysis.transform import dual_measure_constant


@dataclass
class CheckResult:
    name: str
    passed: bool
    max_error: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "max_error": self.max_error, "details": self.details}


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def _random_lambdas(n: int, seed: int, box: float = 5.0, min_imag: float = 0.05) -> list[tuple[complex, complex]]:
    """Coroot pairs with every G2 pairing kept away from the real axis."""
    rng = np.random.default_rng(seed)
    coeffs = ((1, 0), (0, 1), (1, 3), (2, 3), (1, 1), (1, 2))
    out = []
    while len(out) < n:
        x = rng.uniform(-box, box, 2) + 1j * rng.uniform(-box, box, 2)
        pairings = [a * x[0] + b * x[1] for a, b in coeffs]
        if all(abs(p.imag) > min_imag for p in pairings) and all(abs(p) <= 3 * box for p in pairings):
            out.append((complex(x[0]), complex(x[1])))
    return out


# ==================== CHECKS ====================

def check_gamma_identities(R: RootSystemData, tol: dict) -> CheckResult:
    rng = np.random.default_rng(11)
    zs = rng.uniform(-4, 4, 40) + 1j * rng.uniform(-4, 4, 40)
    worst = 0.0
    for z in zs:
        g = gamma(z).value
        worst = max(
            worst,
            _rel(gamma(z + 1).value, z * g),
            _rel(g * gamma(1 - z).value, math.pi / cmath.sin(math.pi * z)),
            _rel(g * gamma(z + 0.5).value, 2 ** (1 - 2 * z) * math.sqrt(math.pi) * gamma(2 * z).value),
            _rel(g, complex(special.gamma(z))),
        )
    worst = max(worst, _rel(gamma(0.5).value, math.sqrt(math.pi)))
    return CheckResult("gamma-identities", worst <= tol["gamma"] * 10, worst, {"samples": len(zs)})


def check_gk_vs_closed_form(R: RootSystemData, tol: dict) -> CheckResult:
    worst = 0.0
    for x in _random_lambdas(200, seed=5):
        lam = SpectralPoint.from_coroot(R, x)
        for pi in SmallKType:
            worst = max(worst, _rel(cfun.gk_product(R, pi, lam).value, closed_form_c(pi, lam).value))
    dup = 0.0
    rng = np.random.default_rng(3)
    for mu in rng.uniform(0.2, 4, 30) + 1j * rng.uniform(-4, 4, 30):
        for nu in (0, 0.5, 1.5):
            dup = max(dup, _rel(collapsed_factor(mu, nu).value, sl2_factor(mu, nu).value))
    passed = worst <= tol["c_function"] and dup <= tol["duplication"]
    return CheckResult("gk-vs-closed-form", passed, max(worst, dup), {"product_vs_closed": worst, "duplication": dup})


def check_c0(R: RootSystemData, tol: dict) -> CheckResult:
    c0 = cfun.verify_c0(build_root_system("G2", R.metric_scale))
    rel = abs(c0 - 2 * math.pi ** 2) / (2 * math.pi ** 2)
    rho = SpectralPoint.rho(R)
    at_rho = max(abs(closed_form_c("triv", rho).value - 1), abs(cfun.gk_product(R, "triv", rho).value - 1))
    return CheckResult("c0", rel <= tol["c0"] and at_rho <= tol["c_function"], max(rel, at_rho), {"c0": c0})


def check_residue_lemma(R: RootSystemData, tol: dict) -> CheckResult:
    report = plancherel.residue_lemma_check(R=R, tol=tol["residue"], w_tol=tol["w_independence"], raise_on_failure=False)
    lhs, rhs = plancherel.kernel_identity(0.3 + 0.7j)
    kernel = _rel(lhs, rhs)
    worst = max(report.max_long_error, report.max_limit_error, report.max_circle_error)
    return CheckResult(
        "residue-lemma",
        report.passed and kernel <= 1e-11,
        worst,
        {"w_spread": report.w_spread, "kernel_identity": kernel, "points": int(report.rows["t"].nunique())},
    )


def check_p_factorization(R: RootSystemData, tol: dict) -> CheckResult:
    forms = 0.0
    for s in np.linspace(-3, 3, 25):
        forms = max(forms, abs(plancherel.residue_density_p(1j * s) - plancherel.residue_density_tanh(s)))
    product = 0.0
    for t in 1j * np.linspace(0.1, 3, 10):
        expected = (math.pi / 16) ** 2 * plancherel.restemp0(t) * plancherel.restemp(t)
        product = max(product, _rel(plancherel.residue_density_p(t), expected))
    total = plancherel.p_factorization().total
    exact = total.coefficient == 1 and total.two == -17 and total.pi == 1
    residue = 0.0
    for t in 1j * np.linspace(0.2, 3, 10):
        residue = max(residue, _rel(plancherel.mu_residue(t, R), plancherel.residue_density_p(t)))
    passed = forms <= tol["p_forms"] and product <= tol["p_forms"] * 100 and exact and residue <= tol["p_residue"]
    return CheckResult(
        "p-factorization",
        passed,
        max(forms, residue),
        {"forms": forms, "product": product, "exponents": [str(total.two), str(total.pi)], "mu_residue": residue},
    )


def check_w_invariance(R: RootSystemData, tol: dict) -> CheckResult:
    lam = SpectralPoint.from_coroot(R, [0.37 + 0.8j, -0.21 + 1.3j])
    H = np.linalg.solve(R.simple_root_vectors(), np.ones(R.rank))
    worst = 0.0
    for pi in ("triv", "pi1"):
        base = upsilon_phi(pi, lam, H, max_height=30)
        for w in weyl_group(R):
            worst = max(worst, _rel(upsilon_phi(pi, lam.act(w), H, max_height=30), base))
    return CheckResult("w-invariance", worst <= tol["w_invariance"], worst)


def check_weyl_positivity(R: RootSystemData, tol: dict) -> CheckResult:
    W = weyl_group(R)
    expected = {W.element(word) for word in ((), (1,), (2,), (1, 2), (2, 1), (2, 1, 2))}
    found = set(weyl_positivity_set(R, plancherel.GAMMA))
    vanishing = plancherel.vanishing_off_weyl_set(R)
    terms = plancherel.line_residue_terms("pi2", R)
    lines = {line.root.label for line in plancherel.singular_lines("pi2", R)}
    passed = (
        len(W) == 12
        and found == expected
        and len(vanishing) == 6
        and all(vanishing.values())
        and 2 * len(terms) == len(found)
        and lines == {"a1", "a1+a2", "2a1+a2"}
    )
    return CheckResult("weyl-positivity", passed, 0.0, {"W^gamma": sorted(w.label for w in found)})


def check_discrete_series(R: RootSystemData, tol: dict) -> CheckResult:
    try:
        cert = no_discrete_series_check(100)
    except G2PlancherelError as exc:
        return CheckResult("discrete-series", False, details={"error": str(exc)})
    return CheckResult("discrete-series", True, 0.0, cert)


def _hypergeometric_coefficients(k: float, ell: float, n: int) -> list[float]:
    return [special.poch(k, j) * special.poch(k - ell, j) / (special.poch(1 - ell, j) * math.factorial(j)) for j in range(n + 1)]


def check_a1_oracle(R: RootSystemData, tol: dict) -> CheckResult:
    A1 = build_root_system("A1", R.metric_scale)
    engine = doubled(A1)
    k = MultiplicityFunction.uniform(0.5)
    lam = SpectralPoint.from_coroot(A1, [0.37])
    ell = lam.pairing(engine.positive_roots[0]).real
    table = coeff_table(engine, k, lam, 12)
    oracle = _hypergeometric_coefficients(0.5, ell, 12)
    coeffs = max(abs(table[(n,)] - oracle[n]) for n in range(13))

    H = np.array([1.0])
    x = float(engine.positive_roots[0].as_array() @ H)
    closed = math.exp((ell - 0.5) * x / 2) * special.hyp2f1(0.5, 0.5 - ell, 1 - ell, math.exp(-x))
    value = phi(engine, k, lam, H, max_height=40).value
    series = abs(value - closed)
    passed = coeffs <= tol["hypergeometric"] and series <= tol["hypergeometric"] * 10
    return CheckResult("a1-oracle", passed, max(coeffs, series), {"coefficients": coeffs, "phi": series})


def check_limit(R: RootSystemData, tol: dict, t: float = 25.0) -> CheckResult:
    samples = [(1.3 + 0.4j, 0.8 - 0.2j), (0.7 + 1.1j, 1.2 + 0.3j), (2.1 - 0.5j, 0.6 + 0.9j), (1.6, 1.45 + 0.1j), (0.9 - 1.2j, 1.7 - 0.4j)]
    H = np.linalg.solve(R.simple_root_vectors(), np.ones(R.rank))
    worst = 0.0
    for pi in ("triv", "pi1"):
        for x in samples:
            lam = SpectralPoint.from_coroot(R, x)
            values, _ = upsilon_grid(pi, R, lam.as_array()[None, :], t * H[None, :], max_height=10)
            scaled = cmath.exp(t * (-lam.evaluate(H) + float(R.rho @ H))) * values[0, 0]
            worst = max(worst, abs(scaled - closed_form_c(pi, lam).value))
    return CheckResult("limit-test", worst <= tol["limit"], worst, {"t": t})


def check_positivity(R: RootSystemData, tol: dict) -> CheckResult:
    axis = np.linspace(-5, 5, 50)
    mesh = np.stack(np.meshgrid(axis, axis, indexing="ij"), axis=-1).reshape(-1, 2)
    low = min(float(np.min(cfun.plancherel_density_array(pi, R, mesh))) for pi in SmallKType)
    line = float(np.min(plancherel.line_weight(np.linspace(-5, 5, 201), R)))
    passed = low >= tol["positivity"] and line >= tol["positivity"]
    return CheckResult("density-positivity", passed, min(low, line), {"dual_measure": dual_measure_constant(R)})


CHECKS: dict[str, Callable[[RootSystemData, dict], CheckResult]] = {
    "gamma-identities": check_gamma_identities,
    "gk-vs-closed-form": check_gk_vs_closed_form,
    "c0": check_c0,
    "residue-lemma": check_residue_lemma,
    "p-factorization": check_p_factorization,
    "w-invariance": check_w_invariance,
    "weyl-positivity": check_weyl_positivity,
    "discrete-series": check_discrete_series,
    "a1-oracle": check_a1_oracle,
    "limit-test": check_limit,
    "density-positivity": check_positivity,
}


# ==================== PIPELINE ====================

@dataclass
class SuiteReport:
    results: list[CheckResult]
    config: dict

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failing(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "config": self.config, "items": [r.to_dict() for r in self.results]}

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{"item": r.name, "passed": r.passed, "max_error": r.max_error} for r in self.results])


def run_suite(
    config: Optional[RunConfig] = None,
    only: Optional[Sequence[str]] = None,
    verbose: bool = True,
) -> SuiteReport:
    """
    Run the verification items in order.

    Args:
        config: Metric scale and tolerances (defaults to RunConfig())
        only: Subset of item names
        verbose: Print a progress tree to stderr

    Raises:
        ValueError: If ``only`` names an unknown item
    """
    config = config or RunConfig()
    names = list(only) if only else list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown verification items {unknown}; expected some of {list(CHECKS)}")
    tol = {**DEFAULT_TOLERANCES, **config.tolerances}
    R = build_root_system("G2", config.metric_scale)

    if verbose:
        print(f"🔬 Running {len(names)} verification item(s) at metric scale {config.metric_scale:g}...", file=sys.stderr)
    results = []
    for i, name in enumerate(names):
        try:
            result = CHECKS[name](R, tol)
        except (G2PlancherelError, ArithmeticError, ValueError) as exc:
            result = CheckResult(name, False, math.inf, {"error": f"{type(exc).__name__}: {exc}"})
        results.append(result)
        if verbose:
            glyph = "└─" if i == len(names) - 1 else "├─"
            mark = "✅" if result.passed else "❌"
            print(f"  {glyph} {mark} {name:20s} max error {result.max_error:.2e}", file=sys.stderr)

    report = SuiteReport(results, config.to_dict())
    if verbose:
        print("=" * 60, file=sys.stderr)
        if report.passed:
            print("✅ All verification items passed", file=sys.stderr)
        else:
            print(f"❌ Failing: {', '.join(report.failing)}", file=sys.stderr)
        print("=" * 60, file=sys.stderr)
    return report


# ==================== TESTING ====================

if __name__ == "__main__":
    run_suite(only=["c0", "gk-vs-closed-form", "discrete-series"])
