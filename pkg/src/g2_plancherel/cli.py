"""
Command-line front end.

Subcommands:
- c-eval: closed form against the product formula at given λ
- density: |c^π(iν)|⁻² over a coroot box (plus the π₂ line weight)
- verify: the identity suite, or the discrete-series certificate
- transform: forward / inverse / shifted-contour transforms of CSV data

Exit codes: 0 success, 1 tolerance or verification failure, 2 bad input,
3 missing spherical provider.

Usage:
    python -m g2_plancherel.cli c-eval --ktype triv --lambda rho
    python -m g2_plancherel.cli verify --only residue-lemma --format json
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from .config import (
    DEFAULT_QUADRATURE,
    DEFAULT_SERIES,
    DEFAULT_TOLERANCES,
    KTYPES,
    OUTPUT_FORMATS,
    SYSTEMS,
    RunConfig,
)
from .errors import (
    InfeasibilityViolation,
    ProviderError,
    QuadratureError,
    TailBoundError,
    ToleranceError,
)
from .roots.rootsys import RootSystemData, SpectralPoint, build_root_system
from .spectral.cfun import CFunctionValue, c_function, gk_product
from .analysis.transform import (
    QuadratureSpec,
    arthur_grid,
    default_provider,
    forward_spectrum,
    h_grid,
    inverse_grid,
    load_provider,
)
from .analysis.plancherel import density_frame
from .analysis.dschecker import no_discrete_series_check
from .ingest.loaders import function_frame, load_sampled_function, load_spectrum, write_frame, write_json
from .verify.suite import CHECKS, run_suite

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_PROVIDER = 3

# Second coordinate of each λ basis: coroot (λ_{α₁}, λ_{α₂}) or (λ_{α₁}, λ_{3α₁+2α₂}).
BASES = {"coroot": ("a1", "a2"), "long": ("a1", "3a1+2a2")}


def _log(msg: str, config: RunConfig) -> None:
    if config.verbose:
        print(msg, file=sys.stderr)


# ==================== PARSING ====================

def parse_complex(text: str) -> complex:
    """Accept 1.5, 0.3-2j, 0.3-2i or (0.3-2j)."""
    cleaned = text.strip().replace(" ", "").replace("i", "j").strip("()")
    try:
        return complex(cleaned)
    except ValueError:
        raise ValueError(f"cannot parse complex number {text!r}") from None


def parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse comma-separated numbers {text!r}") from None


def parse_lambda(text: str, R: RootSystemData, basis: str = "coroot") -> SpectralPoint:
    """
    Parse λ from "rho" or comma-separated complex coordinates.

    Args:
        text: "rho", or one complex number per rank, e.g. "0.5,1+2j"
        R: Root system the point lives in
        basis: "coroot" or "long" (G2 only)

    Raises:
        ValueError: On malformed input or a coordinate count mismatch
    """
    if text.strip().lower() == "rho":
        return SpectralPoint.rho(R)
    coords = [parse_complex(x) for x in text.split(",")]
    if len(coords) != R.rank:
        raise ValueError(f"λ needs {R.rank} coordinate(s) for {R.kind}, got {len(coords)} in {text!r}")
    if basis == "coroot" or R.rank == 1:
        return SpectralPoint.from_coroot(R, coords)
    vecs = np.vstack([R.root(label).as_array() for label in BASES[basis]])
    coroots = 2 * vecs / np.einsum("ij,ij->i", vecs, vecs)[:, None]
    return SpectralPoint.from_vector(R, np.linalg.solve(coroots, np.asarray(coords, dtype=complex)))


def _flag(value: CFunctionValue) -> str:
    if value.is_pole:
        return "pole"
    if value.is_zero:
        return "zero"
    return "regular"


def _rel_diff(a: CFunctionValue, b: CFunctionValue) -> float:
    if (a.is_pole, a.is_zero) != (b.is_pole, b.is_zero):
        return math.inf
    if a.is_pole or a.is_zero:
        return 0.0
    return abs(a.value - b.value) / max(abs(b.value), 1e-300)


# ==================== COMMANDS ====================

def cmd_c_eval(config: RunConfig, lambdas: Sequence[str], basis: str = "coroot") -> tuple[pd.DataFrame, int]:
    """
    Tabulate c^π by closed form and by the product formula.

    Returns:
        (table, exit code); the code is 1 if some relative difference exceeds config.tol
    """
    R = build_root_system(config.system, config.metric_scale)
    rows = []
    for text in lambdas:
        lam = parse_lambda(text, R, basis)
        closed = c_function(config.ktype, lam)
        product = gk_product(R, config.ktype, lam)
        coords = lam.coroot_coords()
        row = {}
        for i, x in enumerate(coords, start=1):
            row[f"lambda_a{i}_re"], row[f"lambda_a{i}_im"] = x.real, x.imag
        row.update(
            {
                "c_closed_re": closed.value.real,
                "c_closed_im": closed.value.imag,
                "c_product_re": product.value.real,
                "c_product_im": product.value.imag,
                "rel_diff": _rel_diff(closed, product),
                "flag": _flag(closed),
            }
        )
        rows.append(row)
    coord_cols = [f"lambda_a{i}_{p}" for i in range(1, R.rank + 1) for p in ("re", "im")]
    cols = coord_cols + ["c_closed_re", "c_closed_im", "c_product_re", "c_product_im", "rel_diff", "flag"]
    df = pd.DataFrame(rows, columns=cols)
    failed = df[df["rel_diff"] > config.tol]
    if len(failed):
        _log(f"❌ {len(failed)} of {len(df)} point(s) exceed tolerance {config.tol:g}", config)
        return df, EXIT_FAILURE
    _log(f"✅ Evaluated c^{config.ktype} at {len(df)} point(s)", config)
    return df, EXIT_OK


def cmd_density(config: RunConfig, box: float = 5.0, step: float = 0.1) -> pd.DataFrame:
    if not step > 0 or not box > 0:
        raise ValueError(f"box and step must be positive, got box={box}, step={step}")
    R = build_root_system(config.system, config.metric_scale)
    df = density_frame(config.ktype, R, box, step)
    _log(f"📊 Density table for {config.ktype} on {R.kind}: {len(df):,} rows", config)
    return df


def cmd_verify(config: RunConfig, only: Optional[Sequence[str]] = None, discrete_series: bool = False) -> tuple[dict, int]:
    if discrete_series:
        cert = no_discrete_series_check(100)
        _log("✅ No chamber admits a discrete-series parameter for π₂", config)
        return cert, EXIT_OK
    report = run_suite(config, only, verbose=config.verbose)
    return report.to_dict(), EXIT_OK if report.passed else EXIT_FAILURE


def _points(args_at: Sequence[str], R: RootSystemData, quad: QuadratureSpec) -> np.ndarray:
    if args_at:
        return np.asarray([parse_floats(p) for p in args_at], dtype=float).reshape(-1, R.rank)
    return h_grid(R, quad).points


def cmd_transform(
    config: RunConfig,
    input_path: Path,
    direction: str = "forward",
    provider: Optional[str] = None,
    at: Sequence[str] = (),
    eta: Optional[str] = None,
    strict: bool = False,
) -> pd.DataFrame:
    """
    Transform sampled data read from CSV.

    Args:
        direction: "forward" (function → spectrum), "inverse" (spectrum →
            function on i a*), or "arthur" (spectrum → function on η + i a*)
        provider: "series", "leading", "zero" or a .py file; π₂ requires one
        at: H points for the inverse directions (default: the H grid)
        eta: Surface η in coroot coordinates for "arthur"
        strict: Fail when the error estimate exceeds config.tol

    Raises:
        ProviderError: π₂ without a provider
        QuadratureError: strict mode and an under-resolved result
    """
    R = build_root_system(config.system, config.metric_scale)
    quad = QuadratureSpec.from_config(config)
    if not strict:
        quad = dataclasses.replace(quad, tol=None)
    spherical = load_provider(provider, quad.max_height) if provider else default_provider(config.ktype, quad.max_height)

    if direction == "forward":
        f = load_sampled_function(input_path, R, config.metric_scale, config.verbose)
        spectrum = forward_spectrum(config.ktype, f, quad, spherical)
        _log(f"✅ Forward transform on {len(spectrum.t):,} λ-nodes", config)
        return spectrum.to_frame()

    F = load_spectrum(input_path, R, config.metric_scale, config.verbose)
    Hs = _points(at, R, quad)
    if direction == "inverse":
        values, errors = inverse_grid(config.ktype, F, Hs, R, quad, spherical)
    elif direction == "arthur":
        surface = parse_floats(eta) if eta else F.eta
        values, errors = arthur_grid(config.ktype, F, Hs, surface, R, quad, spherical)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    _log(f"✅ {direction.capitalize()} transform at {len(Hs):,} point(s), max error {float(np.max(errors)):.2e}", config)
    return function_frame(Hs, values, errors)


# ==================== ENTRY POINT ====================

def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--ktype", choices=KTYPES, default="triv", help="small K-type (default: triv)")
    p.add_argument("--system", choices=SYSTEMS, default="G2", help="root system (default: G2)")
    p.add_argument("--metric-scale", type=float, default=1.0, help="scale of the invariant inner product (default: 1)")
    p.add_argument("--max-height", type=int, default=DEFAULT_SERIES["max_height"], help="series truncation height")
    p.add_argument("--lambda-box", type=float, default=DEFAULT_QUADRATURE["lambda_box"], help="half-width of the λ box")
    p.add_argument("--lambda-step", type=float, default=DEFAULT_QUADRATURE["lambda_step"], help="λ grid step")
    p.add_argument("--h-box", type=float, default=DEFAULT_QUADRATURE["h_box"], help="half-width of the H box")
    p.add_argument("--h-step", type=float, default=DEFAULT_QUADRATURE["h_step"], help="H grid step")
    p.add_argument("--tol", type=float, default=DEFAULT_TOLERANCES["c_function"], help="comparison tolerance")
    p.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default="csv", help="output format")
    p.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")
    p.add_argument("--quiet", action="store_true", help="suppress progress on stderr")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    ap = argparse.ArgumentParser(prog="g2-plancherel", description="Spherical transforms and Plancherel densities for split G2.")
    sub = ap.add_subparsers(dest="command", required=True)

    c_eval = sub.add_parser("c-eval", parents=[common], help="evaluate c-functions")
    c_eval.add_argument("--lambda", dest="lambdas", action="append", default=[], help='"rho" or "x1,x2" (repeatable)')
    c_eval.add_argument("--basis", choices=sorted(BASES), default="coroot", help="λ coordinates (default: coroot)")

    density = sub.add_parser("density", parents=[common], help="tabulate Plancherel densities")
    density.add_argument("--box", type=float, default=5.0, help="half-width of the ν box (default: 5)")
    density.add_argument("--step", type=float, default=0.1, help="grid step (default: 0.1)")

    verify = sub.add_parser("verify", parents=[common], help="run the identity suite")
    verify.add_argument("--only", action="append", choices=sorted(CHECKS), default=None, help="run selected item(s)")
    verify.add_argument("--discrete-series", action="store_true", help="print the discrete-series certificate")

    transform = sub.add_parser("transform", parents=[common], help="transform sampled data")
    transform.add_argument("--input", type=Path, required=True, help="input CSV")
    transform.add_argument("--direction", choices=("forward", "inverse", "arthur"), default="forward")
    transform.add_argument("--provider", default=None, help="series | leading | zero | path/to/provider.py")
    transform.add_argument("--at", action="append", default=[], help='H point "h1,h2" (repeatable)')
    transform.add_argument("--eta", default=None, help='surface η as "e1,e2" in coroot coordinates')
    transform.add_argument("--strict", action="store_true", help="fail when the error estimate exceeds --tol")
    return ap


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        ktype=args.ktype,
        system=args.system,
        metric_scale=args.metric_scale,
        max_height=args.max_height,
        lambda_box=args.lambda_box,
        lambda_step=args.lambda_step,
        h_box=args.h_box,
        h_step=args.h_step,
        tol=args.tol,
        output_format=args.output_format,
        out=args.out,
        verbose=not args.quiet,
    )


def _run(args: argparse.Namespace, config: RunConfig) -> int:
    meta = {"command": args.command, "config": config.to_dict()}
    if args.command == "c-eval":
        df, code = cmd_c_eval(config, args.lambdas, args.basis)
        write_frame(df, config.out, config.output_format, meta)
        return code
    if args.command == "density":
        write_frame(cmd_density(config, args.box, args.step), config.out, config.output_format, meta)
        return EXIT_OK
    if args.command == "verify":
        doc, code = cmd_verify(config, args.only, args.discrete_series)
        if config.output_format == "csv" and not args.discrete_series:
            write_frame(pd.DataFrame(doc["items"])[["name", "passed", "max_error"]], config.out, "csv")
        else:
            write_json({**meta, **doc}, config.out)
        if code != EXIT_OK:
            failing = [item["name"] for item in doc["items"] if not item["passed"]]
            print(f"❌ Verification failed: {', '.join(failing)}", file=sys.stderr)
        return code
    df = cmd_transform(config, args.input, args.direction, args.provider, args.at, args.eta, args.strict)
    write_frame(df, config.out, config.output_format, meta)
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        return _run(args, config)
    except ProviderError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_PROVIDER
    except (ToleranceError, QuadratureError, TailBoundError, InfeasibilityViolation) as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except (ValueError, FileNotFoundError) as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
