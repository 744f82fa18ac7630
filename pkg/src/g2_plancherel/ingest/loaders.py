"""
CSV loading and writing for sampled functions and spectra.

Input files are harmonized the same way regardless of the column naming
used by whatever produced them:
- H-coordinates from H1/h1/H_1/x (and H2/h2/H_2/y)
- values from value/f/re (+ optional im/value_im)
- spectra from im_lambda_a1/t1/x1 (and im_lambda_a2/t2/x2), re, im, error

Output is CSV or JSON; JSON documents carry ``schema_version``.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from ..config import SCHEMA_VERSION
from ..roots.rootsys import RootSystemData, build_root_system
from ..analysis.transform import RadialFunction, Spectrum

# ==================== CONSTANTS ====================

FUNCTION_COLUMNS = {
    "H1": ["H1", "h1", "H_1", "x"],
    "H2": ["H2", "h2", "H_2", "y"],
    "value": ["value", "f", "re", "value_re"],
    "value_im": ["value_im", "im", "imag"],
}

SPECTRUM_COLUMNS = {
    "im_lambda_a1": ["im_lambda_a1", "t1", "x1", "lambda_a1"],
    "im_lambda_a2": ["im_lambda_a2", "t2", "x2", "lambda_a2"],
    "re": ["re", "value", "real"],
    "im": ["im", "imag", "value_im"],
    "error": ["error", "err"],
}

DEFAULT_SYSTEMS = {1: "A1", 2: "G2"}


# ==================== HELPER FUNCTIONS ====================

def _coalesce(df: pd.DataFrame, cands: list[str], new_col: str, verbose: bool = True) -> Optional[pd.Series]:
    """
    Coalesce candidate columns into one numeric column.

    Takes the first non-null value from the candidates in order and coerces
    it with ``pd.to_numeric(errors="coerce")``. Returns None if no
    candidate column exists.
    """
    found = [c for c in cands if c in df.columns]
    if not found:
        return None
    s = pd.Series([np.nan] * len(df), index=df.index, dtype=float)
    for c in found:
        s = s.fillna(pd.to_numeric(df[c], errors="coerce"))
    if verbose and found != [new_col]:
        print(f"  ℹ️  Coalesced '{new_col}' from: {', '.join(found)}", file=sys.stderr)
    return s.rename(new_col)


def _data_quality_report(df: pd.DataFrame, dropped: pd.Series, coords: list[str]) -> None:
    """Per-column counts of dropped and missing entries, with coordinate ranges."""
    print("\n📊 Data Quality Report:", file=sys.stderr)
    print("=" * 60, file=sys.stderr)
    for col in df.columns:
        bad = int(dropped.get(col, 0))
        gaps = int(df[col].isna().sum())
        if bad:
            status = f"{bad:6,} non-numeric (rows dropped)"
        elif gaps:
            status = f"{gaps:6,} missing (read as 0)"
        else:
            status = "✅ Complete"
        if col in coords:
            status += f"  range [{df[col].min():.4g}, {df[col].max():.4g}]"
        print(f"  {col:14s}: {status}", file=sys.stderr)
    print("=" * 60, file=sys.stderr)


def _read(path: str | Path, verbose: bool, what: str) -> pd.DataFrame:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"CSV file not found: {path}")
    if verbose:
        print(f"📂 Loading {what} from: {path.name}", file=sys.stderr)
    try:
        df = pd.read_csv(path)
    except pd.errors.EmptyDataError:
        raise ValueError(f"CSV file is empty: {path}") from None
    if df.empty:
        raise ValueError(f"CSV file is empty: {path}")
    if verbose:
        print(f"✅ Loaded {len(df):,} rows with {len(df.columns)} columns", file=sys.stderr)
    return df


def _harmonize(df: pd.DataFrame, mapping: dict, required: list[str], verbose: bool) -> tuple[pd.DataFrame, pd.Series]:
    """Coalesce mapped columns, then drop rows with a bad required entry and count them per column."""
    out = pd.DataFrame(index=df.index)
    for target, cands in mapping.items():
        s = _coalesce(df, cands, target, verbose)
        if s is not None:
            out[target] = s
    missing = [c for c in required if c not in out.columns]
    if missing:
        raise ValueError(f"missing required columns {missing}; found {list(df.columns)}")
    dropped = out[required].isna().sum()
    before = len(out)
    out = out.dropna(subset=required)
    if verbose and len(out) < before:
        print(f"  ⚠️  Dropped {before - len(out):,} rows with non-numeric entries", file=sys.stderr)
    if out.empty:
        raise ValueError("no usable rows after numeric coercion")
    return out, dropped


def _system_for(rank: int, system: Optional[RootSystemData], metric_scale: float) -> RootSystemData:
    if system is not None:
        if system.rank != rank:
            raise ValueError(f"file has rank {rank} coordinates but {system.kind} has rank {system.rank}")
        return system
    return build_root_system(DEFAULT_SYSTEMS[rank], metric_scale)


# ==================== LOADERS ====================

def load_sampled_function(
    path: str | Path,
    system: Optional[RootSystemData] = None,
    metric_scale: float = 1.0,
    verbose: bool = True,
) -> RadialFunction:
    """
    Load samples H ↦ f(H) and wrap them as a W-invariant RadialFunction.

    Args:
        path: CSV with H1[, H2] and value columns (names harmonized)
        system: Root system (default A1 for one H column, G2 for two)
        metric_scale: Scale used when the system is inferred
        verbose: Print progress and a data-quality report (to stderr)

    Returns:
        RadialFunction interpolating the samples

    Raises:
        FileNotFoundError: If the CSV file doesn't exist
        ValueError: If the CSV is empty or lacks H/value columns

    Example:
        >>> f = load_sampled_function("bump.csv", verbose=False)
    """
    df = _read(path, verbose, "sampled function")
    rank = 2 if any(c in df.columns for c in FUNCTION_COLUMNS["H2"]) else 1
    cols = ["H1", "H2"][:rank]
    out, dropped = _harmonize(df, FUNCTION_COLUMNS, cols + ["value"], verbose)
    if verbose:
        _data_quality_report(out, dropped, cols)
    R = _system_for(rank, system, metric_scale)
    values = out["value"].to_numpy(dtype=complex)
    if "value_im" in out.columns:
        values = values + 1j * out["value_im"].fillna(0).to_numpy()
    return RadialFunction.from_samples(R, out[cols].to_numpy(), values, name=Path(path).stem)


def load_spectrum(
    path: str | Path,
    system: Optional[RootSystemData] = None,
    metric_scale: float = 1.0,
    verbose: bool = True,
) -> Spectrum:
    """
    Load λ-samples (Im λ in coroot coordinates) as a Spectrum.

    Raises:
        FileNotFoundError: If the CSV file doesn't exist
        ValueError: If the CSV is empty or lacks coordinate/re columns
    """
    df = _read(path, verbose, "spectrum")
    rank = 2 if any(c in df.columns for c in SPECTRUM_COLUMNS["im_lambda_a2"]) else 1
    cols = ["im_lambda_a1", "im_lambda_a2"][:rank]
    out, dropped = _harmonize(df, SPECTRUM_COLUMNS, cols + ["re"], verbose)
    if verbose:
        _data_quality_report(out, dropped, cols)
    R = _system_for(rank, system, metric_scale)
    values = out["re"].to_numpy(dtype=complex)
    if "im" in out.columns:
        values = values + 1j * out["im"].fillna(0).to_numpy()
    errors = out["error"].fillna(0).to_numpy() if "error" in out.columns else None
    eta = ()
    if "surface" in df.columns and df["surface"].notna().any():
        eta = tuple(float(x) for x in str(df["surface"].dropna().iloc[0]).split(","))
    return Spectrum(R, out[cols].to_numpy(), values, errors, eta)


# ==================== WRITERS ====================

def function_frame(Hs, values, errors=None) -> pd.DataFrame:
    """Rows H1[, H2], value[, value_im][, error]."""
    Hs = np.atleast_2d(np.asarray(Hs, dtype=float))
    values = np.asarray(values, dtype=complex)
    df = pd.DataFrame(Hs, columns=["H1", "H2"][: Hs.shape[1]])
    df["value"] = values.real
    if np.any(np.abs(values.imag) > 1e-12):
        df["value_im"] = values.imag
    if errors is not None:
        df["error"] = np.asarray(errors, dtype=float)
    return df


def _json_safe(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return str(value)
    return value


def write_frame(
    df: pd.DataFrame,
    path: Optional[str | Path] = None,
    fmt: str = "csv",
    meta: Optional[dict] = None,
) -> None:
    """
    Write a table as CSV or as a versioned JSON document.

    Complex cells are written as [re, im] pairs in JSON; callers split
    them into re/im columns for CSV. ``path=None`` writes to stdout.
    """
    if fmt == "csv":
        text = df.to_csv(index=False)
    elif fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, **(meta or {})}
        doc["rows"] = [{k: _json_safe(v) for k, v in row.items()} for row in df.to_dict(orient="records")]
        text = json.dumps(doc, indent=2, default=str) + "\n"
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _json_default(o):
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    return str(o)


def write_json(doc: dict, path: Optional[str | Path] = None) -> None:
    text = json.dumps({"schema_version": SCHEMA_VERSION, **doc}, indent=2, default=_json_default) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
