"""
Tests for CSV loading and table writing.
"""

import json

import numpy as np
import pandas as pd
import pytest

from g2_plancherel.analysis.transform import Spectrum, lambda_grid, QuadratureSpec
from g2_plancherel.ingest.loaders import (
    function_frame,
    load_sampled_function,
    load_spectrum,
    write_frame,
    write_json,
)


def test_load_a1_function_with_alias_columns(tmp_path):
    """x/f columns load as an A1 function."""
    path = tmp_path / "bump.csv"
    pd.DataFrame({"x": [0.1, 0.2, 0.3], "f": [1.0, 0.5, 0.25]}).to_csv(path, index=False)
    f = load_sampled_function(path, verbose=False)
    assert f.system.kind == "A1"
    assert np.allclose(f([[0.2]]), 0.5)
    assert f.name == "bump"


def test_load_g2_function(tmp_path):
    """Two H columns select G2 at the requested scale."""
    path = tmp_path / "g2.csv"
    pd.DataFrame({"h1": [0.1, 0.2, 0.1], "h2": [0.5, 0.6, 0.7], "value": [1.0, 2.0, 3.0]}).to_csv(path, index=False)
    f = load_sampled_function(path, metric_scale=4.0, verbose=False)
    assert f.system.kind == "G2" and f.system.rank == 2


def test_missing_file():
    """A missing CSV raises FileNotFoundError."""
    with pytest.raises(FileNotFoundError):
        load_sampled_function("does_not_exist.csv", verbose=False)


def test_empty_file(tmp_path):
    """Empty and header-only files raise ValueError."""
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(ValueError, match="empty"):
        load_sampled_function(empty, verbose=False)
    header = tmp_path / "header.csv"
    header.write_text("H1,value\n")
    with pytest.raises(ValueError, match="empty"):
        load_sampled_function(header, verbose=False)


def test_missing_value_column(tmp_path):
    """Files without a value column are rejected."""
    path = tmp_path / "novalue.csv"
    pd.DataFrame({"H1": [0.1, 0.2]}).to_csv(path, index=False)
    with pytest.raises(ValueError, match="missing required columns"):
        load_sampled_function(path, verbose=False)


def test_non_numeric_rows_are_dropped(tmp_path, capsys):
    """Rows that do not parse are dropped with a warning on stderr."""
    path = tmp_path / "dirty.csv"
    path.write_text("H1,value\n0.1,1.0\nabc,2.0\n0.3,0.5\n")
    f = load_sampled_function(path)
    captured = capsys.readouterr()
    assert "Dropped 1" in captured.err
    assert captured.out == "", "progress must not go to stdout"
    assert np.allclose(f([[0.3]]), 0.5)


def test_quality_report_names_dropped_coordinates(tmp_path, capsys):
    """The report attributes dropped rows to the coordinate column that failed."""
    path = tmp_path / "dirty_spectrum.csv"
    path.write_text("t1,t2,re\n0.1,0.2,1.0\nabc,0.4,2.0\n0.3,0.6,0.5\n")
    load_spectrum(path)
    lines = capsys.readouterr().err.splitlines()
    t1 = [line for line in lines if line.strip().startswith("im_lambda_a1")]
    t2 = [line for line in lines if line.strip().startswith("im_lambda_a2")]
    assert t1 and "1 non-numeric" in t1[0] and "range [0.1, 0.3]" in t1[0]
    assert t2 and "Complete" in t2[0] and "range [0.2, 0.6]" in t2[0]


def test_rank_mismatch(tmp_path, g2):
    """A one-column file cannot load into G2."""
    path = tmp_path / "a1.csv"
    pd.DataFrame({"H1": [0.1], "value": [1.0]}).to_csv(path, index=False)
    with pytest.raises(ValueError):
        load_sampled_function(path, system=g2, verbose=False)


def test_spectrum_round_trip_through_csv(tmp_path, g2):
    """A written spectrum reloads with the same values."""
    grid = lambda_grid(g2, QuadratureSpec(lambda_box=1, lambda_step=0.5))
    values = np.arange(len(grid.t)) + 0.5j
    spectrum = Spectrum(g2, grid.t, values)
    path = tmp_path / "spectrum.csv"
    write_frame(spectrum.to_frame(), path)
    loaded = load_spectrum(path, verbose=False)
    assert loaded.system.kind == "G2"
    assert np.allclose(loaded.values, values)
    assert np.allclose(loaded(grid.lams), values)


def test_spectrum_surface_column(tmp_path):
    """The surface column restores η."""
    path = tmp_path / "shifted.csv"
    pd.DataFrame({"t1": [0.1, 0.2], "re": [1.0, 2.0], "surface": ["-0.5", "-0.5"]}).to_csv(path, index=False)
    loaded = load_spectrum(path, verbose=False)
    assert loaded.eta == (-0.5,)


def test_function_frame_columns():
    """value_im appears only for complex data."""
    real = function_frame([[0.1, 0.2]], [1.0])
    assert list(real.columns) == ["H1", "H2", "value"]
    cplx = function_frame([[0.1]], [1 + 2j], errors=[1e-3])
    assert list(cplx.columns) == ["H1", "value", "value_im", "error"]


def test_write_frame_json(tmp_path):
    """JSON tables carry the schema version, metadata and rows."""
    path = tmp_path / "out.json"
    write_frame(pd.DataFrame({"a": [1.0], "b": [2 + 3j]}), path, fmt="json", meta={"command": "test"})
    doc = json.loads(path.read_text())
    assert doc["schema_version"] == 1 and doc["command"] == "test"
    assert doc["rows"] == [{"a": 1.0, "b": [2.0, 3.0]}]


def test_write_frame_rejects_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        write_frame(pd.DataFrame({"a": [1]}), tmp_path / "x", fmt="xml")


def test_write_json_to_stdout(capsys):
    """Without a path the document goes to stdout."""
    write_json({"value": 1 + 1j, "flags": np.array([True, False])})
    doc = json.loads(capsys.readouterr().out)
    assert doc["value"] == [1.0, 1.0]
    assert doc["flags"] == [True, False]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
