import numpy as np
import pytest

from invdiff import make_grid, manufactured_problem
from invdiff.bundles import load_bundle, read_csv, save_bundle, write_csv


def test_bundle_roundtrip(tmp_path):
    data, _, _ = manufactured_problem(make_grid(1, 1, 20, 15))
    save_bundle(tmp_path / "b", data)
    loaded, warnings = load_bundle(tmp_path / "b")
    assert warnings == []
    assert loaded.grid == data.grid
    for name in ("f", "phi", "omega", "omega_xx", "g", "gprime"):
        a, b = getattr(loaded, name), getattr(data, name)
        assert np.max(np.abs(a - b)) < 1e-12 * max(1.0, np.max(np.abs(b)))


def test_missing_gprime_uses_fallback(tmp_path):
    data, _, _ = manufactured_problem(make_grid(1, 1, 20, 40))
    save_bundle(tmp_path / "b", data)
    (tmp_path / "b" / "gprime.csv").unlink()
    loaded, warnings = load_bundle(tmp_path / "b")
    assert len(warnings) == 1 and "gprime" in warnings[0]
    # second-order differences of e^t/2 at tau=1/40
    assert np.max(np.abs(loaded.gprime - data.gprime)) < 1e-3


def test_missing_file_rejected(tmp_path):
    data, _, _ = manufactured_problem(make_grid(1, 1, 10, 5))
    save_bundle(tmp_path / "b", data)
    (tmp_path / "b" / "f.csv").unlink()
    with pytest.raises(FileNotFoundError, match="f.csv"):
        load_bundle(tmp_path / "b")
    with pytest.raises(FileNotFoundError):
        load_bundle(tmp_path / "nowhere")


def test_csv_format(tmp_path):
    path = tmp_path / "x.csv"
    write_csv(path, ["a", "b"], [[1.0, 2.5], [3.0, -4.25e-7]], {"k": "v", "n": 3})
    text = path.read_text().splitlines()
    assert text[0] == "# k=v;n=3"
    assert text[1] == "a,b"
    assert text[2].split(",")[0] == "1.000000000000e+00"
    meta, header, data = read_csv(path)
    assert meta == {"k": "v", "n": "3"}
    assert header == ["a", "b"]
    assert data[1, 1] == pytest.approx(-4.25e-7, rel=1e-12)


def test_csv_significant_digits(tmp_path):
    path = tmp_path / "x.csv"
    value = 1.0 / 3.0
    write_csv(path, ["v"], [[value]], {})
    _, _, data = read_csv(path)
    assert data[0, 0] == pytest.approx(value, rel=1e-12)
