"""CSV interchange: problem bundles and run artifacts.

Every file is plain comma-separated text with a `# key=value;...` metadata
comment on the first line, a header row of column names, and data rows in
scientific notation with 12 decimal digits. A problem bundle is a directory

    grid.csv      l, T, N, M (single row)
    phi.csv       initial samples        (N+1 rows)
    omega.csv     weight samples         (N+1 rows)
    omega_xx.csv  weight second derivative (N+1 rows)
    g.csv         measurement samples    (M+1 rows)
    gprime.csv    measurement derivative (M+1 rows, optional)
    f.csv         source samples, M+1 rows x N+1 columns

A missing gprime.csv is filled by the second-order finite-difference fallback
and reported as a warning.
"""

import csv
import io
from pathlib import Path

import numpy as np

from invdiff.model import Grid, ProblemData, gprime_fallback, make_grid

FLOAT_FMT = "%.12e"

BUNDLE_FILES = ("grid.csv", "phi.csv", "omega.csv", "omega_xx.csv", "g.csv", "f.csv")


def format_meta(meta: dict) -> str:
    return "# " + ";".join(f"{k}={v}" for k, v in meta.items())


def parse_meta(line: str) -> dict:
    body = line.lstrip("#").strip()
    out = {}
    for item in body.split(";"):
        if "=" in item:
            k, _, v = item.partition("=")
            out[k] = v
    return out


def write_csv(path, header, rows, meta: dict) -> None:
    """rows: iterable of sequences; floats formatted, other values stringified."""
    buf = io.StringIO()
    buf.write(format_meta(meta) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([FLOAT_FMT % v if isinstance(v, float) else str(v)
                         for v in row])
    Path(path).write_text(buf.getvalue())


def read_csv(path):
    """Returns (meta, header, data) where data is a float matrix."""
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise ValueError(f"{path}: empty file")
    meta = {}
    start = 0
    if lines[0].startswith("#"):
        meta = parse_meta(lines[0])
        start = 1
    reader = csv.reader(lines[start:])
    rows = [row for row in reader if row]
    if not rows:
        raise ValueError(f"{path}: missing header row")
    header = rows[0]
    data = np.array([[float(v) for v in row] for row in rows[1:]], dtype=float)
    return meta, header, data


def _base_meta(extra: dict | None = None) -> dict:
    from invdiff import __version__

    meta = {"artifact": "invdiff", "version": __version__}
    if extra:
        meta.update(extra)
    return meta


def save_bundle(directory, data: ProblemData, meta: dict | None = None) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    grid = data.grid
    meta = _base_meta(meta)
    meta.update({"l": grid.l, "T": grid.T, "N": grid.N, "M": grid.M})
    write_csv(directory / "grid.csv", ["l", "T", "N", "M"],
              [[grid.l, grid.T, grid.N, grid.M]], meta)
    for name in ("phi", "omega", "omega_xx"):
        write_csv(directory / f"{name}.csv", [name],
                  [[float(v)] for v in getattr(data, name)], meta)
    write_csv(directory / "g.csv", ["g"], [[float(v)] for v in data.g], meta)
    write_csv(directory / "gprime.csv", ["gprime"],
              [[float(v)] for v in data.gprime], meta)
    write_csv(directory / "f.csv", [f"f_{i}" for i in range(grid.N + 1)],
              [[float(v) for v in row] for row in data.f], meta)


def load_bundle(directory):
    """Read a problem bundle; returns (ProblemData, warnings)."""
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"problem bundle directory not found: {directory}")
    for name in BUNDLE_FILES:
        if not (directory / name).is_file():
            raise FileNotFoundError(f"problem bundle is missing {name}")

    _, _, gridrow = read_csv(directory / "grid.csv")
    if gridrow.shape != (1, 4):
        raise ValueError("grid.csv must hold a single row l,T,N,M")
    l, T, N, M = gridrow[0]
    grid = make_grid(l, T, int(N), int(M))

    def column(name):
        _, _, data = read_csv(directory / f"{name}.csv")
        return data.reshape(-1)

    phi = column("phi")
    omega = column("omega")
    omega_xx = column("omega_xx")
    g = column("g")
    _, _, f = read_csv(directory / "f.csv")

    warnings = []
    gprime_path = directory / "gprime.csv"
    if gprime_path.is_file():
        gprime = column("gprime")
    else:
        gprime = gprime_fallback(g, grid.tau)
        warnings.append(
            "gprime.csv missing; derivative filled by second-order differences of g"
        )
    data = ProblemData(grid=grid, f=f, phi=phi, omega=omega,
                       omega_xx=omega_xx, g=g, gprime=gprime)
    return data, warnings


def write_surface(path, grid: Grid, surface, meta: dict | None = None) -> None:
    surface = np.asarray(surface, dtype=float)
    header = ["t"] + [f"u_{i}" for i in range(grid.N + 1)]
    t = grid.t
    rows = [[float(t[k])] + [float(v) for v in surface[k]]
            for k in range(grid.M + 1)]
    write_csv(path, header, rows, _base_meta(meta))


def write_columns(path, names, columns, meta: dict | None = None) -> None:
    columns = [np.asarray(c, dtype=float) for c in columns]
    rows = [[float(c[k]) for c in columns] for k in range(len(columns[0]))]
    write_csv(path, list(names), rows, _base_meta(meta))


def write_report(path, report_rows, meta: dict | None = None) -> None:
    header = ["h", "tau", "er_u", "er_p", "l2_u", "l2_p"]
    rows = [[float(r[k]) for k in header] for r in report_rows]
    write_csv(path, header, rows, _base_meta(meta))
