"""Serialization of the three table types: columnar CSV plus a JSON header.

CSV bodies are RFC-4180 with '.' decimal separator, UTF-8, and 17 significant
digits (lossless for binary64, so a round trip preserves values well beyond
the required 15 digits).  The JSON header carries the grid metadata and the
normalization constants that give the numbers meaning.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .geometry import FunctionOnX, PolarGrid
from .transforms import (A_SPACE_DLEB, N_HAAR_DS, SPECTRAL_DLEB, W_ORDER,
                         HorocycleFunction, SpectralTable)
from .geometry import RHO

__all__ = [
    "save_function", "load_function",
    "save_spectral", "load_spectral",
    "save_horocycle", "load_horocycle",
    "format_float",
]

SCHEMA = "hypharm-table/1"


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def _normalization() -> dict:
    return {"rho": RHO, "w_order": W_ORDER, "spectral_dleb": SPECTRAL_DLEB,
            "a_space_dleb": A_SPACE_DLEB, "n_haar_ds": N_HAAR_DS}


def _write_csv(path: Path, header: list[str], columns: list[np.ndarray]):
    rows = len(columns[0])
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(",".join(header) + "\r\n")
        for i in range(rows):
            f.write(",".join(format_float(c[i]) for c in columns) + "\r\n")


def _read_csv(path: Path, ncols: int) -> np.ndarray:
    data = np.loadtxt(path, delimiter=",", skiprows=1, dtype=float)
    data = np.atleast_2d(data)
    if data.shape[1] != ncols:
        raise ValueError(f"expected {ncols} columns in {path}")
    return data


def save_function(u: FunctionOnX, base: str | Path) -> tuple[Path, Path]:
    base = Path(base)
    csv_path = base.with_suffix(".csv")
    json_path = base.with_suffix(".json")
    g = u.grid
    rr = np.repeat(g.r_values, g.n_theta)
    tt = np.tile(g.theta_values, g.n_r)
    vals = u.values.ravel()
    _write_csv(csv_path, ["r", "theta", "re", "im"], [rr, tt, vals.real, vals.imag])
    meta = {"schema": SCHEMA, "kind": "function_on_x",
            "r_max": g.r_max, "n_r": g.n_r, "n_theta": g.n_theta,
            "normalization": _normalization()}
    json_path.write_text(json.dumps(meta, indent=1, sort_keys=True))
    return csv_path, json_path


def load_function(base: str | Path) -> FunctionOnX:
    base = Path(base)
    meta = json.loads(base.with_suffix(".json").read_text())
    if meta.get("kind") != "function_on_x":
        raise ValueError("not a function_on_x table")
    grid = PolarGrid.build(meta["r_max"], meta["n_r"], meta["n_theta"])
    data = _read_csv(base.with_suffix(".csv"), 4)
    vals = (data[:, 2] + 1j * data[:, 3]).reshape(meta["n_r"], meta["n_theta"])
    return FunctionOnX(grid, vals)


def save_spectral(t: SpectralTable, base: str | Path) -> tuple[Path, Path]:
    base = Path(base)
    csv_path = base.with_suffix(".csv")
    json_path = base.with_suffix(".json")
    ll = np.repeat(t.lambda_values, t.n_b)
    bb = np.tile(t.b_values, t.n_lambda)
    vp = t.values.ravel()
    vn = t.values_neg.ravel()
    _write_csv(csv_path, ["lam", "beta", "re_pos", "im_pos", "re_neg", "im_neg"],
               [ll, bb, vp.real, vp.imag, vn.real, vn.imag])
    meta = {"schema": SCHEMA, "kind": "spectral_table",
            "lambda_max": t.lambda_max, "n_lambda": t.n_lambda, "n_b": t.n_b,
            "normalization": _normalization()}
    json_path.write_text(json.dumps(meta, indent=1, sort_keys=True))
    return csv_path, json_path


def load_spectral(base: str | Path) -> SpectralTable:
    base = Path(base)
    meta = json.loads(base.with_suffix(".json").read_text())
    if meta.get("kind") != "spectral_table":
        raise ValueError("not a spectral_table")
    nl, nb = meta["n_lambda"], meta["n_b"]
    data = _read_csv(base.with_suffix(".csv"), 6)
    lam = data[::nb, 0]
    beta = data[:nb, 1]
    vp = (data[:, 2] + 1j * data[:, 3]).reshape(nl, nb)
    vn = (data[:, 4] + 1j * data[:, 5]).reshape(nl, nb)
    return SpectralTable(lam, beta, vp, vn)


def save_horocycle(t: HorocycleFunction, base: str | Path) -> tuple[Path, Path]:
    base = Path(base)
    csv_path = base.with_suffix(".csv")
    json_path = base.with_suffix(".json")
    hh = np.repeat(t.h_values, t.n_b)
    bb = np.tile(t.b_values, len(t.h_values))
    vv = t.values.ravel()
    _write_csv(csv_path, ["h", "beta", "re", "im"], [hh, bb, vv.real, vv.imag])
    meta = {"schema": SCHEMA, "kind": "horocycle_function",
            "h_max": float(-t.h_values[0]), "n_h": len(t.h_values),
            "n_b": t.n_b, "normalization": _normalization()}
    json_path.write_text(json.dumps(meta, indent=1, sort_keys=True))
    return csv_path, json_path


def load_horocycle(base: str | Path) -> HorocycleFunction:
    base = Path(base)
    meta = json.loads(base.with_suffix(".json").read_text())
    if meta.get("kind") != "horocycle_function":
        raise ValueError("not a horocycle_function")
    nh, nb = meta["n_h"], meta["n_b"]
    data = _read_csv(base.with_suffix(".csv"), 4)
    h = data[::nb, 0]
    beta = data[:nb, 1]
    vals = (data[:, 2] + 1j * data[:, 3]).reshape(nh, nb)
    return HorocycleFunction(h, beta, vals)
