"""CSV/JSON persistence for profiles, grids, and solver reports.

Profiles serialize to CSV with 17 significant digits so that reloading is
bit-exact for IEEE doubles.  Reports serialize to JSON with sorted keys;
reruns of an identical configuration produce identical bytes except for the
timestamp field.  Runs are persisted append-only under monotonically
numbered directories.
"""

from __future__ import annotations

import json
import os
import re
import time

import numpy as np

from .energy import StatePair
from .errors import ConfigError
from .grid import RadialFunction, RadialGrid, build_grid

SCHEMA_VERSION = 1
_FMT = "%.17g"


def grid_to_dict(grid: RadialGrid) -> dict:
    return grid.header()


def grid_from_dict(d: dict) -> RadialGrid:
    return build_grid(int(d["N"]), float(d["r_min"]), float(d["r_max"]), int(d["n_nodes"]))


def radial_function_to_csv(path: str, f: RadialFunction) -> None:
    with open(path, "w") as fh:
        fh.write("r,value\n")
        for r, v in zip(f.grid.r, f.values):
            fh.write(f"{_FMT % r},{_FMT % v}\n")


def pair_to_csv(path: str, pair: StatePair) -> None:
    with open(path, "w") as fh:
        fh.write("r,u,v\n")
        for r, u, v in zip(pair.grid.r, pair.u.values, pair.v.values):
            fh.write(f"{_FMT % r},{_FMT % u},{_FMT % v}\n")


def pair_from_csv(path: str, grid: RadialGrid) -> StatePair:
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    if data.ndim != 2 or data.shape[1] != 3:
        raise ConfigError(["profiles"], f"{path}: expected columns r,u,v")
    if data.shape[0] != grid.n:
        raise ConfigError(["profiles"], f"{path}: {data.shape[0]} rows, grid has {grid.n}")
    if not np.allclose(data[:, 0], grid.r, rtol=1e-12, atol=0.0):
        raise ConfigError(["profiles"], f"{path}: radii do not match the configured grid")
    return StatePair(RadialFunction(grid, data[:, 1]), RadialFunction(grid, data[:, 2]))


def report_json(report_dict: dict, grid: RadialGrid, timestamp: float | None = None) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "grid": grid_to_dict(grid),
        "timestamp": time.time() if timestamp is None else timestamp,
        **report_dict,
    }
    return json.dumps(doc, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(obj):
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")


_RUN_RE = re.compile(r"^run-(\d{6})$")


def next_run_dir(output_dir: str) -> str:
    """Allocate the next run-NNNNNN directory under output_dir."""
    os.makedirs(output_dir, exist_ok=True)
    existing = [int(m.group(1)) for name in os.listdir(output_dir)
                if (m := _RUN_RE.match(name))]
    run_id = max(existing, default=0) + 1
    path = os.path.join(output_dir, f"run-{run_id:06d}")
    os.makedirs(path)
    return path


def persist_run(output_dir: str, report, grid: RadialGrid) -> str:
    """Write report.json + profiles.csv into a fresh run directory."""
    run_dir = next_run_dir(output_dir)
    with open(os.path.join(run_dir, "report.json"), "w") as fh:
        fh.write(report_json(report.to_dict(), grid))
    pair_to_csv(os.path.join(run_dir, "profiles.csv"), report.profiles)
    return run_dir
