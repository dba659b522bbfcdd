"""CSV and JSON writers with a fixed, deterministic format."""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence


def fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return path


def write_json(path: Path, payload) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


GGS_SERIES_HEADER = ("schedule_name", "d", "time", "exponent")
BOWEN_HEADER = ("n", "tau", "tau_hat", "rho", "L", "avg_tau", "avg_tau_hat",
                "ftle_tau", "ftle_tau_hat", "ftle_tau_plus_rho")
CV_TABLE_HEADER = ("k", "n_k", "log_b_k", "log_eps_k")
CHECK_HEADER = ("inequality", "indices", "margin", "ok")
CV_FTLE_HEADER = ("j", "parity", "time", "exponent")
BIRKHOFF_HEADER = ("family", "k", "steps", "average")


def cv_table_rows(tables):
    for k in range(tables.k_max + 1):
        yield k, tables.n[k], tables.log_b[k], tables.log_eps[k]


def check_rows(checks):
    for c in checks:
        yield c.name, ";".join(str(i) for i in c.indices), float(c.margin), c.ok


def cv_ftle_rows(series):
    for j, (t, x) in zip(series.meta["j"], series.entries):
        yield j, "odd" if j % 2 else "even", t, x
