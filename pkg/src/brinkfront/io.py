"""Bit-stable CSV emission and parsing for snapshots, diagnostics, the
analytic wave table and sweep summaries.

All floats are written with 17 significant digits so a parse-write round
trip reproduces every value bit-exactly; nothing wall-clock dependent goes
into any file.
"""

from __future__ import annotations

import json
import os
from typing import List

import numpy as np

from .diagnostics import DiagnosticsRecord
from .grid import Field, Grid1D
from .transport import SimState

__all__ = [
    "fmt",
    "snapshot_filename",
    "write_snapshot",
    "read_snapshot",
    "CsvSnapshotSink",
    "CsvDiagnosticsSink",
    "read_diagnostics",
    "write_wave_table",
    "write_manifest",
    "read_manifest",
    "SUMMARY_HEADER",
]

SNAPSHOT_HEADER = "x,n,p,W"
DIAGNOSTICS_HEADER = "t,mass,max_p,comp_residual,front_pos,osc_mid,osc_over,jump_est"
SUMMARY_HEADER = "value,sigma_est,jump_est,comp_residual_final,osc_mid_final,status"
MANIFEST_NAME = "MANIFEST.json"


def fmt(x: float) -> str:
    """17-significant-digit decimal, enough to round-trip any double."""
    return f"{x:.17g}"


def snapshot_filename(t: float) -> str:
    return f"snap_t{t:.6f}.csv"


def write_snapshot(directory: str, state: SimState) -> str:
    x = state.n.grid.cell_centers()
    path = os.path.join(directory, snapshot_filename(state.t))
    lines = [SNAPSHOT_HEADER]
    n, p, w = state.n.values, state.p.values, state.w.values
    for i in range(x.shape[0]):
        lines.append(f"{fmt(x[i])},{fmt(n[i])},{fmt(p[i])},{fmt(w[i])}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def read_snapshot(path: str):
    """Arrays (x, n, p, w) from a snapshot file."""
    with open(path) as fh:
        header = fh.readline().strip()
        if header != SNAPSHOT_HEADER:
            raise ValueError(f"{path}: expected header {SNAPSHOT_HEADER!r}, got {header!r}")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if data.shape[1] != 4:
        raise ValueError(f"{path}: expected 4 columns, got {data.shape[1]}")
    return data[:, 0], data[:, 1], data[:, 2], data[:, 3]


def state_from_snapshot(path: str, grid: Grid1D, t: float) -> SimState:
    x, n, p, w = read_snapshot(path)
    if x.shape[0] != grid.n_cells:
        raise ValueError(f"{path}: {x.shape[0]} rows do not match grid ({grid.n_cells})")
    return SimState(t=t, n=Field(n, grid), p=Field(p, grid), w=Field(w, grid))


class CsvSnapshotSink:
    """Writes one snap_t<seconds>.csv per emitted state."""

    def __init__(self, directory: str):
        self.directory = directory
        self.paths: List[str] = []

    def on_snapshot(self, state: SimState):
        self.paths.append(write_snapshot(self.directory, state))


class CsvDiagnosticsSink:
    """Appends records to a single diagnostics.csv."""

    def __init__(self, path: str):
        self.path = path
        self.records: List[DiagnosticsRecord] = []
        with open(self.path, "w") as fh:
            fh.write(DIAGNOSTICS_HEADER + "\n")

    def on_record(self, record: DiagnosticsRecord):
        self.records.append(record)
        row = ",".join(fmt(getattr(record, name)) for name in DiagnosticsRecord.FIELDS)
        with open(self.path, "a") as fh:
            fh.write(row + "\n")


def read_diagnostics(path: str) -> List[DiagnosticsRecord]:
    records = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != DIAGNOSTICS_HEADER:
            raise ValueError(f"{path}: expected header {DIAGNOSTICS_HEADER!r}, got {header!r}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != len(DiagnosticsRecord.FIELDS):
                raise ValueError(f"{path}: bad row {line!r}")
            records.append(DiagnosticsRecord(*(float(s) for s in parts)))
    return records


def write_wave_table(path: str, wave, x: np.ndarray):
    """Snapshot-format table of the analytic wave profiles (front at x=0)."""
    from .wave import profile_arrays

    n, p, w = profile_arrays(wave, x)
    lines = [SNAPSHOT_HEADER]
    for i in range(x.shape[0]):
        lines.append(f"{fmt(x[i])},{fmt(n[i])},{fmt(p[i])},{fmt(w[i])}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_manifest(directory: str, payload: dict) -> str:
    path = os.path.join(directory, MANIFEST_NAME)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def read_manifest(directory: str) -> dict:
    with open(os.path.join(directory, MANIFEST_NAME)) as fh:
        return json.load(fh)
