"""Flat key-value run configuration with dotted sections.

Documents look like

    model.k = 100
    grid.dx = 2e-3
    output.snapshot_times = 0.1, 12.5

Unknown keys are rejected so typos fail loudly; every key has a default
matching the reference setup (k=100, nu=1, p_max=1, indicator initial data
on [-0.2, 0.2], domain [-20, 20] with dx = 2e-3, t_end = 25).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Tuple

from .diagnostics import DiagnosticsConfig
from .grid import Grid1D
from .model import ModelParams
from .transport import TimeControls

__all__ = ["ConfigError", "RunConfig", "SweepConfig", "parse_config", "parse_sweep_config"]

OUTPUT_ROOT_ENV = "BRINKFRONT_OUT"


class ConfigError(ValueError):
    """Malformed document, unknown key, or an invariant violation; the
    message names the offending key path."""


@dataclass(frozen=True)
class RunConfig:
    model: ModelParams
    half_width: float
    dx: float
    time: TimeControls
    initial_a: float
    initial_b: float
    out_dir: str
    diagnostics: DiagnosticsConfig

    def grid(self) -> Grid1D:
        return Grid1D.from_half_width(self.half_width, self.dx)


@dataclass(frozen=True)
class SweepConfig:
    base: RunConfig
    axis: str
    values: Tuple[float, ...]


_SCHEMA = {
    "model.k": float,
    "model.nu": float,
    "model.p_max": float,
    "model.growth": str,
    "grid.l": float,
    "grid.dx": float,
    "time.cfl": float,
    "time.dt_max": float,
    "time.t_end": float,
    "initial.a": float,
    "initial.b": float,
    "output.dir": str,
    "output.snapshot_every": float,
    "output.snapshot_times": "float_list",
    "output.diag_every": float,
    "diagnostics.beta1": float,
    "diagnostics.beta2": float,
    "diagnostics.fit_t0": float,
    "diagnostics.fit_t1": float,
}

_SWEEP_SCHEMA = {
    "sweep.axis": str,
    "sweep.values": "float_list",
}


def _parse_value(key: str, raw: str, kind):
    if kind is str:
        return raw
    if kind is float:
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"{key}: malformed number {raw!r}") from None
    if kind == "float_list":
        items = [s.strip() for s in raw.split(",") if s.strip()]
        try:
            return tuple(float(s) for s in items)
        except ValueError:
            raise ConfigError(f"{key}: malformed number list {raw!r}") from None
    raise AssertionError(kind)


def _parse_document(text: str, schema: dict) -> dict:
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line.strip()!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in schema:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = _parse_value(key, raw, schema[key])
    return values


def _build_run_config(doc: dict) -> RunConfig:
    k = doc.get("model.k", 100.0)
    nu = doc.get("model.nu", 1.0)
    p_max = doc.get("model.p_max", 1.0)
    growth = doc.get("model.growth", "linear")
    if not k > 2.0:
        raise ConfigError(f"model.k: k must exceed 2, got {k:g}")
    if nu < 0.0:
        raise ConfigError(f"model.nu: nu must be >= 0, got {nu:g}")
    if not p_max > 0.0:
        raise ConfigError(f"model.p_max: must be positive, got {p_max:g}")
    try:
        model = ModelParams(k=k, nu=nu, p_max=p_max, growth=growth)
    except ValueError as exc:
        raise ConfigError(f"model: {exc}") from None

    half_width = doc.get("grid.l", 20.0)
    dx = doc.get("grid.dx", 2e-3)
    if not half_width > 0.0:
        raise ConfigError(f"grid.l: must be positive, got {half_width:g}")
    if not 0.0 < dx < half_width:
        raise ConfigError(f"grid.dx: must be in (0, L), got {dx:g}")

    t_end = doc.get("time.t_end", 25.0)
    try:
        time = TimeControls(
            cfl=doc.get("time.cfl", 0.4),
            dt_max=doc.get("time.dt_max", 1e-2),
            t_end=t_end,
            snapshot_every=doc.get("output.snapshot_every", 1.25),
            snapshot_times=doc.get("output.snapshot_times", (0.1,)),
            diag_every=doc.get("output.diag_every", 0.05),
        )
    except ValueError as exc:
        raise ConfigError(f"time: {exc}") from None
    if time.snapshot_every <= 0.0:
        raise ConfigError("output.snapshot_every: must be positive")
    if time.diag_every <= 0.0:
        raise ConfigError("output.diag_every: must be positive")

    a = doc.get("initial.a", -0.2)
    b = doc.get("initial.b", 0.2)
    if not a < b:
        raise ConfigError(f"initial: need a < b, got [{a:g}, {b:g}]")
    if a <= -half_width or b >= half_width:
        raise ConfigError(f"initial: [{a:g}, {b:g}] must lie inside (-{half_width:g}, {half_width:g})")

    fit_t0 = doc.get("diagnostics.fit_t0", 0.5 * t_end)
    fit_t1 = doc.get("diagnostics.fit_t1", t_end)
    if not 0.0 <= fit_t0 < fit_t1 or fit_t1 > t_end + 1e-12:
        if t_end > 0.0:
            raise ConfigError(f"diagnostics: fit window [{fit_t0:g}, {fit_t1:g}] invalid for t_end={t_end:g}")
    beta1 = doc.get("diagnostics.beta1", 0.05 * p_max)
    beta2 = doc.get("diagnostics.beta2", 0.05 * p_max)
    if beta1 <= 0.0 or beta2 <= 0.0:
        raise ConfigError("diagnostics: beta1 and beta2 must be positive")

    out_dir = doc.get("output.dir", os.environ.get(OUTPUT_ROOT_ENV, "runs"))
    return RunConfig(
        model=model,
        half_width=half_width,
        dx=dx,
        time=time,
        initial_a=a,
        initial_b=b,
        out_dir=out_dir,
        diagnostics=DiagnosticsConfig(beta1=beta1, beta2=beta2, fit_t0=fit_t0, fit_t1=fit_t1),
    )


def parse_config(text: str) -> RunConfig:
    """Parse and validate a single-run document; defaults fill omissions."""
    return _build_run_config(_parse_document(text, _SCHEMA))


def parse_sweep_config(text: str) -> SweepConfig:
    """Parse a sweep document: base-run keys plus sweep.axis / sweep.values."""
    doc = _parse_document(text, {**_SCHEMA, **_SWEEP_SCHEMA})
    axis = doc.pop("sweep.axis", None)
    values = doc.pop("sweep.values", None)
    if axis is None or values is None:
        raise ConfigError("sweep.axis and sweep.values are required")
    if axis not in ("k", "nu"):
        raise ConfigError(f"sweep.axis: must be 'k' or 'nu', got {axis!r}")
    if len(values) == 0:
        raise ConfigError("sweep.values: must be nonempty")
    for v in values:
        if axis == "k" and not v > 2.0:
            raise ConfigError(f"sweep.values: k must exceed 2, got {v:g}")
        if axis == "nu" and v < 0.0:
            raise ConfigError(f"sweep.values: nu must be >= 0, got {v:g}")
    return SweepConfig(base=_build_run_config(doc), axis=axis, values=values)
