"""Uniform cell-centered 1D mesh and cell-sampled fields."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Grid1D", "Field"]


@dataclass(frozen=True)
class Grid1D:
    """Cells [x_min + i*dx, x_min + (i+1)*dx), centers at x_min + (i+1/2)*dx."""

    x_min: float
    x_max: float
    n_cells: int

    def __post_init__(self):
        if self.n_cells < 4:
            raise ValueError(f"need at least 4 cells, got {self.n_cells}")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @classmethod
    def from_half_width(cls, half_width: float, dx: float) -> "Grid1D":
        """Symmetric domain [-L, L] with the cell count rounded to fit dx."""
        n = int(round(2.0 * half_width / dx))
        return cls(-half_width, half_width, n)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    def cell_centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx

    def faces(self) -> np.ndarray:
        return self.x_min + np.arange(self.n_cells + 1) * self.dx


@dataclass
class Field:
    """Cell averages of one scalar quantity on a Grid1D."""

    values: np.ndarray
    grid: Grid1D

    def __post_init__(self):
        self.values = np.ascontiguousarray(self.values, dtype=np.float64)
        if self.values.shape != (self.grid.n_cells,):
            raise ValueError(
                f"field length {self.values.shape} does not match grid ({self.grid.n_cells},)"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field contains non-finite values")

    @classmethod
    def zeros(cls, grid: Grid1D) -> "Field":
        return cls(np.zeros(grid.n_cells), grid)

    def copy(self) -> "Field":
        return Field(self.values.copy(), self.grid)
