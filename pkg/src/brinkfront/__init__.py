"""1D finite-volume simulator for tumor front propagation under a Brinkman
flow with a stiff pressure law, with analytic traveling-wave oracles and
incompressible-limit diagnostics."""

from .backend import backend_name
from .diagnostics import (
    DiagnosticsConfig,
    DiagnosticsRecord,
    FrontAbsentError,
    comp_residual,
    front_position,
    front_tracking,
    jump_estimate,
    mass_and_bounds,
    oscillation_measures,
)
from .elliptic import darcy_potential, kernel_convolve, kernel_weights, solve_potential
from .grid import Field, Grid1D
from .model import (
    GrowthLaw,
    LinearGrowth,
    ModelParams,
    density_of_pressure,
    growth,
    h_map,
    p_min,
    pressure_of_density,
    q_residual,
)
from .transport import (
    CflError,
    SchemeError,
    SimState,
    TimeControls,
    face_velocities,
    initial_indicator_state,
    mass_balance_residual,
    run,
    stable_dt,
    upwind_step,
)
from .wave import TravelingWave, build_wave, eval_profiles, profile_arrays, verify_wave_odes

__version__ = "0.1.0"
