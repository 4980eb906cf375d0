"""Numerical solution of the lateral Cauchy problem for a 1-D quasilinear
parabolic equation by minimizing a Carleman-weighted Tikhonov functional."""
from .carleman import CarlemanWeight, LevelDomainMask, level_domain_mask, weight_table
from .errors import (
    CauchyError,
    ConfigError,
    DataMismatchError,
    DivergenceError,
    ForwardDivergenceError,
    InvalidFunctionError,
    InvalidMeshError,
    MinimizerDivergenceError,
)
from .forward import CauchyData, extract_flux, solve_forward
from .functional import (
    FunctionalContext,
    constraint_mask,
    evaluate_J,
    gradient_J,
    make_context,
    residual_table,
)
from .grid import Field, Grid, make_grid, sample
from .kernels import BACKEND
from .metrics import LineErrorProfile, line_error, slice_at, subdomain_error
from .minimizer import MinimizeReport, MinimizerConfig, Method, initial_guess, minimize
from .model import (
    EXP04,
    NONE,
    SIN2,
    NonlinearityKind,
    ProblemSpec,
    eval_nonlinearity,
    paper_problem,
)
from .noise import NoiseSpec, apply_noise

__version__ = "0.1.0"
