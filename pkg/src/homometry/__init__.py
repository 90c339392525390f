"""Homometric structures for pure point diffraction on the real line."""

from ._config import settings
from .eberlein import autocorrelate, eberlein, mean_density
from .exceptions import *  # noqa: F401,F403
from .fourier import diffraction, fourier, inverse_fourier, verify_homometric
from .measure import (
    FiniteComb,
    MixedMeasure,
    PeriodicComb,
    add,
    canonicalize,
    comb,
    delta,
    is_inversion_symmetric,
    is_positive,
    is_real,
    lebesgue,
    reflect_conjugate,
    reflect,
    restrict,
    scale,
    weight_at,
    zero,
)
from .limitperiodic import (
    FormalCombSeries,
    ModulatedComb,
    pair_with_gaussian,
    pd_delta_n,
    pd_enumerate,
    pd_formal_fourier,
    pd_member,
    series_partial_sum,
    total_variation,
)
from .oracle import bragg_intensity, window_autocorrelation
from .solver import (
    Constant,
    FiniteExceptions,
    ResidueClasses,
    SetIndicator,
    recover_phases,
    solve,
    solve_experimental_delta_set,
    table_cells,
    table_omega_alpha,
    validate,
)

__version__ = "0.1.0"
