from .model import (
    SpectralFamily,
    harmonic_fiber_ranks,
    horizontal_indicial_roots,
    vertical_spectrum,
)
from .solve import DegreeSpectrum, flat_spectrum, solve_family, solve_limit_model
from .sweeps import (
    EigenSweep,
    heat_trace_of,
    heat_trace_regression,
    small_det_decomposition,
    small_eigenvalue_count,
)
from .zeta import ZetaReport, analytic_torsion, zeta_prime_at_zero
from .oracles import (
    flat_heat_trace,
    flat_heat_trace_all_degrees,
    shooting_count_below,
    shooting_smallest_positive,
    theta_sum,
)
from .at_limit import at_limit_residual, at_sweep, extrapolate_finite_part
