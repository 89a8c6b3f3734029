"""Pseudoinverse localization landscapes for lattice models.

The landscape v solves H^dag H v = 1 through a cutoff pseudoinverse and
serves as an eigenstate-free localization and gap-closing diagnostic for
static non-Hermitian chains, periodically driven (extended-space) problems
and topological midgap modes.
"""

from .diagnostics import (
    MidgapMode,
    MidgapReport,
    SweepReport,
    average_right_density,
    detect_peaks,
    eigenstate_center_of_mass,
    floquet_dos,
    fold_quasienergy,
    midgap_report,
    pearson,
    sambe_ipr,
    spearman,
)
from .dynamics import (
    DriveSignal,
    Trajectory,
    min_left_population,
    min_left_population_grid,
    monodromy_quasienergies,
    monodromy_quasienergies_sweep,
    propagate,
    quasienergy_gap,
)
from .errors import (
    AccuracyError,
    ConfigError,
    DegenerateInputError,
    DimensionError,
    HermiticityError,
    NormalizationError,
)
from .landscape import (
    LandscapeResult,
    eigenmode_bound_report,
    landscape_max_total,
    near_null_profile,
    soft_center_of_mass,
    solve_landscape,
)
from .linalg import (
    DEFAULT_RCOND,
    EigResult,
    Operator,
    PseudoSolveResult,
    SvdResult,
    bessel_j0,
    eig_general,
    eig_hermitian,
    normal_operator,
    pseudo_solve,
    smallest_singular_value,
    svd,
)
from .models import (
    FourierDrive,
    SshConfig,
    aah_drive,
    aah_static,
    bbh,
    bbh_site_coords,
    domain_wall_site,
    hatano_nelson,
    ssh,
    two_level_drive_duo,
    two_level_drive_mono,
    two_level_static,
)
from .sambe import (
    SambeIndexMap,
    SambeOperator,
    build_sambe_duo,
    build_sambe_mono,
    sambe_weight_profile,
)

__version__ = "0.1.0"
