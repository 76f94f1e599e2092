"""Best rank-one approximation of real tensors, with exhaustive enumeration for Sym(2, d)."""

from .critical import (
    CensusReport,
    CriticalPoint,
    EigenpairSolution,
    PerturbationCheck,
    angle_objective,
    eigenpair_census,
    eigenpair_sensitivity,
    eigenpair_to_sphere,
    enumerate_critical_points,
    genericity_check,
    solve_eigensystem,
    sphere_to_eigenpair,
    uniqueness_gap,
)
from .exceptions import ConvergenceError, DegenerateInputError, DimensionError, TensorFormatError
from .family import (
    FamilyParams,
    SliceTraceReport,
    detect_family,
    family_solutions,
    family_tensor,
    rotation_identity_check,
    slice_traces,
    w_map,
)
from .io import format_tensor, parse_tensor, read_tensor, write_tensor
from .matrix import (
    MatrixRank1,
    SymSpectrum,
    best_rank1_matrix,
    char_discriminant,
    kronecker_sum_det,
    sigma1,
    sym_best_rank1,
    sym_eigen,
)
from .optimize import (
    Certificate,
    SolveResult,
    SolverConfig,
    certify,
    hopm_step,
    permuted_solutions,
    solve,
    solve_general,
    solve_symmetric,
    solve_tied,
    stationarity_residual,
)
from .tensor import (
    ModePartition,
    Rank1Approx,
    Tensor,
    contract,
    contract_all_but,
    decomposable,
    hs_norm,
    inner,
    is_symmetric_wrt,
    random_symmetric,
    random_tensor,
    random_unit,
    symmetric_decomposition,
    symmetrize,
    unit,
)
from .verify import ExperimentSpec, VerifyReport, run_experiment

__version__ = "0.1.0"
