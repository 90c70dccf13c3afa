"""Zeros of polynomials and polynomial matrices via Pade-function iterations.

The Pade function p = f / (-f') has slope -1/nu at a nu-fold zero, which
turns multiplicity detection into a family of fixed-point iterations; the
derived test polynomials, interpolation lists, and accompanying-matrix
machinery extend the idea to eigenvalue problems.
"""

from .cli import emit_plot_data, main, parse_problem_file, problem_spec_to_dict
from .ecp import (
    EcpList,
    EcpRow,
    GershgorinDisk,
    SumControl,
    build_ecp_list,
    ecp_matrix,
    evolve,
    evolve_until,
    gershgorin_enclosures,
    rayleigh_iterate,
    reduced_pade_iterate,
    sum_control,
)
from .errors import (
    AmbiguousMultiplicityError,
    DerivativeUnderflowError,
    EvolutionCollisionError,
    FlatSecantError,
    HalleyDenominatorError,
    InterpolationValueError,
    NoMultiplicityError,
    NotAnEigenvalueError,
    OriginSeedError,
    PolyzerosError,
    ProblemFormatError,
    RayleighDenominatorError,
    RealScanError,
    SampleConditioningError,
    TaylorRejectionError,
    ZeroPolynomialError,
)
from .explore import (
    Bracket,
    CompanionSeeds,
    ExplorationReport,
    Seed,
    SeedProvenance,
    accelerated_regula_falsi,
    companion_seed_all,
    regula_falsi_step,
    scan_sign_changes,
)
from .matpoly import (
    DiagonalSeedReport,
    EigenvectorBundle,
    Normalization,
    PolynomialMatrix,
    characteristic_polynomial,
    diagonal_seeds,
    eval_matrix,
    extract_eigenvectors,
    left_eigenvectors,
    polynomial_matrix,
)
from .pipeline import (
    Algorithm,
    EcpDiagnostics,
    EigenpairRecord,
    ProblemSpec,
    RootRecord,
    RootReport,
    SeedSource,
    report_to_dict,
    run_pipeline,
)
from .poly import (
    Polynomial,
    TaylorVerdict,
    cauchy_root_bound,
    co_polynomial,
    coefficient_scale,
    deflate_horner,
    effective_degree,
    evaluate,
    halley_eval,
    pade_eval,
    polynomial_from_roots,
    taylor_multiplicity_test,
    test_polynomial,
)
from .refine import (
    IterationForm,
    IterationSettings,
    IterationTrace,
    MultiplicityVerdict,
    TraceRow,
    TraceStatus,
    detect_multiplicity,
    iterate_halley,
    iterate_pade,
    iterate_test_nu,
    probe_strictly_converged,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
