"""Seed -> refine -> report orchestration shared by the CLI and library users.

A ProblemSpec bundles one polynomial (scalar or matrix) with a seed source
and an algorithm choice. run_pipeline acquires seeds, refines each one,
merges duplicate roots, and assembles a deterministic report ordered
lexicographically by (re, im). Hard errors in any stage are recorded on the
report and the remaining seeds still run.
"""

import enum
from dataclasses import dataclass, field

from .ecp import (
    EcpList,
    SumControl,
    build_ecp_list,
    evolve_until,
    gershgorin_enclosures,
    rayleigh_iterate,
    reduced_pade_iterate,
    sum_control,
)
from .errors import PolyzerosError, ProblemFormatError
from .explore import Seed, SeedProvenance, scan_sign_changes, companion_seed_all
from .matpoly import (
    PolynomialMatrix,
    characteristic_polynomial,
    diagonal_seeds,
    extract_eigenvectors,
    left_eigenvectors,
)
from .poly import Polynomial, coefficient_scale, effective_degree, evaluate
from .refine import (
    DEFAULT_SETTINGS,
    ROOT_IDENTITY_REL,
    IterationSettings,
    TraceStatus,
    detect_multiplicity,
    iterate_halley,
    iterate_pade,
    iterate_test_nu,
)


class SeedSource(enum.Enum):
    EXPLORE = "explore"
    DIAGONAL = "diagonal"
    COMPANION = "companion"
    EXTERNAL = "external"


class Algorithm(enum.Enum):
    DETECT = "detect"
    PADE = "pade"
    HALLEY = "halley"
    TEST_NU = "test-nu"
    RAYLEIGH = "rayleigh"
    REDUCED = "reduced"


@dataclass(frozen=True)
class ProblemSpec:
    """One solve request: payload, seed source, algorithm, knobs.

    Exactly one of ``polynomial``/``matrix`` is set. ``nu`` is the probe
    order used by the test-nu algorithm only; detect probes 1..nu_max
    (defaulting to the degree). Rayleigh and reduced algorithms build one
    interpolation list from all seeds and refine each row's main value.
    """

    polynomial: object = None
    matrix: object = None
    seed_source: SeedSource = SeedSource.EXPLORE
    external_seeds: tuple = ()
    algorithm: Algorithm = Algorithm.DETECT
    delta: float = 0.1
    sigma: int = 5
    settings: IterationSettings = DEFAULT_SETTINGS
    nu_max: int = None
    nu: int = 1
    ecp: bool = False

    def __post_init__(self):
        if (self.polynomial is None) == (self.matrix is None):
            raise ProblemFormatError(
                "exactly one of polynomial/matrix must be given"
            )
        if self.seed_source is SeedSource.EXTERNAL and not self.external_seeds:
            raise ProblemFormatError("external seed source needs seeds")
        if self.seed_source is not SeedSource.EXTERNAL and self.external_seeds:
            raise ProblemFormatError("seeds given but source is not external")
        if self.seed_source is SeedSource.DIAGONAL and self.matrix is None:
            raise ProblemFormatError("diagonal seeds need a matrix problem")
        if not self.delta > 0:
            raise ProblemFormatError("delta must be positive")
        if self.sigma < 1 or self.nu < 1:
            raise ProblemFormatError("sigma and nu must be >= 1")
        if self.nu_max is not None and self.nu_max < 1:
            raise ProblemFormatError("nu_max must be >= 1")


@dataclass(frozen=True)
class RootRecord:
    value: complex
    multiplicity: int
    residual: float
    algorithm: Algorithm
    iterations: int
    seeds: tuple
    source: SeedSource
    residual_pass: bool


@dataclass(frozen=True)
class EigenpairRecord:
    """Eigenvector data for one distinct eigenvalue of a matrix problem.

    ``defective`` marks rank deficiency below the detected multiplicity
    (fewer independent eigenvectors than the algebraic count)."""

    value: complex
    multiplicity: int
    right: object
    left: object
    defective: bool


@dataclass(frozen=True)
class EcpDiagnostics:
    final_list: EcpList
    evolutions: int
    defect_history: tuple
    control: SumControl
    disks: tuple


@dataclass(frozen=True)
class RootReport:
    roots: tuple
    effective_degree: int
    multiplicity_sum: int
    conserved: bool
    all_residuals_pass: bool
    errors: tuple = field(default_factory=tuple)
    ecp: EcpDiagnostics = None
    eigenvectors: tuple = field(default_factory=tuple)


def _relative_residual(f, value):
    magnitude = abs(evaluate(f, value)[0])
    if magnitude == 0.0:
        return 0.0
    return magnitude / max(coefficient_scale(f, value), 1e-300)


def _acquire_seeds(spec, f, errors):
    if spec.seed_source is SeedSource.EXTERNAL:
        return tuple(
            Seed(complex(v), SeedProvenance.EXTERNAL)
            for v in spec.external_seeds
        )
    if spec.seed_source is SeedSource.DIAGONAL:
        report = diagonal_seeds(spec.matrix)
        if report.degenerate_entries:
            errors.append(
                "diagonal entries %s have degenerate degree"
                % (list(report.degenerate_entries),)
            )
        return tuple(Seed(v, SeedProvenance.DIAGONAL) for v in report.values)
    if spec.seed_source is SeedSource.COMPANION:
        companion = companion_seed_all(f)
        if companion.low_confidence:
            errors.append("companion seeds carry large residuals")
        return tuple(
            Seed(v, SeedProvenance.COMPANION) for v in companion.values
        )
    seeds = []
    for co in (False, True):
        try:
            scan = scan_sign_changes(f, spec.delta, co=co)
        except PolyzerosError as exc:
            errors.append("exploration (co=%s): %s" % (co, exc))
            continue
        seeds.extend(scan.seeds)
    return tuple(seeds)


def _refine_independent(spec, f, seeds, errors):
    """detect / pade / halley / test-nu: one refinement per seed."""
    records = []
    for seed in seeds:
        try:
            if spec.algorithm is Algorithm.DETECT:
                verdict = detect_multiplicity(
                    f, seed.value, spec.nu_max, spec.settings
                )
                value = verdict.root
                nu = verdict.multiplicity
                iterations = len(verdict.probes[nu].rows)
            else:
                if spec.algorithm is Algorithm.PADE:
                    trace = iterate_pade(f, seed.value, spec.settings)
                elif spec.algorithm is Algorithm.HALLEY:
                    trace = iterate_halley(f, seed.value, spec.settings)
                else:
                    trace = iterate_test_nu(
                        f, spec.nu, seed.value, spec.settings
                    )
                if trace.status is not TraceStatus.CONVERGED:
                    errors.append(
                        "seed %r: %s%s"
                        % (
                            seed.value,
                            trace.status.value,
                            (" (%s)" % "; ".join(trace.notes))
                            if trace.notes else "",
                        )
                    )
                    continue
                value = trace.final
                nu = spec.nu if spec.algorithm is Algorithm.TEST_NU else 1
                iterations = len(trace.rows)
        except PolyzerosError as exc:
            errors.append("seed %r: %s" % (seed.value, exc))
            continue
        residual = _relative_residual(f, value)
        records.append(
            RootRecord(
                complex(value),
                nu,
                residual,
                spec.algorithm,
                iterations,
                (complex(seed.value),),
                spec.seed_source,
                residual <= spec.settings.residual_tol,
            )
        )
    return records


def _refine_through_list(spec, f, seeds, errors):
    """rayleigh / reduced: one shared list, row main values refined."""
    try:
        lst = build_ecp_list(f, [s.value for s in seeds])
    except PolyzerosError as exc:
        errors.append("interpolation list: %s" % exc)
        return []
    iterate = (
        rayleigh_iterate
        if spec.algorithm is Algorithm.RAYLEIGH
        else reduced_pade_iterate
    )
    records = []
    for k, row in enumerate(lst.rows):
        try:
            trace = iterate(lst, row.main_value, spec.settings)
        except PolyzerosError as exc:
            errors.append("list row %d: %s" % (k, exc))
            continue
        if trace.status is not TraceStatus.CONVERGED:
            errors.append("list row %d: %s" % (k, trace.status.value))
            continue
        value = complex(trace.final)
        residual = _relative_residual(f, value)
        records.append(
            RootRecord(
                value,
                1,
                residual,
                spec.algorithm,
                len(trace.rows),
                (complex(seeds[k].value),),
                spec.seed_source,
                residual <= spec.settings.residual_tol,
            )
        )
    return records


def _same_root(a, b):
    return abs(a - b) <= ROOT_IDENTITY_REL * (1.0 + min(abs(a), abs(b)))


def _dedupe(records):
    """Merge records within the root-identity radius, keeping the best.

    The representative is the member with the smallest residual; seed
    provenance accumulates across the merged group."""
    ordered = sorted(
        records, key=lambda r: (r.value.real, r.value.imag, r.residual)
    )
    groups = []
    for record in ordered:
        for group in groups:
            if _same_root(group[0].value, record.value):
                group.append(record)
                break
        else:
            groups.append([record])
    merged = []
    for group in groups:
        best = min(group, key=lambda r: r.residual)
        seeds = []
        for member in group:
            for s in member.seeds:
                if s not in seeds:
                    seeds.append(s)
        merged.append(
            RootRecord(
                best.value,
                best.multiplicity,
                best.residual,
                best.algorithm,
                best.iterations,
                tuple(seeds),
                best.source,
                best.residual_pass,
            )
        )
    merged.sort(key=lambda r: (r.value.real, r.value.imag))
    return merged


def _ecp_phase(f, records, errors):
    try:
        lst = build_ecp_list(f, [r.value for r in records])
        defect_history = [max(abs(d) for d in lst.defects)]
        evolved = evolve_until(lst, f)
        for item in evolved:
            defect_history.append(max(abs(d) for d in item.defects))
        final = evolved[-1] if evolved else lst
        return EcpDiagnostics(
            final,
            len(evolved),
            tuple(defect_history),
            sum_control(final),
            gershgorin_enclosures(final),
        )
    except PolyzerosError as exc:
        errors.append("ecp phase: %s" % exc)
        return None


EIGENVECTOR_PIVOT_LADDER = (1e-10, 1e-8, 1e-6)


def _eigenvector_phase(matrix, records, errors):
    """Extract both-sided eigenvectors, loosening the pivot tolerance when
    the eigenvalue carries interpolation noise from the recomputed
    characteristic coefficients. A loosened tolerance is noted; the per
    column residuals in the bundles stay the honest quality measure."""
    pairs = []
    for record in records:
        right = None
        left = None
        failure = None
        for pivot_tol in EIGENVECTOR_PIVOT_LADDER:
            try:
                right = extract_eigenvectors(matrix, record.value,
                                             pivot_tol=pivot_tol)
                left = left_eigenvectors(matrix, record.value,
                                         pivot_tol=pivot_tol)
            except PolyzerosError as exc:
                failure = exc
                continue
            if pivot_tol != EIGENVECTOR_PIVOT_LADDER[0]:
                errors.append(
                    "eigenvectors at %r: pivot tolerance loosened to %g"
                    % (record.value, pivot_tol)
                )
            break
        if right is None or left is None:
            errors.append("eigenvectors at %r: %s" % (record.value, failure))
            continue
        pairs.append(
            EigenpairRecord(
                record.value,
                record.multiplicity,
                right,
                left,
                right.rank_deficiency < record.multiplicity,
            )
        )
    return tuple(pairs)


def run_pipeline(spec):
    """Solve one problem end to end; see the module docstring for stages."""
    errors = []
    if spec.matrix is not None:
        try:
            f = characteristic_polynomial(spec.matrix)
        except PolyzerosError as exc:
            return RootReport((), 0, 0, False, False, (str(exc),))
    else:
        f = effective_degree(spec.polynomial)
    seeds = _acquire_seeds(spec, f, errors)
    if spec.algorithm in (Algorithm.RAYLEIGH, Algorithm.REDUCED):
        records = _refine_through_list(spec, f, seeds, errors)
    else:
        records = _refine_independent(spec, f, seeds, errors)
    records = _dedupe(records)
    ecp_diag = _ecp_phase(f, records, errors) if spec.ecp and records else None
    eigenvectors = ()
    if spec.matrix is not None and records:
        eigenvectors = _eigenvector_phase(spec.matrix, records, errors)
    total = sum(r.multiplicity for r in records)
    conserved = total == f.degree
    if not conserved:
        errors.append(
            "multiplicity sum %d does not match effective degree %d"
            % (total, f.degree)
        )
    return RootReport(
        tuple(records),
        f.degree,
        total,
        conserved,
        bool(records) and all(r.residual_pass for r in records),
        tuple(errors),
        ecp_diag,
        eigenvectors,
    )


def complex_pair(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _ecp_dict(diag):
    return {
        "evolutions": diag.evolutions,
        "defect_history": [float(d) for d in diag.defect_history],
        "sum_control": {
            "expected": complex_pair(diag.control.expected),
            "actual": complex_pair(diag.control.actual),
            "discrepancy": float(diag.control.discrepancy),
        },
        "final_list": {
            "sigmas": [complex_pair(s) for s in diag.final_list.sigmas],
            "defects": [complex_pair(d) for d in diag.final_list.defects],
            "main_values": [
                complex_pair(h) for h in diag.final_list.main_values
            ],
        },
        "disks": [
            {
                "center": complex_pair(d.center),
                "radius": float(d.radius),
                "separated": d.separated,
                "interval": list(d.interval) if d.interval else None,
                "box": [list(b) for b in d.box] if d.box else None,
            }
            for d in diag.disks
        ],
    }


def _bundle_columns(vectors):
    if vectors is None:
        return None
    return [
        [complex_pair(vectors[i, k]) for i in range(vectors.shape[0])]
        for k in range(vectors.shape[1])
    ]


def report_to_dict(report):
    """JSON-ready form of a report; complex numbers become [re, im]."""
    data = {
        "roots": [
            {
                "value": complex_pair(r.value),
                "multiplicity": r.multiplicity,
                "residual": float(r.residual),
                "algorithm": r.algorithm.value,
                "iterations": r.iterations,
                "seeds": [complex_pair(s) for s in r.seeds],
                "source": r.source.value,
                "residual_pass": r.residual_pass,
            }
            for r in report.roots
        ],
        "effective_degree": report.effective_degree,
        "multiplicity_sum": report.multiplicity_sum,
        "conserved": report.conserved,
        "all_residuals_pass": report.all_residuals_pass,
        "errors": list(report.errors),
        "ecp": _ecp_dict(report.ecp) if report.ecp else None,
        "eigenvectors": [
            {
                "value": complex_pair(p.value),
                "multiplicity": p.multiplicity,
                "rank_deficiency": p.right.rank_deficiency,
                "defective": p.defective,
                "right": _bundle_columns(p.right.right_vectors),
                "left": _bundle_columns(p.left.left_vectors),
                "right_residuals": [float(x) for x in p.right.right_residuals],
                "left_residuals": [float(x) for x in p.left.left_residuals],
            }
            for p in report.eigenvectors
        ],
    }
    return data
