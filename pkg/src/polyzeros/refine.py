"""Fixed-point refinement iterations with trace recording.

Three iterations share one engine: the Pade step Lambda += p(Lambda), the
Halley step Lambda += h(Lambda), and the test-polynomial step
Lambda += P_nu(Lambda)*Lambda whose fixed points reveal root multiplicity.
Traces mirror printed iteration tables row by row, and a probe classifier
separates genuine (quadratic) convergence from the slow linear creep a
wrong-multiplicity probe produces.
"""

import enum
from dataclasses import dataclass, field

from .errors import (
    AmbiguousMultiplicityError,
    DerivativeUnderflowError,
    HalleyDenominatorError,
    NoMultiplicityError,
    OriginSeedError,
    RayleighDenominatorError,
    TaylorRejectionError,
    ZeroPolynomialError,
)
from .poly import (
    TaylorVerdict,
    cauchy_root_bound,
    coefficient_scale,
    evaluate,
    halley_eval,
    pade_eval,
    taylor_multiplicity_test,
    test_polynomial,
)

DEFAULT_MAX_ITERS = 100
DEFAULT_STEP_TOL = 1e-12
DEFAULT_RESIDUAL_TOL = 1e-10
DEFAULT_DIVERGENCE_FACTOR = 10.0

# A wrong-multiplicity probe contracts linearly with ratio (nu-k)/(nu-k+1)
# for some k, never below 1/2; ratios at or above SLOW_RATIO sustained for
# SLOW_KILL_COUNT consecutive steps terminate the iteration early.
SLOW_RATIO = 0.4
SLOW_KILL_COUNT = 20

ROOT_IDENTITY_REL = 1e-8
ORIGIN_GUARD_REL = 1e-8


class TraceStatus(enum.Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max-iters"
    DIVERGED = "diverged"
    NUMERICAL_ERROR = "numerical-error"


class IterationForm(enum.Enum):
    """Additive writes Lambda + p_nu(Lambda); multiplicative writes
    (1 + P_nu(Lambda)) * Lambda. Algebraically identical; both run through
    one kernel (step = P_nu*Lambda, then Lambda += step) so their traces
    agree bit for bit."""

    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"


@dataclass(frozen=True)
class IterationSettings:
    max_iters: int = DEFAULT_MAX_ITERS
    step_tol: float = DEFAULT_STEP_TOL
    residual_tol: float = DEFAULT_RESIDUAL_TOL
    divergence_factor: float = DEFAULT_DIVERGENCE_FACTOR

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if min(self.step_tol, self.residual_tol) <= 0:
            raise ValueError("tolerances must be > 0")
        if self.divergence_factor <= 1:
            raise ValueError("divergence_factor must be > 1")


DEFAULT_SETTINGS = IterationSettings()


@dataclass(frozen=True)
class TraceRow:
    """One printed table row: the iterate, the function value driving the
    step, and the step actually taken. For fixed-point iterations value and
    step coincide; the accelerated bracketing scheme stores p(lambda) in
    value and the move to the next point in step."""

    lam: complex
    value: complex
    step: complex


@dataclass(frozen=True)
class IterationTrace:
    rows: tuple
    status: TraceStatus
    notes: tuple = field(default_factory=tuple)

    @property
    def final(self):
        """The iterate after the last recorded step."""
        if not self.rows:
            raise ValueError("empty trace has no final iterate")
        last = self.rows[-1]
        return last.lam + last.step

    @property
    def steps(self):
        return tuple(r.step for r in self.rows)

    @property
    def iterates(self):
        return tuple(r.lam for r in self.rows)


def _run_iteration(step_fn, residual_fn, seed, settings, divergence_bound):
    """Shared fixed-point engine.

    Convergence needs two consecutive relatively small steps plus a passing
    relative residual; sustained slow step ratios (>= SLOW_RATIO for
    SLOW_KILL_COUNT steps) end the run as MAX_ITERS; iterates beyond the
    divergence bound end it as DIVERGED.
    """
    lam = complex(seed)
    rows = []
    prev_small = False
    prev_step_mag = None
    slow_run = 0
    status = TraceStatus.MAX_ITERS
    for _ in range(settings.max_iters):
        try:
            step = step_fn(lam)
        except (DerivativeUnderflowError, HalleyDenominatorError,
                RayleighDenominatorError, ZeroDivisionError,
                OverflowError) as exc:
            status = TraceStatus.NUMERICAL_ERROR
            rows.append(TraceRow(lam, complex("nan"), 0j))
            return IterationTrace(tuple(rows), status, (str(exc),))
        rows.append(TraceRow(lam, step, step))
        nxt = lam + step
        small = abs(step) <= settings.step_tol * (1.0 + abs(nxt))
        if small and prev_small:
            residual, scale = residual_fn(nxt)
            if residual <= settings.residual_tol * scale:
                return IterationTrace(tuple(rows), TraceStatus.CONVERGED)
        if prev_step_mag:
            ratio = abs(step) / prev_step_mag
            slow_run = slow_run + 1 if ratio >= SLOW_RATIO else 0
            if slow_run >= SLOW_KILL_COUNT:
                return IterationTrace(
                    tuple(rows),
                    TraceStatus.MAX_ITERS,
                    ("terminated early: %d consecutive step ratios >= %g"
                     % (SLOW_KILL_COUNT, SLOW_RATIO),),
                )
        prev_small = small
        prev_step_mag = abs(step)
        lam = nxt
        if abs(lam) > divergence_bound:
            return IterationTrace(tuple(rows), TraceStatus.DIVERGED)
    return IterationTrace(tuple(rows), status)


def _poly_residual(f):
    def residual(lam):
        return abs(evaluate(f, lam, 0)[0]), coefficient_scale(f, lam)

    return residual


def iterate_pade(f, seed, settings=DEFAULT_SETTINGS):
    """Iterate Lambda += p(Lambda) from the seed; quadratic at simple roots,
    linear with ratio 1 - 1/nu at nu-fold roots."""
    if f.degree < 1:
        raise ZeroPolynomialError("pade iteration needs degree >= 1")
    bound = settings.divergence_factor * (1.0 + cauchy_root_bound(f))
    return _run_iteration(
        lambda lam: pade_eval(f, lam), _poly_residual(f), seed, settings, bound
    )


def iterate_halley(f, seed, settings=DEFAULT_SETTINGS):
    """Iterate Lambda += h(Lambda) from the seed."""
    if f.degree < 2:
        raise ZeroPolynomialError("halley iteration needs degree >= 2")
    bound = settings.divergence_factor * (1.0 + cauchy_root_bound(f))
    return _run_iteration(
        lambda lam: halley_eval(f, lam), _poly_residual(f), seed, settings, bound
    )


def iterate_test_nu(f, nu, seed, settings=DEFAULT_SETTINGS,
                    form=IterationForm.ADDITIVE):
    """Iterate the nu-probe: step = (f_{nu-1}/f_nu)(Lambda) * Lambda.

    Converges quadratically from nearby seeds exactly when nu equals the
    root's multiplicity; under-probes creep linearly, over-probes move away.
    Both ``form`` values run the same kernel, so their traces are identical
    (the flag records which formulation was requested).
    """
    if nu < 1:
        raise ValueError("nu must be >= 1")
    if not isinstance(form, IterationForm):
        form = IterationForm(form)
    if abs(complex(seed)) <= ORIGIN_GUARD_REL * (1.0 + cauchy_root_bound(f)):
        raise OriginSeedError(
            "seed too close to origin for p_nu; shift the polynomial by "
            "lambda -> lambda + c first"
        )
    f_lo = test_polynomial(f, nu - 1)
    f_hi = test_polynomial(f, nu)
    if f_hi.is_zero:
        raise ZeroPolynomialError("test polynomial f_%d is identically zero" % nu)

    def step_fn(lam):
        v_lo = evaluate(f_lo, lam, 0)[0]
        v_hi = evaluate(f_hi, lam, 0)[0]
        if abs(v_hi) <= 1e-290 * max(1.0, abs(v_lo)):
            raise ZeroDivisionError("f_%d vanishes at %r" % (nu, lam))
        return (v_lo / v_hi) * lam

    bound = settings.divergence_factor * (1.0 + cauchy_root_bound(f))
    return _run_iteration(step_fn, _poly_residual(f), seed, settings, bound)


@dataclass(frozen=True)
class MultiplicityVerdict:
    root: complex
    multiplicity: int
    probes: dict
    taylor: TaylorVerdict


def probe_strictly_converged(trace, settings=DEFAULT_SETTINGS):
    """True when a probe trace shows genuine (fast) convergence.

    On top of the engine's CONVERGED status the last significant steps
    (those above the relative step tolerance) must each contract by the
    divergence factor; a linear creep that merely stalled into the residual
    test fails this. With at most one significant step the check passes
    vacuously (the seed was already at the root).
    """
    if trace.status is not TraceStatus.CONVERGED:
        return False
    significant = [
        abs(r.step)
        for r in trace.rows
        if abs(r.step) > settings.step_tol * (1.0 + abs(r.lam))
    ]
    tail = significant[-3:]
    for a, b in zip(tail, tail[1:]):
        if a > 0.0 and b / a > 1.0 / settings.divergence_factor:
            return False
    return True


def detect_multiplicity(f, seed, nu_max=None, settings=DEFAULT_SETTINGS,
                        taylor_tol=None):
    """Probe nu = 1..nu_max simultaneously from one seed.

    Exactly one multiplicity should converge; the winning probe gives both
    the root and its multiplicity, cross-checked by the Taylor ladder.
    When several probes converge to one root (a stalled under-probe, or an
    accidental fixed point of an over-probe) the largest Taylor-validated
    nu wins; when they converge to genuinely different roots the group
    nearest the seed wins. Distinct roots at indistinguishable distances
    raise AmbiguousMultiplicityError.
    """
    if nu_max is None:
        nu_max = f.degree
    if nu_max < 1:
        raise ValueError("nu_max must be >= 1")
    probes = {}
    for nu in range(1, nu_max + 1):
        try:
            probes[nu] = iterate_test_nu(f, nu, seed, settings)
        except ZeroPolynomialError:
            break
    winners = {
        nu: trace.final
        for nu, trace in probes.items()
        if probe_strictly_converged(trace, settings)
    }
    if not winners:
        raise NoMultiplicityError(
            "no multiplicity identified from seed %r; improve the seed" % (seed,)
        )

    groups = []
    for nu in sorted(winners):
        root = winners[nu]
        for group in groups:
            anchor = group[0][1]
            if abs(root - anchor) <= ROOT_IDENTITY_REL * (1.0 + abs(anchor)):
                group.append((nu, root))
                break
        else:
            groups.append([(nu, root)])

    seed = complex(seed)
    if len(groups) > 1:
        distances = sorted(abs(g[0][1] - seed) for g in groups)
        if distances[1] - distances[0] <= ROOT_IDENTITY_REL * (1.0 + distances[0]):
            raise AmbiguousMultiplicityError(
                "probes converged to distinct roots equidistant from the seed",
                [(nu, root) for g in groups for nu, root in g],
            )
        groups.sort(key=lambda g: abs(g[0][1] - seed))
    group = groups[0]

    taylor_kwargs = {} if taylor_tol is None else {"tol": taylor_tol}
    chosen = None
    for nu, root in sorted(group, reverse=True):
        try:
            verdict = taylor_multiplicity_test(f, root, nu, **taylor_kwargs)
        except TaylorRejectionError:
            continue
        chosen = (nu, root, verdict)
        break
    if chosen is None:
        raise AmbiguousMultiplicityError(
            "no converged probe passed the derivative ladder", group
        )
    nu, root, verdict = chosen
    return MultiplicityVerdict(root, nu, probes, verdict)
