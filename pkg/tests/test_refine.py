"""Fixed-point refinement: traces, probes, multiplicity detection."""

import cmath
import math

import numpy as np
import pytest

import cases
from polyzeros import (
    IterationForm,
    IterationSettings,
    NoMultiplicityError,
    OriginSeedError,
    Polynomial,
    TraceStatus,
    detect_multiplicity,
    iterate_halley,
    iterate_pade,
    iterate_test_nu,
    polynomial_from_roots,
    probe_strictly_converged,
)

ROOT_ATOL = 1e-12
CASES = 40


def _chained(trace):
    rows = trace.rows
    return all(
        rows[i + 1].lam == rows[i].lam + rows[i].step
        for i in range(len(rows) - 1)
    )


def test_pade_iteration_simple_root():
    f = Polynomial((-6.0, 11.0, -6.0, 1.0))
    trace = iterate_pade(f, 0.8)
    assert trace.status is TraceStatus.CONVERGED
    assert abs(trace.final - 1.0) <= ROOT_ATOL
    assert _chained(trace)


def test_pade_iteration_multiple_root_is_slow():
    """On a triple root the plain iteration contracts by only 2/3 per step
    and the slow-progress cutoff reports it as not converged."""
    f = polynomial_from_roots([1.0, 1.0, 1.0, 4.0])
    trace = iterate_pade(f, 1.2)
    assert trace.status is TraceStatus.MAX_ITERS
    assert any("step ratios" in note for note in trace.notes)


def test_halley_iteration_cubic_speed():
    f = Polynomial((-6.0, 11.0, -6.0, 1.0))
    trace = iterate_halley(f, 0.8)
    assert trace.status is TraceStatus.CONVERGED
    assert abs(trace.final - 1.0) <= ROOT_ATOL
    assert len(trace.rows) <= 8


def test_probe_order_matches_multiplicity():
    rng = np.random.default_rng(5150)
    for _ in range(CASES):
        nu = int(rng.integers(1, 5))
        root = complex(rng.normal(), rng.normal())
        other = root + 2.0 + abs(rng.normal())
        f = polynomial_from_roots([root] * nu + [other])
        seed = root + 0.01 * cmath.exp(2j * math.pi * rng.random())
        trace = iterate_test_nu(f, nu, seed)
        assert trace.status is TraceStatus.CONVERGED
        assert abs(trace.final - root) <= 1e-10 * (1 + abs(root))
        assert probe_strictly_converged(trace)


def test_underprobe_stalls_and_classifier_rejects():
    f = polynomial_from_roots([2.0, 2.0, 2.0, -1.0])
    trace = iterate_test_nu(f, 1, 2.1)
    assert trace.status is not TraceStatus.CONVERGED
    assert not probe_strictly_converged(trace)


def test_forms_share_one_kernel():
    """The additive and multiplicative update labels must not change a
    single bit of the trace."""
    rng = np.random.default_rng(1717)
    for _ in range(CASES):
        degree = int(rng.integers(2, 7))
        coeffs = tuple(rng.normal(size=degree + 1))
        f = Polynomial(coeffs)
        if f.is_zero or f.degree < 2:
            continue
        seed = complex(rng.normal(), rng.normal())
        for nu in (1, 2):
            a = iterate_test_nu(f, nu, seed, form=IterationForm.ADDITIVE)
            b = iterate_test_nu(f, nu, seed, form=IterationForm.MULTIPLICATIVE)
            assert a.rows == b.rows
            assert a.status is b.status


def test_origin_seed_rejected():
    f = Polynomial((-1.0, 0.0, 1.0))
    with pytest.raises(OriginSeedError):
        iterate_test_nu(f, 1, 0.0)


def test_numerical_error_keeps_offending_row():
    """A derivative-underflow mid-iteration downgrades the trace instead of
    raising; the offending iterate is retained with a NaN value."""
    f = Polynomial((-1.0, 0.0, 1.0))
    trace = iterate_pade(f, 0.0)
    assert trace.status is TraceStatus.NUMERICAL_ERROR
    last = trace.rows[-1]
    assert math.isnan(last.value.real) or math.isnan(abs(last.value))


def test_divergence_detected_outside_root_bound():
    f = Polynomial((-1.0, 0.0, 1.0))
    trace = iterate_test_nu(f, 4, 50.0)
    assert trace.status in (TraceStatus.DIVERGED, TraceStatus.MAX_ITERS,
                            TraceStatus.NUMERICAL_ERROR)


def test_settings_validation():
    with pytest.raises(ValueError):
        IterationSettings(max_iters=0)
    with pytest.raises(ValueError):
        IterationSettings(step_tol=-1.0)


def test_detect_double_root(double_quad_sextic):
    verdict = detect_multiplicity(double_quad_sextic, cases.DOUBLE_QUAD_SEED_NU2)
    assert verdict.multiplicity == 2
    assert abs(verdict.root - 2.0) <= ROOT_ATOL


def test_detect_quadruple_root(double_quad_sextic):
    verdict = detect_multiplicity(double_quad_sextic, -cases.DOUBLE_QUAD_CO_SEED)
    assert verdict.multiplicity == 4
    assert abs(verdict.root - (-1.0)) <= ROOT_ATOL


def test_detect_reports_probe_traces(double_quad_sextic):
    verdict = detect_multiplicity(double_quad_sextic, cases.DOUBLE_QUAD_SEED_NU2)
    assert set(verdict.probes) == set(range(1, 7))
    assert verdict.taylor.multiplicity == 2


def test_detect_rejects_when_no_probe_converges():
    f = polynomial_from_roots([1.0, 1.0, 3.0])
    with pytest.raises(NoMultiplicityError):
        detect_multiplicity(f, 1.05, nu_max=1)


def test_taylor_arbiter_overrides_accidental_fixed_point(quad_quint):
    """A degenerate high-order probe can converge onto a lower-multiplicity
    root; the derivative ladder at the root settles the claim."""
    verdict = detect_multiplicity(quad_quint, cases.QUAD_QUINT_SEED_NU2)
    assert verdict.multiplicity == 2
    assert abs(verdict.root - (-1.0)) <= ROOT_ATOL
    converged = {
        nu for nu, trace in verdict.probes.items()
        if probe_strictly_converged(trace)
    }
    assert len(converged) >= 2


def test_nearest_group_wins_for_simple_root(quad_quint):
    verdict = detect_multiplicity(quad_quint, cases.QUAD_QUINT_SEED_NU1)
    assert verdict.multiplicity == 1
    assert abs(verdict.root - (-2.0)) <= ROOT_ATOL


def test_detect_triple_conjugate_root(cluster_decic):
    verdict = detect_multiplicity(cluster_decic, cases.CLUSTER_DECIC_SEED_NU3)
    assert verdict.multiplicity == 3
    assert abs(verdict.root - cases.CLUSTER_DECIC_ROOT_NU3) <= ROOT_ATOL


def test_trace_chaining_invariant_across_algorithms(cluster_decic):
    for maker in (iterate_pade, iterate_halley):
        trace = maker(cluster_decic, cases.CLUSTER_DECIC_SEED_NU3)
        assert _chained(trace)
    trace = iterate_test_nu(cluster_decic, 3, cases.CLUSTER_DECIC_SEED_NU3)
    assert _chained(trace)
