"""Real-axis exploration: sign scans, bracketing, seed generation."""

import numpy as np
import pytest

import cases
from polyzeros import (
    Bracket,
    Polynomial,
    RealScanError,
    SeedProvenance,
    TraceStatus,
    accelerated_regula_falsi,
    companion_seed_all,
    polynomial_from_roots,
    regula_falsi_step,
    scan_sign_changes,
)

SCAN_VALUE_RTOL = 1e-10
SEED_RTOL = 1e-8
CASES = 25


def _sample_at(report, lam):
    """Grid points accumulate as start + j*delta, so match by distance."""
    return next(val for l, val in report.samples if abs(l - lam) < 1e-9)


def test_scan_reproduces_reference_values(double_quad_sextic):
    report = scan_sign_changes(double_quad_sextic, 0.3)
    for lam, want in cases.DOUBLE_QUAD_SCAN_VALUES.items():
        np.testing.assert_allclose(_sample_at(report, lam), want,
                                   rtol=SCAN_VALUE_RTOL)


def test_scan_brackets_the_double_root(double_quad_sextic):
    report = scan_sign_changes(double_quad_sextic, 0.3)
    spans = [(b.lam_lo, b.lam_hi) for b in report.brackets]
    assert any(abs(lo - 1.8) < 1e-12 and abs(hi - 2.1) < 1e-12
               for lo, hi in spans)
    assert all(s.provenance is SeedProvenance.REGULA_FALSI
               for s in report.seeds)


def test_co_scan_reproduces_reference_values(double_quad_sextic):
    report = scan_sign_changes(double_quad_sextic, 0.3, co=True)
    for lam, want in cases.DOUBLE_QUAD_CO_SCAN_VALUES.items():
        np.testing.assert_allclose(_sample_at(report, lam), want,
                                   rtol=SCAN_VALUE_RTOL)


def test_co_scan_seed_lands_in_original_variable(double_quad_sextic):
    """The reflected sweep brackets (0.9, 1.2); its secant seed must come
    back negated so that refinement runs on the polynomial itself."""
    report = scan_sign_changes(double_quad_sextic, 0.3, co=True)
    seeds = [s.value for s in report.seeds]
    assert any(abs(s - (-cases.DOUBLE_QUAD_CO_SEED)) < 1e-5 for s in seeds)
    assert all(s.real < 0 for s in seeds)


def test_scan_requires_real_coefficients():
    f = Polynomial((1j, 1.0, 1.0))
    with pytest.raises(RealScanError):
        scan_sign_changes(f, 0.1)


def test_scan_delta_validation(double_quad_sextic):
    with pytest.raises(ValueError):
        scan_sign_changes(double_quad_sextic, 0.0)


def test_scan_records_guard_gaps():
    """A flat spot inside the sweep shows up as a None sample, not a crash."""
    plateau = Polynomial((1.0, 0.0, 0.0, 1.0))
    report = scan_sign_changes(plateau, 0.5, start=-1.0, max_steps=4)
    assert _sample_at(report, 0.0) is None


def test_bracket_validation():
    with pytest.raises(ValueError):
        Bracket(1.0, 0.5, -1.0, 1.0)
    with pytest.raises(ValueError):
        Bracket(0.5, 1.0, 1.0, 2.0)


def test_regula_falsi_step_linear_interpolation():
    bracket = Bracket(0.9, 1.2, 8.366965417990657e-02, -3.884787018255549e-01)
    got = regula_falsi_step(bracket)
    np.testing.assert_allclose(got, cases.QUINTIC_15_RF, rtol=1e-12)


def test_accelerated_regula_falsi_reaches_exact_zero(quintic_15):
    """With a tight exponent the scheme lands on a floating-point zero of
    the Pade function; the default exponent stops one row earlier."""
    bracket = Bracket(0.9, 1.2, 8.366965417990657e-02, -3.884787018255549e-01)
    trace = accelerated_regula_falsi(quintic_15, bracket, sigma=16)
    assert trace.status is TraceStatus.CONVERGED
    assert abs(trace.rows[-1].value) == 0.0
    assert abs(trace.final - 1.0) <= 1e-14

    default = accelerated_regula_falsi(quintic_15, bracket, sigma=5)
    assert default.status is TraceStatus.CONVERGED
    np.testing.assert_allclose(default.final, 1.000000002011310, rtol=1e-12)
    assert abs(default.rows[-1].value) <= 1e-5


def test_accelerated_regula_falsi_respects_sigma(quintic_15):
    """A loose exponent stops earlier than a tight one."""
    bracket = Bracket(0.9, 1.2, 8.366965417990657e-02, -3.884787018255549e-01)
    loose = accelerated_regula_falsi(quintic_15, bracket, sigma=2)
    tight = accelerated_regula_falsi(quintic_15, bracket, sigma=10)
    assert loose.status is TraceStatus.CONVERGED
    assert len(loose.rows) <= len(tight.rows)


def test_companion_seeds_recover_simple_roots():
    rng = np.random.default_rng(808)
    for _ in range(CASES):
        k = int(rng.integers(2, 7))
        roots = sorted(
            (complex(a, b) for a, b in
             zip(3 * rng.normal(size=k), 3 * rng.normal(size=k))),
            key=lambda z: (z.real, z.imag),
        )
        if min(
            abs(a - b) for i, a in enumerate(roots)
            for b in roots[i + 1:]
        ) < 0.2:
            continue
        f = polynomial_from_roots(roots)
        seeds = companion_seed_all(f)
        assert not seeds.low_confidence
        got = sorted(seeds.values, key=lambda z: (z.real, z.imag))
        np.testing.assert_allclose(
            np.array(got), np.array(roots), rtol=0, atol=1e-7
        )


def test_companion_seeds_deterministic(wilkinson10):
    a = companion_seed_all(wilkinson10)
    b = companion_seed_all(wilkinson10)
    assert a.values == b.values


def test_companion_seeds_wilkinson_accuracy(wilkinson10):
    seeds = sorted(s.real for s in companion_seed_all(wilkinson10).values)
    np.testing.assert_allclose(seeds, np.arange(1.0, 11.0), rtol=0, atol=1e-6)


def test_companion_seeds_cluster_layout(cluster_decic):
    """Repeated roots come back as tight clusters with the right counts."""
    seeds = companion_seed_all(cluster_decic).values
    targets = {
        complex(0.0, 1.0): 2,
        complex(0.0, -1.0): 2,
        complex(-0.5, +8.660254037844386e-01): 3,
        complex(-0.5, -8.660254037844386e-01): 3,
    }
    for target, count in targets.items():
        near = [s for s in seeds if abs(s - target) < 1e-2]
        assert len(near) == count
