"""Defect lists, the accompanying matrix, evolutions, and enclosures."""

import numpy as np
import pytest

import cases
import oracles
from polyzeros import (
    EcpList,
    EcpRow,
    EvolutionCollisionError,
    InterpolationValueError,
    Polynomial,
    RayleighDenominatorError,
    TraceStatus,
    build_ecp_list,
    ecp_matrix,
    evolve,
    evolve_until,
    gershgorin_enclosures,
    polynomial_from_roots,
    rayleigh_iterate,
    reduced_pade_iterate,
    sum_control,
)
from polyzeros.ecp import EVOLUTION_THRESHOLD_REL, MAX_EVOLUTIONS

LIST_RTOL = 1e-12
PIN_RTOL = 1e-6
ROOT_ATOL = 1e-10
CASES = 30


def _quadratic_list():
    return build_ecp_list(Polynomial((-1.0, 0.0, 1.0)), (0.0, 3.0))


def test_hand_built_quadratic_list():
    """f = lam^2 - 1 at sigma = {0, 3}: d = (1/3, 8/3), H = (-1/3, 1/3)."""
    lst = _quadratic_list()
    np.testing.assert_allclose(lst.defects, (1.0 / 3.0, 8.0 / 3.0),
                               rtol=LIST_RTOL)
    np.testing.assert_allclose(lst.main_values, (-1.0 / 3.0, 1.0 / 3.0),
                               rtol=LIST_RTOL)
    assert lst.degree == 2
    assert lst.is_real()


def test_accompanying_matrix_spectrum_is_the_root_set():
    lst = _quadratic_list()
    e = ecp_matrix(lst)
    np.testing.assert_allclose(e[0, 0], lst.main_values[0], rtol=LIST_RTOL)
    np.testing.assert_allclose(e[1, 1], lst.main_values[1], rtol=LIST_RTOL)
    got = sorted(oracles.two_by_two_eigs(e), key=lambda z: z.real)
    np.testing.assert_allclose(got, (-1.0, 1.0), atol=1e-14)


def test_accompanying_matrix_spectrum_random():
    rng = np.random.default_rng(515)
    for _ in range(CASES):
        m = int(rng.integers(2, 6))
        roots = rng.normal(size=m) + 1j * rng.normal(size=m)
        if min(abs(a - b) for i, a in enumerate(roots)
               for b in roots[i + 1:]) < 0.3:
            continue
        f = polynomial_from_roots(roots)
        sigmas = roots + 0.2 * (rng.normal(size=m) + 1j * rng.normal(size=m))
        lst = build_ecp_list(f, sigmas)
        got = sorted(np.linalg.eigvals(ecp_matrix(lst)),
                     key=lambda z: (z.real, z.imag))
        want = sorted(roots, key=lambda z: (z.real, z.imag))
        np.testing.assert_allclose(got, want, atol=1e-8)


def test_sum_control_is_exact_for_integer_coefficients():
    lst = _quadratic_list()
    control = sum_control(lst)
    assert control.expected == 0j
    np.testing.assert_allclose(control.actual, 0.0, atol=1e-15)

    wilkinson = Polynomial([float(c) for c in oracles.wilkinson_coeffs(10)])
    lst10 = build_ecp_list(wilkinson, cases.WILKINSON10_SEEDS)
    control10 = sum_control(lst10)
    assert control10.expected == 55.0 + 0j
    assert control10.discrepancy < 1e-9


def test_list_rejects_wrong_count_and_coincident_values():
    f = Polynomial((-1.0, 0.0, 1.0))
    with pytest.raises(InterpolationValueError):
        build_ecp_list(f, (0.0, 1.0, 2.0))
    with pytest.raises(InterpolationValueError) as info:
        build_ecp_list(f, (2.0, 2.0))
    assert info.value.indices == (0, 1)


def test_wilkinson_list_matches_recorded_defects(wilkinson10):
    lst = build_ecp_list(wilkinson10, cases.WILKINSON10_SEEDS)
    np.testing.assert_allclose(lst.defects[0],
                               cases.WILKINSON10_LIST1_DEFECTS[0],
                               rtol=PIN_RTOL)
    np.testing.assert_allclose(lst.defects, cases.WILKINSON10_LIST1_DEFECTS,
                               atol=1e-12)
    np.testing.assert_allclose(lst.main_values, cases.WILKINSON10_LIST1_MAIN,
                               atol=1e-9)


def test_two_evolutions_stay_at_the_noise_floor(wilkinson10):
    """Near-root interpolation values give defects at the evaluation noise
    level, so evolutions hold the defects small instead of shrinking them."""
    lst1 = build_ecp_list(wilkinson10, cases.WILKINSON10_SEEDS)
    lst2 = evolve(lst1, wilkinson10)
    row2 = lst2.rows[0]
    want_sigma, want_d, want_h = cases.WILKINSON10_LIST2_ROW1
    np.testing.assert_allclose(row2.sigma.real, want_sigma, rtol=1e-12)
    np.testing.assert_allclose(row2.defect.real, want_d, rtol=PIN_RTOL)
    np.testing.assert_allclose(row2.main_value.real, want_h, rtol=1e-12)

    lst3 = evolve(lst2, wilkinson10)
    row3 = lst3.rows[0]
    want_d3, want_h3 = cases.WILKINSON10_LIST3_ROW1
    np.testing.assert_allclose(row3.defect.real, want_d3, rtol=PIN_RTOL)
    np.testing.assert_allclose(row3.main_value.real, want_h3, rtol=1e-12)

    first = max(abs(d) for d in lst1.defects)
    assert max(abs(d) for d in lst2.defects) <= 5e-10 < first
    assert max(abs(d) for d in lst3.defects) <= 5e-10 < first


def test_evolve_until_reaches_the_threshold():
    f = polynomial_from_roots((1.0, 2.0, 3.0))
    lst = build_ecp_list(f, (0.9, 2.2, 3.4))
    history = evolve_until(lst, f)
    assert 0 < len(history) <= MAX_EVOLUTIONS
    final = history[-1]
    max_d = max(abs(d) for d in final.defects)
    max_h = max(abs(h) for h in final.main_values)
    assert max_d <= EVOLUTION_THRESHOLD_REL * (1.0 + max_h)
    np.testing.assert_allclose(
        sorted(h.real for h in final.main_values),
        (1.0, 2.0, 3.0),
        atol=1e-12,
    )
    assert evolve_until(final, f) == []


def test_evolve_until_plateaus_on_an_ill_conditioned_list(wilkinson10):
    """The evaluation noise floor caps progress, so the loop runs out its
    budget while the main values hold station near the roots."""
    lst = build_ecp_list(wilkinson10, cases.WILKINSON10_SEEDS)
    history = evolve_until(lst, wilkinson10)
    assert len(history) == MAX_EVOLUTIONS
    for evolved in history:
        assert max(abs(d) for d in evolved.defects) <= 2e-9
        np.testing.assert_allclose(
            sorted(h.real for h in evolved.main_values),
            np.arange(1.0, 11.0),
            atol=2e-9,
        )


def test_evolution_collision_reports_indices():
    rows = (
        EcpRow(0.0 + 0j, -0.5 + 0j, 0.5 + 0j),
        EcpRow(1.0 + 0j, 0.5 + 0j, 0.5 + 0j),
    )
    lst = EcpList(rows, 2, 1.0 + 0j, 0j)
    with pytest.raises(EvolutionCollisionError) as info:
        evolve(lst, Polynomial((-1.0, 0.0, 1.0)))
    assert info.value.indices == (0, 1)


def test_rayleigh_iterate_converges_to_a_root():
    lst = _quadratic_list()
    trace = rayleigh_iterate(lst, 0.8)
    assert trace.status is TraceStatus.CONVERGED
    np.testing.assert_allclose(trace.final, 1.0, atol=ROOT_ATOL)


def test_rayleigh_reproduces_an_eigenvalue_immediately():
    lst = _quadratic_list()
    trace = rayleigh_iterate(lst, 1.0)
    assert trace.status is TraceStatus.CONVERGED
    assert abs(trace.rows[0].step) <= 1e-14


def test_reduced_pade_iterate_converges_to_a_root():
    lst = _quadratic_list()
    trace = reduced_pade_iterate(lst, -0.7)
    assert trace.status is TraceStatus.CONVERGED
    np.testing.assert_allclose(trace.final, -1.0, atol=ROOT_ATOL)


def test_reduced_and_rayleigh_agree_from_the_same_seed(wilkinson10):
    """Both list iterations find the same fixed point on a list whose
    interpolation values sit a safe distance from the roots."""
    lst = build_ecp_list(wilkinson10, cases.PERTURBED_WILKINSON_SIGMAS)
    for seed, root in ((3.0000004, 3.0), (7.0000002, 7.0)):
        a = rayleigh_iterate(lst, seed)
        b = reduced_pade_iterate(lst, seed)
        assert a.status is TraceStatus.CONVERGED
        assert b.status is TraceStatus.CONVERGED
        np.testing.assert_allclose(a.final, b.final, atol=1e-12)
        np.testing.assert_allclose(a.final, root, atol=1e-8)


def test_iterate_on_an_interpolation_value_is_a_numerical_error():
    lst = _quadratic_list()
    trace = rayleigh_iterate(lst, 3.0)
    assert trace.status is TraceStatus.NUMERICAL_ERROR
    assert any("coincides" in note for note in trace.notes)


def test_gershgorin_intervals_for_a_real_list(wilkinson10):
    lst = build_ecp_list(wilkinson10, cases.WILKINSON10_SEEDS)
    disks = gershgorin_enclosures(lst)
    assert len(disks) == 10
    for disk, root in zip(disks, range(10, 0, -1)):
        assert disk.separated
        assert disk.interval is not None and disk.box is None
        if disk.radius == 0.0:
            assert disk.center == root
            continue
        lo, hi = disk.interval
        assert lo < root < hi


def test_gershgorin_boxes_for_a_complex_list():
    roots = (1j, -1j, 2.0 + 0j)
    f = polynomial_from_roots(roots)
    sigmas = (0.95j + 0.01, -1.02j, 2.05 + 0.01j)
    lst = build_ecp_list(f, sigmas)
    disks = gershgorin_enclosures(lst)
    for disk, root in zip(disks, roots):
        if not disk.separated:
            continue
        assert disk.box is not None and disk.interval is None
        (re_lo, re_hi), (im_lo, im_hi) = disk.box
        assert re_lo < root.real < re_hi
        assert im_lo < root.imag < im_hi


def test_gershgorin_union_contains_every_root():
    rng = np.random.default_rng(626)
    for _ in range(CASES):
        m = int(rng.integers(2, 6))
        roots = rng.normal(size=m) + 1j * rng.normal(size=m)
        if min(abs(a - b) for i, a in enumerate(roots)
               for b in roots[i + 1:]) < 0.3:
            continue
        f = polynomial_from_roots(roots)
        sigmas = roots + 0.05 * (rng.normal(size=m)
                                 + 1j * rng.normal(size=m))
        disks = gershgorin_enclosures(build_ecp_list(f, sigmas))
        for root in roots:
            assert any(abs(root - d.center) <= d.radius + 1e-12
                       for d in disks)
