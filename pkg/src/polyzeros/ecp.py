"""Defect lists: interpolation values, main values, and their machinery.

Given pairwise distinct interpolation values sigma_1..sigma_m for a degree-m
polynomial, each row carries the defect d_k = f(sigma_k) / (a_m *
prod_{j!=k} (sigma_k - sigma_j)) and the main value H_k = sigma_k - d_k.
The list determines the polynomial completely: the accompanying matrix
E = Diag(sigma) - ones * d^T has exactly the roots of f as eigenvalues, the
main values sum to -a_{m-1}/a_m (the control identity), the rational
function S_1(lambda) - 1 vanishes exactly at the roots, and replacing the
interpolation values by the main values (an evolution) contracts the
defects quadratically near simple roots. Gershgorin disks around the main
values give computable enclosures.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    EvolutionCollisionError,
    InterpolationValueError,
    RayleighDenominatorError,
    ZeroPolynomialError,
)
from .poly import evaluate
from .refine import DEFAULT_SETTINGS, _run_iteration

SEPARATION_REL = 1e-12
DENOMINATOR_UNDERFLOW = 1e-290
EVOLUTION_THRESHOLD_REL = 1e-12
MAX_EVOLUTIONS = 20


@dataclass(frozen=True)
class EcpRow:
    sigma: complex
    defect: complex
    main_value: complex


@dataclass(frozen=True)
class EcpList:
    rows: tuple
    degree: int
    leading_coeff: complex
    subleading_coeff: complex

    @property
    def sigmas(self):
        return tuple(r.sigma for r in self.rows)

    @property
    def defects(self):
        return tuple(r.defect for r in self.rows)

    @property
    def main_values(self):
        return tuple(r.main_value for r in self.rows)

    def is_real(self):
        return all(
            r.sigma.imag == 0.0 and r.defect.imag == 0.0 for r in self.rows
        )


def _check_separation(values, label):
    values = [complex(v) for v in values]
    scale = 1.0 + max(abs(v) for v in values)
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if abs(values[i] - values[j]) <= SEPARATION_REL * scale:
                raise InterpolationValueError(
                    "%s %d and %d coincide" % (label, i, j), (i, j)
                )


def build_ecp_list(f, sigmas):
    """Build the (sigma, defect, main value) list for f at the given values.

    The denominator products run in fixed row order so repeated builds are
    bit-reproducible. Coincident or clustered interpolation values raise
    with the offending indices.
    """
    m = f.degree
    if m < 1:
        raise ZeroPolynomialError("need degree >= 1")
    sigmas = [complex(s) for s in sigmas]
    if len(sigmas) != m:
        raise InterpolationValueError(
            "expected %d interpolation values, got %d" % (m, len(sigmas))
        )
    _check_separation(sigmas, "interpolation values")
    a_m = f.coeffs[m]
    a_m1 = f.coeffs[m - 1] if m >= 1 else 0j
    rows = []
    for k, sk in enumerate(sigmas):
        denom = a_m
        for j, sj in enumerate(sigmas):
            if j != k:
                denom *= sk - sj
        if abs(denom) <= DENOMINATOR_UNDERFLOW:
            raise InterpolationValueError(
                "interpolation values too clustered around index %d" % k, (k,)
            )
        d = evaluate(f, sk, 0)[0] / denom
        rows.append(EcpRow(sk, d, sk - d))
    return EcpList(tuple(rows), m, a_m, a_m1)


@dataclass(frozen=True)
class SumControl:
    expected: complex
    actual: complex
    discrepancy: float


def sum_control(lst):
    """Check the control identity: sum of main values = -a_{m-1}/a_m."""
    expected = -lst.subleading_coeff / lst.leading_coeff
    actual = 0j
    for r in lst.rows:
        actual += r.main_value
    discrepancy = abs(actual - expected) / (1.0 + abs(expected))
    return SumControl(expected, actual, discrepancy)


def ecp_matrix(lst):
    """The accompanying matrix E = Diag(sigma) - ones * d^T.

    Its diagonal is the main-value column; every column k repeats -d_k off
    the diagonal, and the spectrum equals the roots of the underlying
    polynomial.
    """
    m = lst.degree
    e = np.zeros((m, m), dtype=complex)
    for j, r in enumerate(lst.rows):
        e[:, j] = -r.defect
        e[j, j] += r.sigma
    return e


def _partial_sums(lst, lam):
    """S_1, S_2, S_sigma at lam, summed in row order."""
    s1 = 0j
    s2 = 0j
    s_sigma = 0j
    for r in lst.rows:
        diff = r.sigma - lam
        if abs(diff) <= DENOMINATOR_UNDERFLOW * (1.0 + abs(r.sigma)):
            raise RayleighDenominatorError(
                "iterate coincides with interpolation value %r" % (r.sigma,)
            )
        s1 += r.defect / diff
        s2 += r.defect / (diff * diff)
        s_sigma += r.defect * r.sigma / (diff * diff)
    return s1, s2, s_sigma


def _reduced_residual(lst):
    def residual(lam):
        s1 = 0j
        scale = 1.0
        for r in lst.rows:
            diff = r.sigma - lam
            if abs(diff) <= DENOMINATOR_UNDERFLOW * (1.0 + abs(r.sigma)):
                raise RayleighDenominatorError(
                    "iterate coincides with interpolation value %r" % (r.sigma,)
                )
            term = r.defect / diff
            s1 += term
            scale += abs(term)
        return abs(s1 - 1.0), scale

    return residual


def _list_bound(lst, settings):
    top = max(abs(r.sigma) + abs(r.defect) for r in lst.rows)
    return settings.divergence_factor * (1.0 + top)


def rayleigh_iterate(lst, seed, settings=DEFAULT_SETTINGS):
    """Iterate the list Rayleigh quotient R = (S_sigma - S_1^2)/S_2.

    R reproduces its argument exactly at every eigenvalue, so the iteration
    replaces the iterate by R (the recorded step is R - Lambda). Residuals
    are measured as |S_1(Lambda) - 1| against the magnitude sum of the S_1
    terms.
    """

    def step_fn(lam):
        s1, s2, s_sigma = _partial_sums(lst, lam)
        if abs(s2) <= DENOMINATOR_UNDERFLOW * (1.0 + abs(s1) + abs(s_sigma)):
            raise RayleighDenominatorError("rayleigh denominator S_2 vanished")
        return (s_sigma - s1 * s1) / s2 - lam

    return _run_iteration(
        step_fn, _reduced_residual(lst), seed, settings, _list_bound(lst, settings)
    )


def reduced_pade_iterate(lst, seed, settings=DEFAULT_SETTINGS):
    """Iterate Lambda += p_E with p_E = (S_1 - 1)/(-S_2).

    S_1 - 1 is the reduced eigenvalue equation; its derivative is exactly
    S_2, so p_E is the Pade function of the reduced equation and the
    iteration inherits quadratic convergence at simple roots.
    """

    def step_fn(lam):
        s1, s2, _ = _partial_sums(lst, lam)
        if abs(s2) <= DENOMINATOR_UNDERFLOW * (1.0 + abs(s1)):
            raise RayleighDenominatorError("reduced denominator S_2 vanished")
        return (s1 - 1.0) / (-s2)

    return _run_iteration(
        step_fn, _reduced_residual(lst), seed, settings, _list_bound(lst, settings)
    )


def evolve(lst, f):
    """One evolution: rebuild the list at the current main values."""
    try:
        _check_separation(lst.main_values, "main values")
    except InterpolationValueError as exc:
        raise EvolutionCollisionError(
            "evolution collision: clustered roots; switch to multiplicity "
            "probing",
            exc.indices,
        ) from exc
    return build_ecp_list(f, lst.main_values)


def evolve_until(lst, f, threshold_rel=EVOLUTION_THRESHOLD_REL,
                 max_evolutions=MAX_EVOLUTIONS):
    """Evolve repeatedly until max|d| <= threshold_rel*(1+max|H|).

    Returns the list of evolved lists (not including the input); empty when
    the input already meets the threshold.
    """
    history = []
    current = lst
    for _ in range(max_evolutions):
        max_d = max(abs(r.defect) for r in current.rows)
        max_h = max(abs(r.main_value) for r in current.rows)
        if max_d <= threshold_rel * (1.0 + max_h):
            break
        current = evolve(current, f)
        history.append(current)
    return history


@dataclass(frozen=True)
class GershgorinDisk:
    """Column disk of the accompanying matrix: center H_k, radius
    (m-1)|d_k|. ``interval`` carries the open real enclosure when the whole
    list is real and the disk is separated; ``box`` carries the open
    rectangle bounds on (re, im) for a separated disk of a complex list."""

    center: complex
    radius: float
    separated: bool
    interval: tuple = None
    box: tuple = None


def gershgorin_enclosures(lst):
    """Disks around the main values; their union contains every eigenvalue.

    A disk disjoint from all others contains exactly one eigenvalue; for a
    real list that eigenvalue is real and lies in the open interval, and
    for a complex list its real and imaginary parts obey the open rectangle
    bounds.
    """
    m = lst.degree
    centers = [complex(r.main_value) for r in lst.rows]
    radii = [(m - 1) * abs(r.defect) for r in lst.rows]
    real_list = lst.is_real()
    disks = []
    for k in range(m):
        separated = all(
            abs(centers[k] - centers[j]) > radii[k] + radii[j]
            for j in range(m)
            if j != k
        )
        interval = None
        box = None
        if separated:
            u, v, r = centers[k].real, centers[k].imag, radii[k]
            if real_list:
                interval = (u - r, u + r)
            else:
                box = ((u - r, u + r), (v - r, v + r))
        disks.append(GershgorinDisk(centers[k], radii[k], separated, interval, box))
    return tuple(disks)
