"""Polynomial matrices: evaluation, determinants, seeds, eigenvectors.

F(lambda) = sum A_i lambda**i with n x n complex coefficient matrices. The
characteristic polynomial det F is recovered by sampling determinants on a
circle and solving the interpolation system on roots of unity; a singular
leading matrix simply drops the effective degree. Eigenvectors come from
Gauss elimination with row exchanges followed by a Jordan back-elimination
that exposes the null-space columns directly.
"""

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    NotAnEigenvalueError,
    ProblemFormatError,
    SampleConditioningError,
)
from .explore import companion_seed_all
from .poly import Polynomial, effective_degree

TRAILING_TRIM_REL = 1e-10
IMAG_RESIDUE_REL = 1e-10
DEFAULT_PIVOT_TOL = 1e-10
LEADING_REGULARITY_REL = 1e-12


@dataclass(frozen=True)
class PolynomialMatrix:
    """Coefficient matrices A_0..A_rho of shared order n.

    ``leading_regular`` records whether det A_rho is numerically nonzero;
    a singular leading matrix is allowed (the true polynomial degree is
    then below rho*n and is detected from the computed coefficients).
    """

    coefficient_matrices: tuple
    order: int
    degree: int
    leading_regular: bool

    @property
    def nominal_char_degree(self):
        return self.degree * self.order

    def is_real(self):
        return all(
            float(np.max(np.abs(np.asarray(a).imag))) == 0.0
            for a in self.coefficient_matrices
        )


def polynomial_matrix(matrices):
    """Validate and freeze a list of coefficient matrices."""
    if len(matrices) < 2:
        raise ProblemFormatError("need at least A_0 and A_1 (degree >= 1)")
    arrays = []
    n = None
    for i, raw in enumerate(matrices):
        a = np.array(raw, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ProblemFormatError("coefficient matrix %d is not square" % i)
        if n is None:
            n = a.shape[0]
        elif a.shape[0] != n:
            raise ProblemFormatError(
                "coefficient matrix %d has order %d, expected %d"
                % (i, a.shape[0], n)
            )
        a.setflags(write=False)
        arrays.append(a)
    lead = arrays[-1]
    col_norms = np.sqrt(np.sum(np.abs(lead) ** 2, axis=0))
    hadamard = float(np.prod(np.maximum(col_norms, 1e-300)))
    regular = abs(np.linalg.det(lead)) > LEADING_REGULARITY_REL * hadamard
    return PolynomialMatrix(tuple(arrays), n, len(arrays) - 1, regular)


def eval_matrix(pm, lam):
    """Matrix Horner evaluation of F at lam."""
    lam = complex(lam)
    acc = np.array(pm.coefficient_matrices[-1], dtype=complex)
    for a in reversed(pm.coefficient_matrices[:-1]):
        acc = acc * lam + a
    return acc


def characteristic_polynomial(pm, sample_radius=None):
    """det F(lambda) as a polynomial, via determinant interpolation.

    Determinants are sampled at m+1 nodes R*exp(-2*pi*i*s/(m+1)) with
    m = rho*n and R one plus the largest coefficient entry; the
    coefficients fall out of the inverse DFT of the samples, scaled back by
    R**-j. Real inputs are realified when the imaginary residue is below
    IMAG_RESIDUE_REL of the coefficient scale. Trailing coefficients below
    TRAILING_TRIM_REL of the largest are trimmed, so the returned degree is
    the effective one.
    """
    m = pm.nominal_char_degree
    count = m + 1
    if sample_radius is None:
        top = max(float(np.max(np.abs(a))) for a in pm.coefficient_matrices)
        sample_radius = 1.0 + top
    if not (0 < sample_radius < float("inf")):
        raise SampleConditioningError(
            "unusable sample radius %r; pass sample_radius explicitly"
            % (sample_radius,)
        )
    try:
        scale_top = sample_radius ** m
    except OverflowError:
        scale_top = float("inf")
    if not math.isfinite(scale_top):
        raise SampleConditioningError(
            "sample radius %g overflows at degree %d; try a smaller radius"
            % (sample_radius, m)
        )
    dets = np.empty(count, dtype=complex)
    for s in range(count):
        node = sample_radius * cmath.exp(-2j * math.pi * s / count)
        dets[s] = np.linalg.det(eval_matrix(pm, node))
    if not np.all(np.isfinite(dets)):
        raise SampleConditioningError(
            "non-finite determinant samples; try a different sample radius"
        )
    scaled = np.fft.ifft(dets)
    powers = sample_radius ** np.arange(count, dtype=float)
    coeffs = scaled / powers
    top = float(np.max(np.abs(coeffs)))
    if top == 0.0:
        raise SampleConditioningError(
            "all determinant samples vanished; F is singular for every "
            "lambda (nonregular matrix polynomial)"
        )
    if pm.is_real():
        residue = float(np.max(np.abs(coeffs.imag)))
        if residue <= IMAG_RESIDUE_REL * top:
            coeffs = coeffs.real.astype(complex)
    poly = Polynomial(tuple(coeffs))
    return effective_degree(poly, TRAILING_TRIM_REL)


def _quadratic_roots(c0, c1, c2):
    """Roots of c2*x**2 + c1*x + c0 with complex coefficients."""
    disc = c1 * c1 - 4.0 * c2 * c0
    sq = cmath.sqrt(disc)
    if (c1.conjugate() * sq).real < 0.0:
        sq = -sq
    q = -(c1 + sq) / 2.0
    if q == 0:
        return (0j, -c1 / c2)
    return (q / c2, c0 / q)


@dataclass(frozen=True)
class DiagonalSeedReport:
    values: tuple
    degenerate_entries: tuple


def diagonal_seeds(pm):
    """Roots of the diagonal entry polynomials f_jj, entry by entry.

    For a diagonally dominant matrix these are good starting values for the
    refinement iterations. Entries whose actual degree falls below rho
    contribute only their actual roots and are flagged.
    """
    rho = pm.degree
    seeds = []
    degenerate = []
    for j in range(pm.order):
        coeffs = tuple(pm.coefficient_matrices[i][j, j] for i in range(rho + 1))
        entry = Polynomial(coeffs)
        if entry.is_zero:
            degenerate.append(j)
            continue
        deg = entry.degree
        if deg < rho:
            degenerate.append(j)
        if deg == 0:
            continue
        if deg == 1:
            roots = [-entry.coeffs[0] / entry.coeffs[1]]
        elif deg == 2:
            roots = list(_quadratic_roots(*entry.coeffs))
        else:
            roots = list(companion_seed_all(entry).values)
        roots.sort(key=lambda z: (-z.imag, z.real))
        seeds.extend(roots)
    return DiagonalSeedReport(tuple(seeds), tuple(degenerate))


class Normalization(enum.Enum):
    LAST_ENTRY_MINUS_ONE = "last-entry-minus-one"
    UNIT_NORM = "unit-norm"


@dataclass(frozen=True)
class EigenvectorBundle:
    """Null-space data of F at one eigenvalue.

    rank_deficiency counts the pivotless columns (independent eigenvectors)
    found at the given tolerance. right_vectors/left_vectors are n x r
    arrays (one of them may be None when only one side was requested);
    residuals hold the infinity norm of F(lambda) x (or y^T F) per column.
    """

    eigenvalue: complex
    rank_deficiency: int
    right_vectors: object
    left_vectors: object
    normalization: Normalization
    right_residuals: tuple = ()
    left_residuals: tuple = ()


def _null_space_vectors(matrix, pivot_tol):
    """Row-exchange Gauss elimination, then Jordan back-elimination.

    Columns whose best remaining pivot stays below pivot_tol times the
    largest matrix entry become free columns; each free column yields one
    vector with -1 there, zeros at the other free columns, and the
    back-eliminated ratios at the pivot columns.
    """
    a = np.array(matrix, dtype=complex)
    n = a.shape[0]
    threshold = pivot_tol * max(float(np.max(np.abs(a))), 1e-300)
    pivots = []
    free_cols = []
    row = 0
    for col in range(n):
        if row >= n:
            free_cols.append(col)
            continue
        sub = np.abs(a[row:, col])
        best = int(np.argmax(sub))
        if sub[best] <= threshold:
            free_cols.append(col)
            continue
        if best != 0:
            a[[row, row + best]] = a[[row + best, row]]
        pivot = a[row, col]
        for r in range(row + 1, n):
            if a[r, col] != 0:
                a[r, :] -= (a[r, col] / pivot) * a[row, :]
        pivots.append((row, col))
        row += 1
    if not free_cols:
        return None, pivots
    for i in range(len(pivots) - 1, 0, -1):
        prow, pcol = pivots[i]
        pivot = a[prow, pcol]
        for r in range(prow):
            if a[r, pcol] != 0:
                a[r, :] -= (a[r, pcol] / pivot) * a[prow, :]
    vectors = np.zeros((n, len(free_cols)), dtype=complex)
    for idx, fc in enumerate(free_cols):
        vectors[fc, idx] = -1.0
        for prow, pcol in pivots:
            vectors[pcol, idx] = a[prow, fc] / a[prow, pcol]
    return vectors, pivots


def extract_eigenvectors(pm, lam, pivot_tol=DEFAULT_PIVOT_TOL,
                         normalization=Normalization.LAST_ENTRY_MINUS_ONE):
    """Right eigenvectors of F at lam with rank-deficiency detection."""
    evaluated = eval_matrix(pm, lam)
    vectors, _ = _null_space_vectors(evaluated, pivot_tol)
    if vectors is None:
        raise NotAnEigenvalueError(
            "%r is not an eigenvalue at pivot tolerance %g" % (lam, pivot_tol)
        )
    if normalization is Normalization.UNIT_NORM:
        vectors = vectors / np.linalg.norm(vectors, axis=0, keepdims=True)
    residuals = tuple(
        float(np.max(np.abs(evaluated @ vectors[:, k])))
        for k in range(vectors.shape[1])
    )
    return EigenvectorBundle(
        complex(lam), vectors.shape[1], vectors, None, normalization, residuals, ()
    )


def left_eigenvectors(pm, lam, pivot_tol=DEFAULT_PIVOT_TOL,
                      normalization=Normalization.LAST_ENTRY_MINUS_ONE):
    """Left eigenvectors: the same extraction on transposed coefficients."""
    transposed = polynomial_matrix(
        [np.array(a).T for a in pm.coefficient_matrices]
    )
    bundle = extract_eigenvectors(transposed, lam, pivot_tol, normalization)
    return EigenvectorBundle(
        bundle.eigenvalue,
        bundle.rank_deficiency,
        None,
        bundle.right_vectors,
        bundle.normalization,
        (),
        bundle.right_residuals,
    )
