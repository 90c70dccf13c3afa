"""Complex polynomial arithmetic and the scalar iteration functions.

Polynomials are stored densely with ascending coefficients, coeffs[j] being
the coefficient of lambda**j. The module provides Horner evaluation with
derivative propagation, the Pade function p = f/(-f'), Halley's function,
the multiplicity-revealing test-polynomial transform, synthetic-division
deflation, and a condition-aware Taylor multiplicity test.
"""

from dataclasses import dataclass

from .errors import (
    DerivativeUnderflowError,
    HalleyDenominatorError,
    TaylorRejectionError,
    ZeroPolynomialError,
)

STRUCTURAL_ZERO = 1e-300
DERIVATIVE_UNDERFLOW = 1e-290
TAYLOR_TOL = 1e-7


@dataclass(frozen=True)
class Polynomial:
    """Dense complex polynomial, ascending coefficient order.

    The stored tuple is trimmed of structurally zero leading terms
    (magnitude <= STRUCTURAL_ZERO) so that ``degree`` always refers to a
    genuinely nonzero leading coefficient. No magnitude-based trimming of
    user data happens here; relative-threshold degree detection is the
    separate :func:`effective_degree` operation.
    """

    coeffs: tuple

    def __post_init__(self):
        trimmed = list(self.coeffs)
        while trimmed and abs(trimmed[-1]) <= STRUCTURAL_ZERO:
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(complex(a) for a in trimmed))
        for a in self.coeffs:
            if a != a or abs(a) == float("inf"):
                raise ValueError("polynomial coefficients must be finite")

    @property
    def degree(self):
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial")
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    def is_real(self, tol=0.0):
        return all(abs(a.imag) <= tol for a in self.coeffs)


def polynomial_from_roots(roots, leading=1.0):
    """Expand prod (lambda - r) * leading into ascending coefficients."""
    coeffs = [complex(leading)]
    for r in roots:
        r = complex(r)
        nxt = [0j] * (len(coeffs) + 1)
        for i, a in enumerate(coeffs):
            nxt[i + 1] += a
            nxt[i] -= r * a
        coeffs = nxt
    return Polynomial(tuple(coeffs))


def evaluate(f, lam, order=0):
    """Evaluate f and its first ``order`` derivatives at lam.

    Nested (Horner) evaluation with derivative propagation; returns a tuple
    (f(lam), f'(lam), ..., f^(order)(lam)) with the factorials included.
    """
    if f.is_zero:
        raise ZeroPolynomialError("zero polynomial")
    if order < 0:
        raise ValueError("order must be >= 0")
    lam = complex(lam)
    vals = [0j] * (order + 1)
    for a in reversed(f.coeffs):
        for k in range(order, 0, -1):
            vals[k] = vals[k] * lam + k * vals[k - 1]
        vals[0] = vals[0] * lam + a
    return tuple(vals)


def coefficient_scale(f, lam):
    """Magnitude sum of the terms, sum |a_j| |lam|**j.

    Shared scale for relative residual tests: |f(lam)| is "numerically zero"
    when it is small against this sum.
    """
    r = abs(complex(lam))
    s = 0.0
    for a in reversed(f.coeffs):
        s = s * r + abs(a)
    return s


def derivative_scales(f, lam, order):
    """Magnitude sums S_k for the k-th derivative term magnitudes.

    S_k = sum_j |a_j| * j(j-1)...(j-k+1) * |lam|**(j-k), the all-positive
    analogue of :func:`evaluate`; |f^(k)(lam)| <= S_k always.
    """
    absf = Polynomial(tuple(abs(a) for a in f.coeffs))
    return tuple(v.real for v in evaluate(absf, abs(complex(lam)), order))


def cauchy_root_bound(f):
    """The classical bound 1 + max|a_j|/|a_m|; no root lies beyond it."""
    m = f.degree
    if m == 0:
        return 1.0
    return 1.0 + max(abs(a) for a in f.coeffs[:m]) / abs(f.coeffs[m])


def co_polynomial(f):
    """Reflect lambda -> -lambda: coefficient rule a_j -> (-1)^j a_j."""
    return Polynomial(tuple(a * (-1) ** j for j, a in enumerate(f.coeffs)))


def pade_eval(f, lam, co=False):
    """The Pade function p(lambda) = f(lambda)/(-f'(lambda)).

    With co=True evaluates the reflected variant used to sweep negative
    real roots with a positive-axis scan; it equals
    -pade_eval(co_polynomial(f), lam) and crosses zero with slope +1/nu at
    a reflected nu-fold root.
    """
    if co:
        return -pade_eval(co_polynomial(f), lam)
    if f.degree < 1:
        raise ZeroPolynomialError("pade function needs degree >= 1")
    v, d = evaluate(f, lam, 1)
    if abs(d) <= DERIVATIVE_UNDERFLOW:
        raise DerivativeUnderflowError("derivative vanishes at %r" % (lam,))
    return v / (-d)


def halley_eval(f, lam):
    """Halley's function h = p/(1 + p q) with q = f''/f'."""
    if f.degree < 2:
        raise ZeroPolynomialError("halley function needs degree >= 2")
    v, d1, d2 = evaluate(f, lam, 2)
    if abs(d1) <= DERIVATIVE_UNDERFLOW:
        raise DerivativeUnderflowError("derivative vanishes at %r" % (lam,))
    p = v / (-d1)
    q = d2 / d1
    den = 1.0 + p * q
    if abs(den) <= DERIVATIVE_UNDERFLOW:
        raise HalleyDenominatorError("halley denominator 1+pq vanishes at %r" % (lam,))
    return p / den


def test_polynomial(f, k):
    """The k-th test polynomial: coefficient rule a_j -> (1-j)^k a_j.

    f_0 is f itself; for every k >= 1 the j=1 coefficient is annihilated.
    The ratio chain P_nu = f_{nu-1}/f_nu isolates nu-fold roots as simple
    zeros of the associated iteration step.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return f
    return Polynomial(
        tuple(a * complex(1 - j) ** k for j, a in enumerate(f.coeffs))
    )


def deflate_horner(f, root):
    """Synthetic division by (lambda - root).

    Returns (quotient, remainder) with f = (lambda-root)*quotient + remainder
    identically; the remainder equals f(root).
    """
    if f.degree < 1:
        raise ZeroPolynomialError("cannot deflate a constant")
    root = complex(root)
    out = [0j] * len(f.coeffs)
    acc = 0j
    for j in range(len(f.coeffs) - 1, -1, -1):
        acc = acc * root + f.coeffs[j]
        out[j] = acc
    remainder = out[0]
    quotient = Polynomial(tuple(out[1:]))
    return quotient, remainder


@dataclass(frozen=True)
class TaylorVerdict:
    """Accepted multiplicity with the derivative-magnitude ladder.

    derivative_magnitudes holds |f^(k)(a)| for k = 0..multiplicity; the
    entries below ``multiplicity`` passed the relative zero test and the
    last entry failed it (it is genuinely nonzero).
    """

    multiplicity: int
    derivative_magnitudes: tuple


def taylor_multiplicity_test(f, a, nu, tol=TAYLOR_TOL):
    """Check that a is a root of multiplicity exactly nu.

    Accepts iff |f^(k)(a)| <= tol*S_k for all k < nu and the nu-th
    derivative breaks the pattern. S_k is the magnitude sum of the k-th
    derivative terms, so the test is relative and survives Wilkinson-scale
    coefficients. Raises TaylorRejectionError carrying the first violating
    k otherwise.
    """
    if nu < 1:
        raise ValueError("nu must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be > 0")
    vals = evaluate(f, a, nu)
    scales = derivative_scales(f, a, nu)
    mags = tuple(abs(v) for v in vals)
    for k in range(nu):
        if mags[k] > tol * scales[k]:
            raise TaylorRejectionError(
                "derivative order %d is not numerically zero at %r" % (k, a), k
            )
    if mags[nu] <= tol * scales[nu]:
        raise TaylorRejectionError(
            "derivative order %d still vanishes at %r; multiplicity exceeds %d"
            % (nu, a, nu),
            nu,
        )
    return TaylorVerdict(nu, mags)


def effective_degree(f, rel_tol=1e-10):
    """Degree after trimming trailing coefficients below rel_tol * max|a|.

    Explicit, relative-threshold degree detection for computed coefficient
    lists (a leading matrix can be singular, dropping the true degree below
    the nominal one). Returns a new Polynomial.
    """
    if f.is_zero:
        return f
    top = max(abs(a) for a in f.coeffs)
    coeffs = list(f.coeffs)
    while len(coeffs) > 1 and abs(coeffs[-1]) <= rel_tol * top:
        coeffs.pop()
    return Polynomial(tuple(coeffs))
