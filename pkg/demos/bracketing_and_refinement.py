"""Bracketing on the Pade function, then three ways to polish the catch.

Because p = f / (-f') crosses zero linearly at every real root whatever
the multiplicity, sign changes of p along a grid give clean brackets
even where f itself barely dips. The demo works on

    f(l) = 3 (l - 1)(l - 2)(l - 3)(l - 4)(l - 5)

and compares, for the root at 1:

  * one plain regula-falsi step inside the bracket,
  * the accelerated variant that re-brackets with the secant point and
    stops when |p| drops below 10^-sigma,
  * Halley's iteration h = p / (1 + p q) from the bracket edge,
  * the plain Pade fixed point from the same edge.
"""

from polyzeros import (
    Polynomial,
    accelerated_regula_falsi,
    iterate_halley,
    iterate_pade,
    regula_falsi_step,
    scan_sign_changes,
)

F = Polynomial((-360.0, 822.0, -675.0, 255.0, -45.0, 3.0))


def main():
    report = scan_sign_changes(F, 0.3)
    bracket = report.brackets[0]
    print("first bracket: (%g, %g)" % (bracket.lam_lo, bracket.lam_hi))

    lam = regula_falsi_step(bracket)
    print("one secant step lands at %.15f" % lam)

    for sigma in (5, 16):
        trace = accelerated_regula_falsi(F, bracket, sigma=sigma)
        print("accelerated, sigma=%2d: %d rows, final %.15f, |p| %.1e"
              % (sigma, len(trace.rows), trace.final.real,
                 abs(trace.rows[-1].value)))

    halley = iterate_halley(F, bracket.lam_lo)
    pade = iterate_pade(F, bracket.lam_lo)
    print("Halley from %g: %d rows to %.15f"
          % (bracket.lam_lo, len(halley.rows), halley.final.real))
    print("Pade from %g:   %d rows to %.15f"
          % (bracket.lam_lo, len(pade.rows), pade.final.real))
    assert abs(halley.final - 1.0) <= 1e-14
    assert abs(pade.final - 1.0) <= 1e-13


if __name__ == "__main__":
    main()
