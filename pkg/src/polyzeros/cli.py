"""Command line driver.

Subcommands: solve (full pipeline), explore (real-axis sign scan), ecp
(interpolation list with evolutions), eigvec (eigenvectors at given
eigenvalues), plot (CSV samples of f, p, h over a real interval). Problem
files are JSON objects; complex numbers are written as [re, im] pairs and
polynomial coefficients are ascending.
"""

import argparse
import dataclasses
import json
import sys

from .ecp import (
    EVOLUTION_THRESHOLD_REL,
    build_ecp_list,
    evolve_until,
    gershgorin_enclosures,
    sum_control,
)
from .errors import (
    DerivativeUnderflowError,
    HalleyDenominatorError,
    PolyzerosError,
    ProblemFormatError,
    ZeroPolynomialError,
)
from .explore import scan_sign_changes
from .matpoly import (
    characteristic_polynomial,
    eval_matrix,
    extract_eigenvectors,
    left_eigenvectors,
    polynomial_matrix,
)
from .pipeline import (
    Algorithm,
    ProblemSpec,
    SeedSource,
    complex_pair,
    report_to_dict,
    run_pipeline,
)
from .poly import Polynomial, cauchy_root_bound, evaluate, halley_eval, pade_eval
from .refine import IterationSettings

DEFAULT_PLOT_SAMPLES = 400


def _decode_complex(obj, where):
    if isinstance(obj, (int, float)):
        return complex(obj)
    if (
        isinstance(obj, (list, tuple))
        and len(obj) == 2
        and all(isinstance(x, (int, float)) for x in obj)
    ):
        return complex(obj[0], obj[1])
    raise ProblemFormatError(
        "%s: expected a number or [re, im] pair, got %r" % (where, obj)
    )


def _decode_matrix(rows, where, order=None):
    if not isinstance(rows, list) or not rows:
        raise ProblemFormatError("%s: expected a nonempty list of rows" % where)
    n = order if order is not None else len(rows)
    if len(rows) != n:
        raise ProblemFormatError(
            "%s: has %d rows, expected %d" % (where, len(rows), n)
        )
    decoded = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ProblemFormatError(
                "%s row %d: expected %d entries" % (where, i, n)
            )
        decoded.append(
            [_decode_complex(x, "%s[%d][%d]" % (where, i, j))
             for j, x in enumerate(row)]
        )
    return decoded


def parse_problem_file(path):
    """Read a JSON problem file into a validated ProblemSpec."""
    with open(path) as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ProblemFormatError("%s: invalid JSON: %s" % (path, exc))
    if not isinstance(data, dict):
        raise ProblemFormatError("%s: top level must be an object" % path)
    kind = data.get("kind")
    polynomial = None
    matrix = None
    if kind == "polynomial":
        raw = data.get("coefficients")
        if not isinstance(raw, list):
            raise ProblemFormatError(
                "%s: 'coefficients' must be an ascending list" % path
            )
        if not raw:
            raise ProblemFormatError("%s: zero polynomial" % path)
        coeffs = tuple(
            _decode_complex(x, "coefficients[%d]" % i)
            for i, x in enumerate(raw)
        )
        polynomial = Polynomial(coeffs)
        if polynomial.is_zero:
            raise ProblemFormatError("%s: zero polynomial" % path)
    elif kind == "matrix":
        raw = data.get("matrices")
        if not isinstance(raw, list) or len(raw) < 2:
            raise ProblemFormatError(
                "%s: 'matrices' must list the rho+1 coefficient matrices"
                % path
            )
        order = None
        decoded = []
        for i, item in enumerate(raw):
            rows = _decode_matrix(item, "matrices[%d]" % i, order)
            order = len(rows)
            decoded.append(rows)
        matrix = polynomial_matrix(decoded)
    else:
        raise ProblemFormatError(
            "%s: 'kind' must be 'polynomial' or 'matrix'" % path
        )
    seeds = tuple(
        _decode_complex(x, "seeds[%d]" % i)
        for i, x in enumerate(data.get("seeds", []))
    )
    if "seed_source" in data:
        try:
            source = SeedSource(data["seed_source"])
        except ValueError:
            raise ProblemFormatError(
                "%s: unknown seed_source %r" % (path, data["seed_source"])
            )
    elif seeds:
        source = SeedSource.EXTERNAL
    elif matrix is not None:
        source = SeedSource.DIAGONAL
    else:
        source = SeedSource.EXPLORE
    try:
        algorithm = Algorithm(data.get("algorithm", "detect"))
    except ValueError:
        raise ProblemFormatError(
            "%s: unknown algorithm %r" % (path, data["algorithm"])
        )
    settings_kwargs = {}
    for key in ("max_iters", "step_tol", "residual_tol", "divergence_factor"):
        if key in data:
            settings_kwargs[key] = data[key]
    try:
        return ProblemSpec(
            polynomial=polynomial,
            matrix=matrix,
            seed_source=source,
            external_seeds=seeds,
            algorithm=algorithm,
            delta=float(data.get("delta", 0.1)),
            sigma=int(data.get("sigma", 5)),
            settings=IterationSettings(**settings_kwargs),
            nu_max=data.get("nu_max"),
            nu=int(data.get("nu", 1)),
            ecp=bool(data.get("ecp", False)),
        )
    except (TypeError, ValueError) as exc:
        raise ProblemFormatError("%s: %s" % (path, exc))


def problem_spec_to_dict(spec):
    """Inverse of parse_problem_file: a JSON-ready problem description."""
    data = {}
    if spec.polynomial is not None:
        data["kind"] = "polynomial"
        data["coefficients"] = [complex_pair(c) for c in spec.polynomial.coeffs]
    else:
        data["kind"] = "matrix"
        data["matrices"] = [
            [[complex_pair(a[i, j]) for j in range(spec.matrix.order)]
             for i in range(spec.matrix.order)]
            for a in spec.matrix.coefficient_matrices
        ]
    data["seed_source"] = spec.seed_source.value
    if spec.external_seeds:
        data["seeds"] = [complex_pair(s) for s in spec.external_seeds]
    data["algorithm"] = spec.algorithm.value
    data["delta"] = spec.delta
    data["sigma"] = spec.sigma
    data["max_iters"] = spec.settings.max_iters
    data["step_tol"] = spec.settings.step_tol
    data["residual_tol"] = spec.settings.residual_tol
    data["divergence_factor"] = spec.settings.divergence_factor
    if spec.nu_max is not None:
        data["nu_max"] = spec.nu_max
    data["nu"] = spec.nu
    data["ecp"] = spec.ecp
    return data


def _load_seed_file(path):
    with open(path) as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ProblemFormatError("%s: invalid JSON: %s" % (path, exc))
    if isinstance(data, dict):
        data = data.get("seeds")
    if not isinstance(data, list) or not data:
        raise ProblemFormatError(
            "%s: expected a list of seeds (or {'seeds': [...]})" % path
        )
    return tuple(
        _decode_complex(x, "seeds[%d]" % i) for i, x in enumerate(data)
    )


def _apply_overrides(spec, args):
    changes = {}
    if getattr(args, "seeds", None):
        changes["external_seeds"] = _load_seed_file(args.seeds)
        changes["seed_source"] = SeedSource.EXTERNAL
    if getattr(args, "algorithm", None):
        changes["algorithm"] = Algorithm(args.algorithm)
    if getattr(args, "delta", None) is not None:
        changes["delta"] = args.delta
    if getattr(args, "sigma", None) is not None:
        changes["sigma"] = args.sigma
    if getattr(args, "nu_max", None) is not None:
        changes["nu_max"] = args.nu_max
    settings_changes = {}
    if getattr(args, "step_tol", None) is not None:
        settings_changes["step_tol"] = args.step_tol
    if getattr(args, "residual_tol", None) is not None:
        settings_changes["residual_tol"] = args.residual_tol
    if settings_changes:
        changes["settings"] = dataclasses.replace(
            spec.settings, **settings_changes
        )
    return dataclasses.replace(spec, **changes) if changes else spec


def _write_json(data, out_path):
    text = json.dumps(data, indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _scalar_polynomial(spec):
    if spec.polynomial is not None:
        return spec.polynomial
    return characteristic_polynomial(spec.matrix)


def _cmd_solve(args):
    spec = _apply_overrides(parse_problem_file(args.problem), args)
    report = run_pipeline(spec)
    _write_json(report_to_dict(report), args.out)
    return 0 if report.all_residuals_pass else 1


def _scan_dict(report):
    return {
        "co": report.co,
        "samples": [
            [lam, (None if val is None else val)]
            for lam, val in report.samples
        ],
        "brackets": [
            {"lo": b.lam_lo, "hi": b.lam_hi, "p_lo": b.p_lo, "p_hi": b.p_hi}
            for b in report.brackets
        ],
        "seeds": [
            {"value": complex_pair(s.value), "provenance": s.provenance.value}
            for s in report.seeds
        ],
    }


def _cmd_explore(args):
    spec = _apply_overrides(parse_problem_file(args.problem), args)
    f = _scalar_polynomial(spec)
    out = {}
    for label, co in (("plain", False), ("co", True)):
        out[label] = _scan_dict(scan_sign_changes(f, spec.delta, co=co))
    _write_json(out, args.out)
    return 0


def _cmd_ecp(args):
    spec = _apply_overrides(parse_problem_file(args.problem), args)
    if spec.seed_source is not SeedSource.EXTERNAL:
        raise ProblemFormatError(
            "ecp needs explicit eigenvalue approximations (--seeds or file)"
        )
    f = _scalar_polynomial(spec)
    lst = build_ecp_list(f, spec.external_seeds)
    history = [lst] + evolve_until(lst, f)
    final = history[-1]
    max_d = max(abs(d) for d in final.defects)
    max_h = max(abs(h) for h in final.main_values)
    control = sum_control(final)
    disks = gershgorin_enclosures(final)
    _write_json(
        {
            "evolutions": len(history) - 1,
            "defect_history": [
                max(abs(d) for d in item.defects) for item in history
            ],
            "sum_control": {
                "expected": complex_pair(control.expected),
                "actual": complex_pair(control.actual),
                "discrepancy": control.discrepancy,
            },
            "final_list": {
                "sigmas": [complex_pair(s) for s in final.sigmas],
                "defects": [complex_pair(d) for d in final.defects],
                "main_values": [complex_pair(h) for h in final.main_values],
            },
            "disks": [
                {
                    "center": complex_pair(d.center),
                    "radius": d.radius,
                    "separated": d.separated,
                    "interval": list(d.interval) if d.interval else None,
                    "box": [list(b) for b in d.box] if d.box else None,
                }
                for d in disks
            ],
        },
        args.out,
    )
    return 0 if max_d <= EVOLUTION_THRESHOLD_REL * (1.0 + max_h) else 1


def _cmd_eigvec(args):
    spec = _apply_overrides(parse_problem_file(args.problem), args)
    if spec.matrix is None:
        raise ProblemFormatError("eigvec needs a matrix problem")
    if spec.seed_source is not SeedSource.EXTERNAL:
        raise ProblemFormatError(
            "eigvec needs explicit eigenvalues (--seeds or file)"
        )
    residual_tol = spec.settings.residual_tol
    entries = []
    all_pass = True
    for lam in spec.external_seeds:
        right = extract_eigenvectors(spec.matrix, lam)
        left = left_eigenvectors(spec.matrix, lam)
        scale = 1.0 + float(
            abs(eval_matrix(spec.matrix, lam)).max()
        )
        passes = all(
            r <= residual_tol * scale
            for r in right.right_residuals + left.left_residuals
        )
        all_pass = all_pass and passes
        entries.append(
            {
                "value": complex_pair(lam),
                "rank_deficiency": right.rank_deficiency,
                "right": [
                    [complex_pair(right.right_vectors[i, k])
                     for i in range(right.right_vectors.shape[0])]
                    for k in range(right.right_vectors.shape[1])
                ],
                "left": [
                    [complex_pair(left.left_vectors[i, k])
                     for i in range(left.left_vectors.shape[0])]
                    for k in range(left.left_vectors.shape[1])
                ],
                "right_residuals": list(right.right_residuals),
                "left_residuals": list(left.left_residuals),
                "residual_pass": passes,
            }
        )
    _write_json({"eigenvectors": entries}, args.out)
    return 0 if all_pass else 1


def _csv_value(z):
    z = complex(z)
    if z.imag == 0.0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return "%r%s%rj" % (z.real, sign, abs(z.imag))


def emit_plot_data(f, interval, samples, path):
    """Write CSV rows lambda,f,p,h over a real interval.

    Pade and Halley cells are left blank wherever their guards fire (for
    example f' vanishing for a constant polynomial)."""
    lo, hi = float(interval[0]), float(interval[1])
    if samples < 2:
        raise ValueError("samples must be >= 2")
    if not lo < hi:
        raise ValueError("interval must be ordered")
    lines = ["lambda,f,p,h"]
    for i in range(samples):
        lam = lo + (hi - lo) * i / (samples - 1)
        row = [repr(lam), _csv_value(evaluate(f, lam)[0])]
        for fn in (pade_eval, halley_eval):
            try:
                row.append(_csv_value(fn(f, lam)))
            except (DerivativeUnderflowError, HalleyDenominatorError,
                    ZeroPolynomialError, ZeroDivisionError, OverflowError):
                row.append("")
        lines.append(",".join(row))
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_plot(args):
    spec = _apply_overrides(parse_problem_file(args.problem), args)
    f = _scalar_polynomial(spec)
    if args.range is not None:
        interval = (args.range[0], args.range[1])
    else:
        bound = cauchy_root_bound(f)
        interval = (-bound, bound)
    emit_plot_data(f, interval, args.samples, args.out)
    return 0


def _add_common(parser):
    parser.add_argument("problem", help="JSON problem file")
    parser.add_argument("--delta", type=float, default=None,
                        help="exploration step size")
    parser.add_argument("--sigma", type=int, default=None,
                        help="accelerated regula falsi exponent")
    parser.add_argument("--step-tol", type=float, default=None,
                        dest="step_tol", help="relative step tolerance")
    parser.add_argument("--residual-tol", type=float, default=None,
                        dest="residual_tol", help="relative residual tolerance")
    parser.add_argument("--nu-max", type=int, default=None, dest="nu_max",
                        help="largest multiplicity probed")
    parser.add_argument("--seeds", default=None,
                        help="JSON file with starting values")
    parser.add_argument("--algorithm", default=None,
                        choices=[a.value for a in Algorithm],
                        help="refinement algorithm (default detect)")
    parser.add_argument("--out", default=None, help="output file")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="polyzeros",
        description="Zeros of polynomials and polynomial matrices via "
                    "Pade-function iterations",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, extra in (
        ("solve", _cmd_solve, "full seed/refine/report pipeline"),
        ("explore", _cmd_explore, "real-axis sign-change scan"),
        ("ecp", _cmd_ecp, "interpolation list, evolutions, enclosures"),
        ("eigvec", _cmd_eigvec, "eigenvectors at given eigenvalues"),
        ("plot", _cmd_plot, "CSV samples of f, p, h on an interval"),
    ):
        p = sub.add_parser(name, help=extra)
        _add_common(p)
        if name == "plot":
            p.add_argument("--range", type=float, nargs=2, default=None,
                           help="interval endpoints (default Cauchy bound)")
            p.add_argument("--samples", type=int, default=DEFAULT_PLOT_SAMPLES,
                           help="number of sample points")
        p.set_defaults(handler=fn)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except PolyzerosError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except OSError as exc:
        sys.stderr.write("%s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
