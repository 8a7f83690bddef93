"""Batch front door: parse problem files, run computations, emit plot-ready
tables and machine-readable reports.

Commands: hk, eval, closed, compare, density, selftest.
Exit codes: 0 ok, 2 parse error, 3 colength or invariant error, 4 comparison
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .density import density_table, gn_fourier_exact, quadrature_fourier
from .errors import (
    ColengthError,
    EvaluationDomainError,
    InexactDivisionError,
    ModelConstructionError,
    ParseError,
    StructureError,
)
from .fp import fp_limit, hk_multiplicity
from .hilbert import HilbertSeries, chi_series, series_of_table
from .models import (
    ExponentialPolynomialModel,
    HNData,
    eval_model,
    model_dim_one,
    model_finite_pd,
    model_from_hn,
    model_hsop,
)
from .problems import ProblemFile, load_problem_file, parse_y_grid
from .selfcheck import SelfCheckFailure, run_all

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_COMPARISON = 4

_COMPARISON_SLACK = 1e-6


def _fmt(x: float) -> str:
    return format(_f(x), ".17g")


def _f(x) -> float:
    x = float(x)
    return 0.0 if x == 0.0 else x  # normalize -0.0


def _frac(x) -> str:
    return str(Fraction(x))


def _open_out(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _emit(lines, out_path):
    handle, close = _open_out(out_path)
    try:
        for line in lines:
            handle.write(line + "\n")
    finally:
        if close:
            handle.close()


# -- model construction -------------------------------------------------------


def build_model(method: str, pf: ProblemFile, problem: ProblemSpec, hn_json: str | None):
    """Construct the closed-form model named by ``method`` for this problem."""
    if method == "hsop":
        degrees = tuple(g.homogeneous_degree() for g in problem.ideal.generators)
        if len(degrees) != problem.ring_dimension:
            raise StructureError(
                f"hsop method needs exactly dim(R) = {problem.ring_dimension} generators, "
                f"got {len(degrees)}"
            )
        return model_hsop(problem.ring_multiplicity, degrees)
    if method == "dim1":
        if problem.ring_dimension != 1:
            raise StructureError("dim1 method applies to one-dimensional rings only")
        h = min(g.homogeneous_degree() for g in problem.ideal.generators)
        return model_dim_one(problem.ring_multiplicity, h)
    if method == "finite-pd":
        betti = chi_series(
            series_of_table(problem.table(0)),
            HilbertSeries.one(),
            problem.ring_series(),
        )
        if betti.denominator_degrees:
            raise StructureError("alternating Betti series is not a Laurent polynomial")
        return model_finite_pd(
            problem.ring_multiplicity, betti.numerator, problem.ring_dimension
        )
    if method == "hn":
        data = None
        if hn_json is not None:
            try:
                data = json.loads(hn_json)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid --hn-json: {exc.msg}")
        elif pf.hn is not None:
            data = pf.hn
        if data is None:
            raise ParseError("method hn needs --hn-json or options.hn in the problem file")
        return model_from_hn(_hn_from_dict(data))
    raise ParseError(f"unknown method {method!r}")


def _hn_from_dict(data: dict) -> HNData:
    try:
        delta_r = data["delta_r"]
        rank_s = data["rank"]
        raw_factors = data["factors"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"hn data needs delta_r, rank, factors: {exc}")
    factors = []
    for item in raw_factors:
        if isinstance(item, dict):
            mu, r = item.get("mu"), item.get("rank")
        elif isinstance(item, (list, tuple)) and len(item) == 2:
            mu, r = item
        else:
            raise ParseError(f"cannot read hn factor {item!r}")
        try:
            factors.append((Fraction(str(mu)), int(r)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot read hn factor {item!r}: {exc}")
    return HNData(delta_r=delta_r, rank_s=rank_s, factors=tuple(factors))


def _model_json(model: ExponentialPolynomialModel) -> dict:
    return model.to_json_dict()


def _sample_rows(model, grid):
    rows = ["y_re,y_im,model_re,model_im"]
    for y in grid:
        v = eval_model(model, y)
        rows.append(",".join((_fmt(y.real), _fmt(y.imag), _fmt(v.real), _fmt(v.imag))))
    return rows


# -- commands -----------------------------------------------------------------


def cmd_hk(args) -> int:
    pf = load_problem_file(args.file)
    problem = pf.to_problem()
    n_top = args.n if args.n is not None else pf.n_max
    if n_top < 0:
        raise ParseError("--n must be non-negative")
    values = [hk_multiplicity(problem, n) for n in range(n_top + 1)]
    stable_from = n_top
    while stable_from > 0 and values[stable_from - 1] == values[n_top]:
        stable_from -= 1
    if args.format == "json":
        doc = {
            "levels": [
                {
                    "n": n,
                    "q": problem.prime ** n,
                    "length": str(problem.table(n).total()),
                    "hk": _frac(v),
                }
                for n, v in enumerate(values)
            ],
            "stable_from": stable_from,
            "stable_value": _frac(values[n_top]),
        }
        _emit([json.dumps(doc, indent=2)], args.out)
    elif args.format == "csv":
        rows = ["n,q,length,hk"]
        for n, v in enumerate(values):
            rows.append(f"{n},{problem.prime ** n},{problem.table(n).total()},{_frac(v)}")
        _emit(rows, args.out)
    else:
        lines = [
            f"n={n} q={problem.prime ** n} length={problem.table(n).total()} hk={_frac(v)}"
            for n, v in enumerate(values)
        ]
        if stable_from < n_top or n_top == 0:
            lines.append(f"stable value {_frac(values[n_top])} from n={stable_from}")
        else:
            lines.append(f"no stabilization observed up to n={n_top}")
        _emit(lines, args.out)
    return EXIT_OK


def _resolve_grid(args, pf: ProblemFile):
    if getattr(args, "y_grid", None):
        try:
            spec = json.loads(args.y_grid)
        except json.JSONDecodeError:
            spec = _parse_grid_shorthand(args.y_grid)
        return parse_y_grid(spec)
    return pf.y_grid


def _parse_grid_shorthand(text: str):
    # lo:hi:count on the real axis
    parts = text.split(":")
    if len(parts) != 3:
        raise ParseError(
            f"cannot read y grid {text!r}; use JSON or the lo:hi:count shorthand"
        )
    try:
        return {"re_min": float(parts[0]), "re_max": float(parts[1]), "count": int(parts[2])}
    except ValueError as exc:
        raise ParseError(f"cannot read y grid {text!r}: {exc}")


def cmd_eval(args) -> int:
    pf = load_problem_file(args.file)
    problem = pf.to_problem()
    n_max = args.n_max if args.n_max is not None else pf.n_max
    grid = _resolve_grid(args, pf)
    estimates = fp_limit(problem, grid, n_max) if grid else {}
    if args.format == "json":
        doc = {
            "n": n_max,
            "points": [
                {
                    "y_re": _f(est_y.real),
                    "y_im": _f(est_y.imag),
                    "f_re": _f(est.value.real),
                    "f_im": _f(est.value.imag),
                    "err_bound": _f(est.error_bound),
                }
                for est_y, est in estimates.items()
            ],
        }
        _emit([json.dumps(doc, indent=2)], args.out)
    else:
        rows = ["y_re,y_im,n,F_re,F_im,err_bound"]
        for y, est in estimates.items():
            rows.append(
                ",".join(
                    (
                        _fmt(y.real),
                        _fmt(y.imag),
                        str(n_max),
                        _fmt(est.value.real),
                        _fmt(est.value.imag),
                        _fmt(est.error_bound),
                    )
                )
            )
        _emit(rows, args.out)
    return EXIT_OK


def cmd_closed(args) -> int:
    pf = load_problem_file(args.file)
    problem = pf.to_problem()
    model = build_model(args.method, pf, problem, args.hn_json)
    grid = _resolve_grid(args, pf)
    value0 = model.value_at_zero()
    doc = {
        "method": args.method,
        "model": _model_json(model),
        "value_at_zero": {"re": _f(value0.real), "im": _f(value0.imag)},
    }
    if args.method == "finite-pd":
        betti = chi_series(
            series_of_table(problem.table(0)), HilbertSeries.one(), problem.ring_series()
        ).numerator
        doc["betti"] = [[j, c] for j, c in betti.items_sorted()]
    if args.format == "csv":
        _emit(_sample_rows(model, grid), args.out)
        print(json.dumps(doc), file=sys.stderr)
    else:
        doc["samples"] = [
            {
                "y_re": _f(y.real),
                "y_im": _f(y.imag),
                "f_re": _f(eval_model(model, y).real),
                "f_im": _f(eval_model(model, y).imag),
            }
            for y in grid
        ]
        _emit([json.dumps(doc, indent=2)], args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    pf = load_problem_file(args.file)
    problem = pf.to_problem()
    model = build_model(args.method, pf, problem, args.hn_json)
    n_max = args.n_max if args.n_max is not None else pf.n_max
    grid = _resolve_grid(args, pf)
    estimates = fp_limit(problem, grid, n_max) if grid else {}
    rows = []
    worst_dev = 0.0
    all_ok = True
    for y, est in estimates.items():
        mval = eval_model(model, y)
        dev = abs(est.value - mval)
        ok = dev <= est.error_bound + _COMPARISON_SLACK
        worst_dev = max(worst_dev, dev)
        all_ok = all_ok and ok
        rows.append((y, est, mval, dev, ok))
    if args.format == "json":
        doc = {
            "method": args.method,
            "n": n_max,
            "points": [
                {
                    "y_re": _f(y.real),
                    "y_im": _f(y.imag),
                    "f_re": _f(est.value.real),
                    "f_im": _f(est.value.imag),
                    "model_re": _f(mval.real),
                    "model_im": _f(mval.imag),
                    "deviation": _f(dev),
                    "bound": _f(est.error_bound),
                    "ok": ok,
                }
                for y, est, mval, dev, ok in rows
            ],
            "max_deviation": _f(worst_dev),
            "pass": all_ok,
        }
        _emit([json.dumps(doc, indent=2)], args.out)
    else:
        lines = ["y_re,y_im,F_re,F_im,model_re,model_im,deviation,bound,ok"]
        for y, est, mval, dev, ok in rows:
            lines.append(
                ",".join(
                    (
                        _fmt(y.real),
                        _fmt(y.imag),
                        _fmt(est.value.real),
                        _fmt(est.value.imag),
                        _fmt(mval.real),
                        _fmt(mval.imag),
                        _fmt(dev),
                        _fmt(est.error_bound),
                        "1" if ok else "0",
                    )
                )
            )
        if args.format == "text":
            lines.append(
                f"max_deviation={_fmt(worst_dev)} result={'PASS' if all_ok else 'FAIL'}"
            )
        _emit(lines, args.out)
    return EXIT_OK if all_ok else EXIT_COMPARISON


def cmd_density(args) -> int:
    pf = load_problem_file(args.file)
    problem = pf.to_problem()
    n = args.n if args.n is not None else pf.n_max
    table = density_table(problem, n)
    grid = _resolve_grid(args, pf)
    q = table.q
    scale = q ** (table.d - 1)
    csv_rows = ["x,g_n_of_x,j,ell_j"]
    for j, ell in table.entries:
        csv_rows.append(
            ",".join((_fmt(j / q), _fmt(float(Fraction(ell, scale))), str(j), str(ell)))
        )

    report = []
    mass = table.mass()
    zero_gap = mass - hk_multiplicity(problem, n)
    report.append(f"gn_hat_zero={_frac(mass)} F_n_zero={_frac(hk_multiplicity(problem, n))} equal={zero_gap == 0}")
    worst = 0.0
    for y in grid:
        if y == 0:
            continue
        gap = abs(gn_fourier_exact(problem, n, y) - quadrature_fourier(table, y))
        worst = max(worst, gap)
        report.append(f"y={_fmt(y.real)}+{_fmt(y.imag)}i bridge_gap={_fmt(gap)}")
    report.append(f"max_bridge_gap={_fmt(worst)}")

    if args.format == "json":
        doc = {
            "n": n,
            "d": table.d,
            "rows": [
                {"x": _f(j / q), "g": _f(Fraction(ell, scale)), "j": j, "ell": str(ell)}
                for j, ell in table.entries
            ],
            "gn_hat_zero": _frac(mass),
            "max_bridge_gap": _f(worst),
        }
        _emit([json.dumps(doc, indent=2)], args.out)
        return EXIT_OK
    if args.out is not None:
        _emit(csv_rows, args.out)
        for line in report:
            print(line)
    else:
        _emit(csv_rows, None)
        for line in report:
            print(line, file=sys.stderr)
    return EXIT_OK


def cmd_selftest(args) -> int:
    try:
        results = run_all(quick=args.quick)
    except SelfCheckFailure as exc:
        print(f"FAIL {exc}")
        return EXIT_INVARIANT
    for name, count in results:
        print(f"ok {name} ({count} checks)")
    return EXIT_OK


# -- entry point --------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fpfun",
        description=(
            "Frobenius-Poincare functions of graded rings over prime fields: "
            "exact length tables, limits with error bounds, closed-form models, "
            "and Hilbert-Kunz density data."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_flag=False, n_max_flag=False, method_flag=False):
        p.add_argument("--file", required=True, help="problem file (JSON)")
        if n_flag:
            p.add_argument("--n", type=int, default=None, help="level n (default: options.n_max)")
        if n_max_flag:
            p.add_argument(
                "--n-max", dest="n_max", type=int, default=None,
                help="largest level used for the limit estimate",
            )
        if method_flag:
            p.add_argument(
                "--method", required=True, choices=("hsop", "dim1", "finite-pd", "hn")
            )
            p.add_argument("--hn-json", dest="hn_json", default=None,
                           help="Harder-Narasimhan data as JSON (method hn)")
        p.add_argument("--y-grid", dest="y_grid", default=None,
                       help="JSON y grid or lo:hi:count shorthand")
        p.add_argument("--out", default=None, help="write the main output to this file")

    p_hk = sub.add_parser("hk", help="Hilbert-Kunz multiplicities across levels 0..n")
    common(p_hk, n_flag=True)
    p_hk.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_hk.set_defaults(func=cmd_hk)

    p_eval = sub.add_parser("eval", help="evaluate the level-n_max function on a grid")
    common(p_eval, n_max_flag=True)
    p_eval.add_argument("--format", choices=("csv", "json"), default="csv")
    p_eval.set_defaults(func=cmd_eval)

    p_closed = sub.add_parser("closed", help="construct a closed-form model and sample it")
    common(p_closed, method_flag=True)
    p_closed.add_argument("--format", choices=("csv", "json"), default="json")
    p_closed.set_defaults(func=cmd_closed)

    p_cmp = sub.add_parser("compare", help="compare the limit estimate against a model")
    common(p_cmp, n_max_flag=True, method_flag=True)
    p_cmp.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_cmp.set_defaults(func=cmd_compare)

    p_den = sub.add_parser("density", help="density samples and the Fourier bridge check")
    common(p_den, n_flag=True)
    p_den.add_argument("--format", choices=("csv", "json"), default="csv")
    p_den.set_defaults(func=cmd_density)

    p_self = sub.add_parser("selftest", help="run the property and oracle suites")
    p_self.add_argument("--quick", action="store_true", help="smaller random campaigns")
    p_self.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (
        ColengthError,
        StructureError,
        EvaluationDomainError,
        InexactDivisionError,
        ModelConstructionError,
        SelfCheckFailure,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


def run():
    sys.exit(main())
