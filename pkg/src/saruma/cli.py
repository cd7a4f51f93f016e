"""Command-line interface.

JSON arguments may be given inline or as a path to a JSON file; when the
argument is omitted the JSON document is read from stdin.  Results go to
stdout unless ``--out`` names a file.  Exit codes: 0 success, 1 domain
error (JSON on stderr), 2 usage error.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from saruma import __version__
from saruma.errors import SarumaError
from saruma.fit import FitOptions, FitTemplate, fit
from saruma.model import ExpandedModel, SarumaSpec, expand, validate
from saruma.pacf import PacfSeq, coeffs_to_pacf, factor_pacf, pacf_to_coeffs
from saruma.poly import DEFAULT_TOL, FilterPoly
from saruma.rootloc import count_inside
from saruma.series import TimeSeries, read_csv, residuals, simulate_with_innovations, write_csv


class UsageError(Exception):
    pass


def _load_json(arg, stdin):
    if arg is None:
        text = stdin.read()
    else:
        path = Path(arg)
        text = path.read_text() if not arg.lstrip().startswith(("{", "[")) and path.exists() else arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None


def _model(doc):
    if "ar_full" in doc:
        return ExpandedModel.from_dict(doc)
    return expand(SarumaSpec.from_dict(doc))


def _emit(obj, out):
    text = json.dumps(obj)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_pacf2ar(args, stdin):
    b = PacfSeq.from_dict(_load_json(args.pacf, stdin))
    return pacf_to_coeffs(b).to_list()


def cmd_ar2pacf(args, stdin):
    p = FilterPoly(_load_json(args.poly, stdin))
    return coeffs_to_pacf(p).to_dict()


def cmd_factor(args, stdin):
    b = PacfSeq.from_dict(_load_json(args.pacf, stdin))
    return factor_pacf(b, args.tol).to_dict()


def cmd_count_roots(args, stdin):
    b = PacfSeq.from_dict(_load_json(args.pacf, stdin))
    return count_inside(b).to_dict()


def cmd_expand(args, stdin):
    return expand(SarumaSpec.from_dict(_load_json(args.spec, stdin))).to_dict()


def cmd_validate(args, stdin):
    violations = validate(SarumaSpec.from_dict(_load_json(args.spec, stdin)))
    return {"valid": not violations, "violations": [v.to_dict() for v in violations]}


def cmd_simulate(args, stdin):
    doc = _load_json(args.spec, stdin)
    model = _model(doc)
    sigma = args.sigma if args.sigma is not None else float(np.sqrt(doc.get("sigma2", 1.0)))
    y, eps = simulate_with_innovations(model, args.T, sigma, args.seed, args.burn_in)
    if args.innovations_out:
        write_csv(TimeSeries(eps), args.innovations_out)
    if args.out:
        write_csv(y, args.out)
        return None
    return [float(v) for v in y.values]


def cmd_residuals(args, stdin):
    model = _model(_load_json(args.spec, stdin))
    return residuals(model, read_csv(args.data)).to_dict()


def cmd_fit(args, stdin):
    doc = _load_json(args.template, stdin)
    data = read_csv(args.data) if args.data else None
    if data is None and "data" not in doc:
        raise UsageError("fit needs --data or a 'data' field in the template")
    template = FitTemplate.from_dict(doc, data=data)
    opts = FitOptions(
        max_iter=args.max_iter, tol=args.tol, multistarts=args.multistarts, seed=args.seed
    )
    return fit(template, opts).to_dict()


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="numerical tolerance")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--max-iter", type=int, default=2000, help="optimiser iteration cap")
    common.add_argument("--multistarts", type=int, default=5, help="optimiser starts")
    common.add_argument("--out", help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(prog="saruma", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    add("pacf2ar", cmd_pacf2ar, "partial autocorrelations to filter coefficients").add_argument(
        "--pacf", help='{"values": [...], "unit_pins": [...]}'
    )
    add("ar2pacf", cmd_ar2pacf, "filter coefficients to partial autocorrelations").add_argument(
        "--poly", help="[1, c1, ..., cn]"
    )
    add("factor", cmd_factor, "split a PACF sequence at its unit pins").add_argument("--pacf")
    add("count-roots", cmd_count_roots, "count zeros inside the unit circle").add_argument("--pacf")
    add("expand", cmd_expand, "multiply out a SARUMA spec").add_argument("--spec")
    add("validate", cmd_validate, "check SARUMA spec constraints").add_argument("--spec")

    p = add("simulate", cmd_simulate, "simulate a series from a spec or expanded model")
    p.add_argument("--spec")
    p.add_argument("-T", type=int, required=True, help="number of values kept")
    p.add_argument("--sigma", type=float, help="innovation sd (default sqrt(sigma2))")
    p.add_argument("--burn-in", type=int, default=0)
    p.add_argument("--innovations-out", help="CSV file for the post burn-in innovations")

    p = add("residuals", cmd_residuals, "conditional residuals of a model on data")
    p.add_argument("--spec")
    p.add_argument("--data", required=True, help="CSV series")

    p = add("fit", cmd_fit, "CSS fit in partial autocorrelation space")
    p.add_argument("--template")
    p.add_argument("--data", help="CSV series (overrides template data)")
    return parser


def main(argv=None, stdin=None):
    stdin = stdin if stdin is not None else sys.stdin
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args, stdin)
    except UsageError as exc:
        parser.error(str(exc))
    except SarumaError as exc:
        print(json.dumps(exc.details()), file=sys.stderr)
        return 1
    except (ValueError, OverflowError, KeyError, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    if result is not None:
        _emit(result, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
