"""Command line entry point.

Subcommands map one-to-one onto the service layer; this module only parses
arguments, reads and writes files, and turns results into text.  Exit codes:
0 success (for verify: the set is a design), 1 verification failure or
infeasible construction, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from pydantic import ValidationError

from .api import schemas, service
from .core import format_float
from .designfile import DesignFileError, dumps
from .verify import DEFAULT_TOLERANCE

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _fail_usage(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _write_text(path: str, text: str) -> None:
    # temp file in the same directory so the final rename is atomic
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _emit(text: str, out: str | None) -> None:
    if out:
        _write_text(out, text)
    else:
        sys.stdout.write(text)


def _load_design_model(path: str) -> schemas.DesignFile:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    model = schemas.DesignFile.model_validate(doc)
    service.design_from_model(model)  # full structural validation up front
    return model


def _parse_index(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad exponent vector {text!r}") from None


def _parse_basis(text: str) -> list[tuple[int, ...]]:
    return [_parse_index(part) for part in text.split(";") if part]


def _parse_group(text: str):
    if text in ("sym", "cyc"):
        return text
    try:
        gens = json.loads(text)
        return schemas.GeneratedGroup(generators=gens)
    except (json.JSONDecodeError, ValidationError):
        raise argparse.ArgumentTypeError(
            f"group must be sym, cyc, or a JSON generator list, got {text!r}") from None


def _scalar_text(v) -> str:
    return format_float(v) if isinstance(v, float) else str(v)


def _reports_csv(reports: list[schemas.MomentReport]) -> str:
    lines = ["index,target,observed,residual,symmetrization"]
    for r in reports:
        lines.append(",".join([
            " ".join(str(i) for i in r.index),
            _scalar_text(r.target),
            _scalar_text(r.observed),
            _scalar_text(r.residual),
            r.symmetrization,
        ]))
    return "\n".join(lines) + "\n"


def _verify_text(resp: schemas.VerifyResponse) -> str:
    lines = [f"method: {resp.method}",
             f"t: {resp.t}",
             f"classification: {resp.classification}",
             f"max |residual|: {format_float(resp.max_abs_residual)}"
             f" (tolerance {format_float(resp.tolerance)})"]
    worst = sorted(resp.reports, key=lambda r: -abs(float(r.residual)))
    for r in worst[:5]:
        lines.append(f"  {tuple(r.index)}: observed {_scalar_text(r.observed)}"
                     f" target {_scalar_text(r.target)}"
                     f" residual {_scalar_text(r.residual)}")
    lines.append("PASS" if resp.is_design else "FAIL")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    try:
        design = _load_design_model(args.design)
    except (OSError, json.JSONDecodeError, ValidationError, DesignFileError) as e:
        return _fail_usage(f"cannot load design file: {e}")
    method = "restricted" if args.restricted is not None else args.method
    try:
        req = schemas.VerifyRequest(design=design, t=args.t, method=method,
                                    restricted=args.restricted,
                                    tolerance=args.tolerance,
                                    canonical_only=args.canonical_only)
        resp = service.run_verify(req)
    except (ValueError, ValidationError) as e:
        return _fail_usage(str(e))
    fmt = args.format or "json"
    if fmt == "json":
        _emit(dumps(resp.model_dump(mode="json")) + "\n", args.out)
    elif fmt == "csv":
        _emit(_reports_csv(resp.reports), args.out)
    elif fmt == "text":
        _emit(_verify_text(resp), args.out)
    else:
        return _fail_usage(f"verify cannot emit {fmt!r}")
    return EXIT_OK if resp.is_design else EXIT_FAIL


def cmd_construct(args) -> int:
    try:
        req = schemas.ConstructRequest(d=args.d, family=args.family,
                                       include_pseudo=args.include_pseudo)
        resp = service.run_construct(req)
    except ValidationError as e:
        return _fail_usage(str(e))
    except (ValueError, ArithmeticError) as e:
        print(f"construction failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    stem = args.family.replace("-", "_")
    files = []
    for i, (sol, design) in enumerate(zip(resp.solutions, resp.designs)):
        tag = "" if sol.proper else "_pseudo"
        path = os.path.join(out_dir, f"{stem}_d{args.d}_{i}{tag}.json")
        _write_text(path, dumps(design.model_dump(mode="json", exclude_none=True)) + "\n")
        files.append(path)
    report = resp.model_dump(mode="json")
    report["files"] = files
    fmt = args.format or "json"
    if fmt != "json":
        return _fail_usage("construct reports are JSON only")
    sys.stdout.write(dumps(report) + "\n")
    return EXIT_OK


def cmd_tables(args) -> int:
    resp = service.run_tables()
    fmt = args.format or "csv"
    if fmt == "csv":
        _emit(resp.csv, args.out)
    elif fmt == "json":
        _emit(dumps(resp.model_dump(mode="json")) + "\n", args.out)
    else:
        return _fail_usage(f"tables cannot emit {fmt!r}")
    return EXIT_OK


def cmd_counterexample(args) -> int:
    resp = service.run_counterexample(args.tolerance)
    fmt = args.format or "text"
    if fmt == "text":
        _emit(resp.text, args.out)
    elif fmt == "json":
        _emit(dumps(resp.model_dump(mode="json")) + "\n", args.out)
    else:
        return _fail_usage(f"counterexample cannot emit {fmt!r}")
    return EXIT_OK


def cmd_span(args) -> int:
    try:
        req = schemas.SpanRequest(d=args.d, group=args.group, k=list(args.k),
                                  basis=[list(b) for b in args.basis],
                                  adjoin_constant=args.adjoin_constant)
        resp = service.run_span(req)
    except (ValueError, ValidationError) as e:
        return _fail_usage(str(e))
    fmt = args.format or "json"
    if fmt == "json":
        _emit(dumps(resp.model_dump(mode="json")) + "\n", args.out)
    elif fmt == "text":
        verdict = "IN SPAN" if resp.in_span else "NOT IN SPAN"
        line = f"F_{resp.group}{tuple(resp.k)}: {verdict}"
        if resp.coefficients is not None:
            line += f"  coefficients {resp.coefficients}"
        _emit(line + "\n", args.out)
    else:
        return _fail_usage(f"span cannot emit {fmt!r}")
    return EXIT_OK


def cmd_plot(args) -> int:
    design = None
    if args.design is not None:
        try:
            design = _load_design_model(args.design)
        except (OSError, json.JSONDecodeError, ValidationError, DesignFileError) as e:
            return _fail_usage(f"cannot load design file: {e}")
    try:
        req = schemas.PlotRequest(design=design, k=list(args.k) if args.k else None,
                                  group=args.group, grid=args.grid,
                                  levels=args.levels)
        svg = service.run_plot(req)
    except (ValueError, ValidationError) as e:
        return _fail_usage(str(e))
    out = args.out or "plot.svg"
    _write_text(out, svg)
    print(out)
    return EXIT_OK


def cmd_serve(args) -> int:
    try:
        import uvicorn
    except ImportError:
        return _fail_usage("serving needs uvicorn (install the 'serve' extra)")
    from .api.app import app
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                        help="residual tolerance for float-mode checks")
    common.add_argument("--format", choices=["json", "csv", "text", "svg"],
                        default=None, help="output format (default per command)")
    common.add_argument("--out", default=None, help="output path")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for any randomized demo")

    parser = argparse.ArgumentParser(
        prog="simplexdesign",
        description="Construct and verify probability-simplex designs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common],
                       help="check a design file against flat-measure moments")
    p.add_argument("--design", required=True, help="design JSON file")
    p.add_argument("--t", type=int, required=True, help="design strength")
    p.add_argument("--method", choices=["brute-force", "power-sum"],
                   default="brute-force")
    p.add_argument("--restricted", type=_parse_group, default=None,
                   metavar="GROUP", help="restrict to GROUP-invariant indices")
    p.add_argument("--canonical-only", action="store_true",
                   help="check non-increasing indices only")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", parents=[common],
                       help="solve a design family and write design files")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--family", choices=["three-value", "uniform-excess"],
                   required=True)
    p.add_argument("--include-pseudo", action="store_true",
                   help="also write improper (pseudodesign) solutions")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("tables", parents=[common],
                       help="tabulate the three-value family solutions")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("counterexample", parents=[common],
                       help="walk through the cyclic-orbit failure and its repair")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("span", parents=[common],
                       help="exact span membership for symmetrized monomials")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--group", type=_parse_group, default="sym")
    p.add_argument("--k", type=_parse_index, required=True,
                   metavar="K", help="candidate exponent vector, e.g. 2,1,0")
    p.add_argument("--basis", type=_parse_basis, required=True,
                   metavar="B", help="semicolon-separated exponent vectors")
    p.add_argument("--adjoin-constant", action="store_true",
                   help="include the homogenized constant in the basis")
    p.set_defaults(func=cmd_span)

    p = sub.add_parser("plot", parents=[common],
                       help="render a barycentric triangle figure (d = 3)")
    p.add_argument("--design", default=None, help="design JSON file to overlay")
    p.add_argument("--k", type=_parse_index, default=None,
                   help="exponent vector to contour")
    p.add_argument("--group", type=_parse_group, default=None,
                   help="symmetrize the contoured monomial over this group")
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--levels", type=int, default=12)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("serve", parents=[common],
                       help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.tolerance <= 0:
        return _fail_usage("tolerance must be positive")
    random.seed(args.seed)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
