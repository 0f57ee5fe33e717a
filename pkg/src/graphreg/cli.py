"""Command-line front end.

Thin client over the library operations; all heavy lifting lives in the
core modules and is shared with the HTTP service.  Exit codes partition
outcomes: 0 positive (regular / witness found / accepted), 1 negative
(refuted / avoided / rejected), 2 usage or parse error, 3 unknown.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import ops
from .ratmath import IntMatrix, MatrixParseError
from .serialize import certificate_from_json

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3


def _emit(data: dict, fmt: str, human: str) -> None:
    if fmt == "json":
        sys.stdout.write(
            json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write(human + "\n")


def _load_matrix(path: str) -> IntMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return IntMatrix.from_text(fh.read())


def _load_certificate(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return certificate_from_json(json.load(fh))


def _cert_summary(data: Optional[dict]) -> str:
    if not data:
        return "none"
    return f"{data['flavor']} certificate with T={data['T']}"


def cmd_analyze(args) -> int:
    a = _load_matrix(args.matrix)
    out = ops.op_analyze(a, t_max=args.t_max)
    cls = out["classification"]
    human = f"{cls}: {out['evidence']}"
    if out["certificate"]:
        human += f"\ncertificate: {json.dumps(out['certificate'], sort_keys=True)}"
    _emit(out, args.format, human)
    if cls == "graph-regular":
        return EXIT_POSITIVE
    if cls == "not-graph-regular":
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN


def cmd_verify(args) -> int:
    a = _load_matrix(args.matrix)
    cert = _load_certificate(args.certificate)
    out = ops.op_verify(a, cert, args.flavor)
    if out["accepted"]:
        _emit(out, args.format, f"accepted ({out['flavor']})")
        return EXIT_POSITIVE
    first = out["violations"][0] if out["violations"] else "unknown"
    _emit(out, args.format, f"rejected ({out['flavor']}): {first}")
    return EXIT_NEGATIVE


def cmd_search(args) -> int:
    a = _load_matrix(args.matrix)
    out = ops.op_search(a, args.coloring, args.N, hyper=args.hyper)
    if out["witness"]:
        _emit(out, args.format,
              "witness " + json.dumps(out["witness"], sort_keys=True))
        return EXIT_POSITIVE
    _emit(out, args.format, f"avoided up to N={args.N}")
    return EXIT_NEGATIVE


def cmd_grid(args) -> int:
    a = _load_matrix(args.matrix)
    out = ops.op_grid(a, args.coloring, args.Q, budget=args.budget)
    if out["witness"]:
        _emit(out, args.format,
              "witness " + json.dumps(out["witness"], sort_keys=True))
        return EXIT_POSITIVE
    _emit(out, args.format,
          f"no witness; stage = {out['stage']} ({out['reason']})")
    return EXIT_NEGATIVE


def cmd_reduce(args) -> int:
    a = _load_matrix(args.matrix)
    sigma = None
    if args.sigma:
        sigma = [int(tok) - 1 for tok in args.sigma.split(",")]
    out = ops.op_reduce(a, emit_c=args.emit_c, sigma=sigma)
    if args.emit_c:
        _emit(out, args.format, out["matrix"].rstrip("\n"))
        return EXIT_POSITIVE
    if out["certificate"]:
        _emit(out, args.format,
              "transferred " + _cert_summary(out["certificate"]))
        return EXIT_POSITIVE
    _emit(out, args.format, "no certificate via reduction within limits")
    return EXIT_NEGATIVE


def cmd_color(args) -> int:
    out = ops.op_color(args.coloring, args.points)
    _emit(out, args.format, out["color"])
    return EXIT_POSITIVE


def cmd_threshold(args) -> int:
    a = _load_matrix(args.matrix)
    out = ops.op_threshold(a, args.colors, args.N_max)
    lines = []
    for e in out["entries"]:
        verdict = "forced" if e["forced"] else "not forced"
        lines.append(f"N={e['N']}: {verdict}")
    _emit(out, args.format, "\n".join(lines))
    return EXIT_POSITIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="graphreg",
        description="Decide, certify, and probe graph-regularity of "
                    "homogeneous linear systems under edge colorings.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"),
                        default="human")
    sub = p.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    sp = add_parser("analyze", help="run the screens and classify")
    sp.add_argument("matrix")
    sp.add_argument("--t-max", type=int, default=None, dest="t_max")
    sp.set_defaults(func=cmd_analyze)

    sp = add_parser("verify", help="check a certificate file")
    sp.add_argument("matrix")
    sp.add_argument("certificate")
    sp.add_argument("--flavor", choices=("weak", "strong", "cc"), default=None)
    sp.set_defaults(func=cmd_verify)

    sp = add_parser("search", help="monochromatic witness / avoidance")
    sp.add_argument("matrix")
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--hyper", action="store_true")
    sp.set_defaults(func=cmd_search)

    sp = add_parser("grid", help="constructive grid pipeline")
    sp.add_argument("matrix")
    sp.add_argument("--coloring", required=True)
    sp.add_argument("--Q", type=int, required=True)
    sp.add_argument("--budget", type=int, default=None)
    sp.set_defaults(func=cmd_grid)

    sp = add_parser("reduce", help="pair-matrix reduction certificate")
    sp.add_argument("matrix")
    sp.add_argument("--sigma", default=None,
                    help="comma-separated 1-based permutation")
    sp.add_argument("--emit-c", action="store_true", dest="emit_c")
    sp.set_defaults(func=cmd_reduce)

    sp = add_parser("color", help="evaluate a coloring on points")
    sp.add_argument("--coloring", required=True)
    sp.add_argument("points", nargs="+", type=int)
    sp.set_defaults(func=cmd_color)

    sp = add_parser("threshold", help="exhaustive tiny N_A(r)")
    sp.add_argument("matrix")
    sp.add_argument("--colors", type=int, required=True)
    sp.add_argument("--N-max", type=int, required=True, dest="N_max")
    sp.set_defaults(func=cmd_threshold)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MatrixParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except FileNotFoundError as exc:
        sys.stderr.write(f"no such file: {exc.filename}\n")
        return EXIT_USAGE
    except (ValueError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
