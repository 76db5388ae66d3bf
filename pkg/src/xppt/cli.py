"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

Options may also come from a ``key=value`` file given with ``--config``;
flags on the command line win. Relative ``--output`` paths are resolved
against ``$XPPT_OUTPUT_DIR`` when it is set.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from decimal import Context
from fractions import Fraction
from pathlib import Path

from . import analytic
from .montecarlo import estimate, estimates_to_csv
from .ptstructure import classify
from .sampler import SampleConfig, dump_samples
from .verify import run_verification
from .xstate import Dims, DomainError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
Z_FAIL = 4.0
OUTPUT_DIR_ENV = "XPPT_OUTPUT_DIR"
TABLE_COLUMNS = ("m", "n", "A", "B", "C", "ratio_exact", "ratio_decimal", "Vx_coeff", "Vx_pi_power")


class UsageError(Exception):
    pass


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _sig17(x: Fraction) -> str:
    ctx = Context(prec=17)
    return str(ctx.divide(ctx.create_decimal(x.numerator), ctx.create_decimal(x.denominator)))


def read_config(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def _resolve_output(path: str | None) -> Path | None:
    if path is None or path == "-":
        return None
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(text: str, output: str | None):
    target = _resolve_output(output)
    if target is None:
        sys.stdout.write(text)
        return
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text)


def _dims(args) -> Dims:
    return Dims(args.m, args.n)


def cmd_ratio(args) -> int:
    r = analytic.ratio(_dims(args))
    if args.format == "json":
        text = json.dumps({"m": args.m, "n": args.n, "ratio": _frac(r),
                           "decimal": analytic.fixed_decimal(r)}) + "\n"
    elif args.format == "csv":
        text = f"m,n,ratio_exact,ratio_decimal\n{args.m},{args.n},{_frac(r)},{analytic.fixed_decimal(r)}\n"
    else:
        text = f"{_frac(r)} = {analytic.fixed_decimal(r)}\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_volume(args) -> int:
    dims = _dims(args)
    vx, vp = analytic.volume_x(dims), analytic.volume_ppt(dims)
    if args.format == "json":
        text = json.dumps({
            "m": dims.m, "n": dims.n,
            "volume_x": {"coeff": _frac(vx.coeff), "pi_power": vx.pi_power,
                         "decimal": vx.to_decimal_string()},
            "volume_ppt": {"coeff": _frac(vp.coeff), "pi_power": vp.pi_power,
                           "decimal": vp.to_decimal_string()},
        }) + "\n"
    elif args.format == "csv":
        text = ("m,n,kind,coeff,pi_power,decimal\n"
                f"{dims.m},{dims.n},x,{_frac(vx.coeff)},{vx.pi_power},{vx.to_decimal_string()}\n"
                f"{dims.m},{dims.n},ppt,{_frac(vp.coeff)},{vp.pi_power},{vp.to_decimal_string()}\n")
    else:
        text = (f"V_X   = {vx} = {vx.to_decimal_string()}\n"
                f"V_PPT = {vp} = {vp.to_decimal_string()}\n")
    _emit(text, args.output)
    return EXIT_OK


def cmd_classify(args) -> int:
    cls = classify(_dims(args))
    if args.format == "json":
        text = cls.to_json() + "\n"
    else:
        lines = [f"m={cls.dims.m} n={cls.dims.n} A={cls.A} B={cls.B} C={cls.C}"]
        lines += [f"quadruple {q}" for q in cls.quadruples]
        lines += [f"fixed_pair {p}" for p in cls.fixed_pairs]
        if cls.center is not None:
            lines.append(f"center {cls.center}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_estimate(args) -> int:
    if args.samples < 2:
        raise DomainError(f"--samples must be >= 2, got {args.samples}")
    est = estimate(SampleConfig(_dims(args), args.seed, args.samples), args.method, args.workers)
    if args.format == "csv":
        text = estimates_to_csv([est])
    elif args.format == "json":
        text = json.dumps(est.to_dict()) + "\n"
    else:
        status = "PASS" if est.passed(Z_FAIL) else "FAIL"
        text = (f"m={est.dims.m} n={est.dims.n} method={est.method.value} count={est.count} "
                f"seed={est.seed} mean={est.mean!r} std_error={est.std_error!r} "
                f"analytic={est.analytic_value!r} z={est.z_score!r} {status}\n")
    _emit(text, args.output)
    return EXIT_OK if est.passed(Z_FAIL) else EXIT_FAIL


def table_rows(max_m: int, max_n: int) -> list[list]:
    rows = []
    for m in range(2, max_m + 1):
        for n in range(2, max_n + 1):
            dims = Dims(m, n)
            cls = classify(dims)
            r = analytic.ratio(dims)
            vx = analytic.volume_x(dims)
            rows.append([m, n, cls.A, cls.B, cls.C, _frac(r), _sig17(r), _frac(vx.coeff), vx.pi_power])
    return rows


def cmd_table(args) -> int:
    if args.max_m < 2 or args.max_n < 2:
        raise DomainError("--max-m and --max-n must be >= 2")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    writer.writerows(table_rows(args.max_m, args.max_n))
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = run_verification(states=args.states, inject_fault=args.inject_fault)
    failed = [c for c in checks if not c.passed]
    lines = [c.line() for c in checks]
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_dump_samples(args) -> int:
    cfg = SampleConfig(_dims(args), args.seed, args.samples)
    target = _resolve_output(args.output)
    if target is None:
        dump_samples(cfg, sys.stdout)
    else:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w") as fh:
            dump_samples(cfg, fh)
    return EXIT_OK


def _seed(value: str) -> int:
    seed = int(value, 0)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return seed


def _positive(value: str) -> int:
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xppt", description="Hilbert-Schmidt volumes of PPT X-states.")
    parser.add_argument("--config", help="key=value file with default option values")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, dims=True, fmt=("text", "csv", "json")):
        if dims:
            p.add_argument("m", type=int)
            p.add_argument("n", type=int)
        p.add_argument("--format", dest="format", choices=fmt, default=fmt[0])
        p.add_argument("--output", "-o", default=None, help="file path, '-' for stdout")

    p = sub.add_parser("ratio", help="exact PPT volume ratio")
    common(p)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("volume", help="exact X-state and PPT volumes")
    common(p)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("classify", help="partial-transpose pair structure")
    common(p, fmt=("text", "json"))
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("estimate", help="Monte Carlo estimate of the ratio")
    common(p)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--method", choices=("rb", "rao_blackwell", "naive"), default="rb")
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("table", help="CSV of counts, ratios and volumes")
    common(p, dims=False, fmt=("csv",))
    p.add_argument("--max-m", type=int, default=12)
    p.add_argument("--max-n", type=int, default=12)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run the oracle consistency suite")
    common(p, dims=False, fmt=("text",))
    p.add_argument("--states", type=_positive, default=1000)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump-samples", help="write sampled states as JSON lines")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--samples", type=_positive, default=1000)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_dump_samples)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config(known.config)
    for action in parser._subparsers._group_actions:
        for subparser in action.choices.values():
            dests = {a.dest for a in subparser._actions}
            subparser.set_defaults(**{k: v for k, v in values.items() if k in dests})


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
