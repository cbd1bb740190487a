"""Command-line front end: generate bitstreams, run analyses, run the
statistical battery. The only module that performs I/O.

Exit codes: 0 success / battery pass, 1 usage error, 2 battery threshold
failure. Every run echoes its effective parameters to stderr so exported
streams are self-describing. No environment variable affects output
(BEXP_NUMBA only selects the kernel implementation, which is bit-identical).
"""

import argparse
import csv
import math
import sys

import numpy as np

from . import _accel, beach, dynamics, formats, statsuite

# Battery pass thresholds, evaluated on the 1-bit report (pi from bytes).
PASS_ENTROPY_PER_BIT = 0.9999
PASS_CHI_PCT = (1.0, 99.0)
PASS_MEAN_TOL = 0.001
PASS_PI_ERR_PCT = 0.5
PASS_SERIAL = 1e-3


class _CliUsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        raise _CliUsageError(message)


def _parse_seed(text: str) -> float:
    """Seeds accepted as decimal or hexadecimal float literals; the hex form
    is authoritative for cross-platform reproducibility."""
    try:
        if "x" in text.lower():
            return float.fromhex(text)
        return float(text)
    except ValueError:
        raise _CliUsageError(f"cannot parse seed {text!r} as a float literal") from None


def _parse_b_grid(text: str) -> list:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise _CliUsageError(f"cannot parse grid {text!r}") from None


def _echo(args_desc: str):
    print(f"bexp: {args_desc} kernel={'jit' if _accel.USING_NUMBA else 'python'}",
          file=sys.stderr)


def _config_desc(cfg: beach.BeachConfig) -> str:
    return (f"seed={cfg.seed!r} ({cfg.seed.hex()}) r={cfg.r} "
            f"blimit={cfg.blimit!r} eps={cfg.zero_trap_eps!r} "
            f"bits_per_block={cfg.bits_per_block}")


def _beach_config(args) -> beach.BeachConfig:
    try:
        return beach.BeachConfig(
            seed=_parse_seed(args.seed),
            r=args.r,
            blimit=args.blimit,
            zero_trap_eps=args.eps,
            bits_per_block=args.bits_per_block,
        )
    except ValueError as exc:
        raise _CliUsageError(str(exc)) from None


def _add_beach_flags(p):
    p.add_argument("--seed", required=True, help="generator seed in (0,1), "
                   "decimal or hex float literal (0.75 is disallowed)")
    p.add_argument("--r", type=int, default=20, help="inner iterations per block")
    p.add_argument("--blimit", type=float, default=10_000.0,
                   help="upper limit of the hop parameter")
    p.add_argument("--eps", type=float, default=1e-12,
                   help="zero-trap band half-width")
    p.add_argument("--bits-per-block", type=int, default=32, dest="bits_per_block",
                   help="low-order bits emitted per block (1..52)")


# -- generate -----------------------------------------------------------------

def cmd_generate(args) -> int:
    if args.bits < 1:
        raise _CliUsageError("--bits must be >= 1")
    cfg = _beach_config(args)
    fmt = formats.OutputFormat(args.format)
    _echo(f"generate {_config_desc(cfg)} bits={args.bits} format={fmt.value} "
          f"out={args.out}")
    state = beach.new_generator(cfg)
    bits = beach.fill_bits(state, args.bits)
    payload = formats.encode(bits, fmt)
    try:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    except OSError as exc:
        raise _CliUsageError(f"cannot write {args.out!r}: {exc}") from None
    return 0


# -- analyze ------------------------------------------------------------------

def _write_csv(path, header, rows):
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise _CliUsageError(f"cannot write {path!r}: {exc}") from None


def _analysis_b_grid(args) -> list:
    if args.b_grid:
        return _parse_b_grid(args.b_grid)
    if args.b_start is None or args.b_end is None:
        raise _CliUsageError("provide --b-grid or --b-start/--b-end/--b-steps")
    return [float(v) for v in np.linspace(args.b_start, args.b_end, args.b_steps)]


def cmd_analyze(args) -> int:
    kind = args.kind
    _echo(f"analyze {kind} out={args.out}")
    try:
        if kind == "lyapunov":
            rows = []
            for b in _analysis_b_grid(args):
                est = dynamics.lyapunov(b, args.x0, args.iterations, args.transient)
                rows.append([est.b, est.exponent, est.iterations])
            _write_csv(args.out, ["b", "lambda", "iterations"], rows)

        elif kind == "bifurcation":
            if args.b_start is None or args.b_end is None:
                raise _CliUsageError("bifurcation needs --b-start and --b-end")
            points = dynamics.bifurcation_scan(
                args.b_start, args.b_end, args.b_steps,
                transient=args.transient, keep=args.keep,
                x0=args.x0, map_kind=args.map)
            rows = [[p.b, x] for p in points for x in p.attractor_samples]
            _write_csv(args.out, ["b", "x"], rows)

        elif kind == "schwarzian":
            rows = []
            xs = np.linspace(0.0, 1.0, args.x_steps)
            for b in _analysis_b_grid(args):
                for x in xs:
                    if abs(x - 0.5) < 0.01:
                        continue
                    rows.append([b, float(x), dynamics.schwarzian(b, float(x))])
            _write_csv(args.out, ["b", "x", "s"], rows)

        elif kind == "return-map":
            if args.b is None:
                raise _CliUsageError("return-map needs --b")
            pairs = dynamics.return_map(args.b, args.x0, args.k, args.length,
                                        transient=args.transient)
            _write_csv(args.out, ["x", "x_after_k"],
                       [[float(a), float(c)] for a, c in pairs])

        elif kind == "orbit":
            if args.b is None:
                raise _CliUsageError("orbit needs --b")
            sample = dynamics.orbit(args.map, args.b, args.x0, args.length,
                                    transient=args.transient)
            _write_csv(args.out, ["n", "x"],
                       list(enumerate(float(v) for v in sample.values)))

        else:  # pragma: no cover - argparse restricts choices
            raise _CliUsageError(f"unknown analysis {kind!r}")
    except (ValueError, RuntimeError, FloatingPointError) as exc:
        raise _CliUsageError(str(exc)) from None
    return 0


# -- test ---------------------------------------------------------------------

def battery_passes(report_1bit: statsuite.EntReport) -> bool:
    """Desk-scale pass rule on the 1-bit report."""
    scc = report_1bit.serial_correlation
    return (report_1bit.entropy_per_word >= PASS_ENTROPY_PER_BIT
            and PASS_CHI_PCT[0] < report_1bit.chi_square_pct < PASS_CHI_PCT[1]
            and abs(report_1bit.mean - 0.5) < PASS_MEAN_TOL
            and report_1bit.pi_error_pct < PASS_PI_ERR_PCT
            and not math.isnan(scc) and abs(scc) < PASS_SERIAL)


def cmd_test(args) -> int:
    if args.infile is not None:
        try:
            with open(args.infile, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise _CliUsageError(f"cannot read {args.infile!r}: {exc}") from None
        _echo(f"test in={args.infile} n_bytes={len(data)}")
    elif args.seed is not None:
        if args.bits < 2560 * 8:
            raise _CliUsageError("--bits must be >= 20480 for the battery")
        cfg = _beach_config(args)
        _echo(f"test generated {_config_desc(cfg)} bits={args.bits}")
        state = beach.new_generator(cfg)
        data = formats.encode_raw(beach.fill_bits(state, args.bits))
    else:
        raise _CliUsageError("provide an input file or --seed/--bits")

    try:
        report_bit, report_byte = statsuite.run_battery(data)
    except ValueError as exc:
        raise _CliUsageError(str(exc)) from None

    render = statsuite.report_machine if args.machine else statsuite.report_text
    sys.stdout.write(render(report_bit))
    sys.stdout.write("\n")
    sys.stdout.write(render(report_byte))
    passed = battery_passes(report_bit)
    if args.machine:
        print(f"\npass={int(passed)}")
    else:
        print(f"\nresult: {'PASS' if passed else 'FAIL'}")
    return 0 if passed else 2


# -- wiring -------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="bexp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write a bitstream to a file")
    _add_beach_flags(p_gen)
    p_gen.add_argument("--bits", type=int, required=True,
                       help="number of bits to generate")
    p_gen.add_argument("--format", choices=[f.value for f in formats.OutputFormat],
                       default="raw")
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_generate)

    p_an = sub.add_parser("analyze", help="run a dynamics analysis, write CSV")
    p_an.add_argument("kind", choices=["lyapunov", "bifurcation", "schwarzian",
                                       "return-map", "orbit"])
    p_an.add_argument("--b", type=float, default=None)
    p_an.add_argument("--b-grid", dest="b_grid", default=None,
                      help="comma-separated explicit parameter values")
    p_an.add_argument("--b-start", dest="b_start", type=float, default=None)
    p_an.add_argument("--b-end", dest="b_end", type=float, default=None)
    p_an.add_argument("--b-steps", dest="b_steps", type=int, default=100)
    p_an.add_argument("--x0", type=float, default=0.3)
    p_an.add_argument("--x-steps", dest="x_steps", type=int, default=101)
    p_an.add_argument("--length", type=int, default=1000,
                      help="orbit length / return-map pair count")
    p_an.add_argument("--keep", type=int, default=200)
    p_an.add_argument("--k", type=int, default=1)
    p_an.add_argument("--transient", type=int, default=1000)
    p_an.add_argument("--iterations", type=int, default=10_000)
    p_an.add_argument("--map", choices=["gl", "numerator", "gt"], default="gl")
    p_an.add_argument("--out", required=True)
    p_an.set_defaults(func=cmd_analyze)

    p_test = sub.add_parser("test", help="run the statistical battery")
    p_test.add_argument("--in", dest="infile", default=None,
                        help="raw byte file to test")
    p_test.add_argument("--seed", default=None,
                        help="generate the input instead of reading a file")
    p_test.add_argument("--bits", type=int, default=10_000_000)
    p_test.add_argument("--r", type=int, default=20)
    p_test.add_argument("--blimit", type=float, default=10_000.0)
    p_test.add_argument("--eps", type=float, default=1e-12)
    p_test.add_argument("--bits-per-block", type=int, default=32,
                        dest="bits_per_block")
    p_test.add_argument("--machine", action="store_true",
                        help="line-oriented metric=value output")
    p_test.set_defaults(func=cmd_test)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _CliUsageError as exc:
        print(f"bexp: error: {exc}", file=sys.stderr)
        return 1


def entry():  # console-script hook
    sys.exit(main())


if __name__ == "__main__":
    entry()
