"""Command-line entry point: ``charsumlab <subcommand> ...``.

Exit codes: 0 success, 1 internal error, 2 validation or hypothesis failure
(including a verification row that fails), 3 scale refusal, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import harness
from .charsum import UnionOfIntervals, interval_sum, union_sum
from .congruence import ResidueSet, count_N_bruteforce, count_N_fast
from .dirichlet import build_character, chi_eval, conductor, quadratic_character
from .errors import CharsumError, ScaleError

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_SCALE, EXIT_USAGE = 0, 1, 2, 3, 64

log = logging.getLogger("charsumlab")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _pairs(text: str) -> list[tuple[int, int]]:
    try:
        return [tuple(int(v) for v in item.split(":")) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b pairs, got {text!r}")


def _read_set(args) -> list[int]:
    if args.set_file:
        try:
            lines = Path(args.set_file).read_text().split()
        except OSError as e:
            raise UsageError(f"cannot read set file {args.set_file}: {e.strerror}")
        values = [int(x) for x in lines]
    else:
        values = args.set
    if len(set(values)) != len(values):
        raise UsageError("duplicate residues in --set")
    return values


def _character(args):
    if args.quadratic:
        return quadratic_character(args.q)
    if args.exponents is None:
        raise UsageError("give --quadratic or --exponents")
    return build_character(args.q, args.exponents)


def _fmt(v) -> str:
    if isinstance(v, complex):
        return f"{v.real:.12g}{v.imag:+.12g}j"
    return str(v)


# -------------------------------------------------------------------------


def cmd_char(args) -> int:
    chi = _character(args)
    print(f"q={chi.q} mode={chi.mode} order={chi.order} conductor={conductor(chi)} "
          f"primitive={conductor(chi) == chi.q} principal={chi.principal}")
    for n in args.n or []:
        v = chi_eval(chi, n)
        if isinstance(v, int):
            print(f"chi({n}) = 0")
        elif chi.is_real:
            print(f"chi({n}) = {round(v.value.real)}")
        else:
            print(f"chi({n}) = e({v.numerator}/{v.denominator}) = {_fmt(v.value)}")
    return EXIT_OK


def cmd_sum(args) -> int:
    chi = _character(args)
    if args.union:
        value = union_sum(chi, UnionOfIntervals(chi.q, tuple(args.union)))
    else:
        if args.start is None or args.length is None:
            raise UsageError("give --from and --len, or --union")
        value = interval_sum(chi, args.start, args.length)
    print(_fmt(value))
    return EXIT_OK


def cmd_count_n(args) -> int:
    S = ResidueSet.of(args.l, _read_set(args))
    res = count_N_bruteforce(args.l, S, args.n) if args.oracle else count_N_fast(args.l, S, args.n)
    print(res.N)
    return EXIT_OK


def cmd_extremal(args) -> int:
    rows = harness.run_extremal(args.l, args.pairs, oracle=args.oracle)
    _emit(rows, args)
    return _status(rows)


_CFG_FLAGS = {
    "q_list": "q", "l_list": "l", "n_list": "n", "set_sizes": "sizes", "set_family": "family",
    "H": "H", "H_pow": "H_pow", "H_mul": "H_mul", "H_offset": "H_offset", "r": "r", "J": "J",
    "J_frac": "J_frac", "points_scheme": "scheme", "s": "s", "length_pow": "length_pow",
    "trials": "trials", "P": "P", "seed": "seed", "epsilon": "epsilon", "C": "C",
    "timing": "timing", "chain": "chain",
}


def _config(args, campaign: str) -> harness.ExperimentConfig:
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except OSError as e:
            raise UsageError(f"cannot read config {args.config}: {e.strerror}")
        except json.JSONDecodeError as e:
            raise UsageError(f"config {args.config} is not valid JSON: {e}")
        if not isinstance(data, dict):
            raise UsageError(f"config {args.config} must hold a JSON object")
        data.setdefault("campaign", campaign)
        if data["campaign"] != campaign:
            raise UsageError(f"config is for campaign {data['campaign']!r}, not {campaign!r}")
    else:
        data = {"campaign": campaign}
    for field, flag in _CFG_FLAGS.items():
        v = getattr(args, flag, None)
        if v is not None:
            data[field] = v
    return harness.ExperimentConfig.from_dict(data)


def _emit(rows, args, certs=None) -> None:
    text = harness.render_report(rows, args.format)
    if args.out:
        harness.write_report(rows, args.out, args.format)
        if certs is not None and args.certificates:
            Path(args.certificates).write_text(
                json.dumps([c.to_dict() for c in certs], indent=2) + "\n")
    else:
        sys.stdout.write(text)
    for row in rows:
        log.debug("row %s q=%s l=%s pass=%s %s", row.campaign, row.q, row.l, row.passed, row.reason)


def _status(rows) -> int:
    return EXIT_INVALID if any(r.passed is False for r in rows) else EXIT_OK


def _campaign_cmd(campaign: str):
    def run(args) -> int:
        cfg = _config(args, campaign)
        result = harness.run_campaign(cfg)
        if campaign == "corollary":
            rows, certs = result
        else:
            rows, certs = result, None
        _emit(rows, args, certs)
        return _status(rows)
    return run


# -------------------------------------------------------------------------


def _character_flags(p):
    p.add_argument("--q", type=int, required=True, help="modulus")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--quadratic", action="store_true", help="Jacobi-symbol character (n/q)")
    g.add_argument("--exponents", type=_int_list, help="generator exponents, comma-separated")


def _output_flags(p):
    p.add_argument("--out", help="report path (stdout when omitted)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="charsumlab", description=__doc__.splitlines()[0])
    parser.add_argument("--verbose", "-v", action="store_true", help="log one line per row")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("char", help="evaluate and classify a character")
    _character_flags(p)
    p.add_argument("--n", type=_int_list, help="arguments to evaluate at")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("sum", help="character sum over an interval or a union")
    _character_flags(p)
    p.add_argument("--from", dest="start", type=int, help="N in (N, N+len]")
    p.add_argument("--len", dest="length", type=int)
    p.add_argument("--union", type=_pairs, help="N:L,N:L,... intervals (N, N+L]")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("count-n", help="N(l, S, n)")
    p.add_argument("--l", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--set", type=_int_list)
    g.add_argument("--set-file", help="file with one residue per line")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="force brute-force enumeration")
    p.set_defaults(func=cmd_count_n)

    p = sub.add_parser("extremal", help="sharpness sweep over S = {1..m}")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--pairs", type=_pairs, required=True, help="n:m,n:m,...")
    p.add_argument("--oracle", action="store_true", help="cross-check every count by brute force")
    _output_flags(p)
    p.set_defaults(func=cmd_extremal)

    for campaign in harness.CAMPAIGNS:
        name = "verify-" + {"proposition": "prop"}.get(campaign, campaign)
        p = sub.add_parser(name, help=f"run the {campaign} campaign")
        p.add_argument("--config", help="JSON file with ExperimentConfig fields")
        _output_flags(p)
        p.add_argument("--seed", type=int)
        p.add_argument("--timing", action="store_true", default=None, help="record millis per row")
        p.add_argument("--epsilon", type=float)
        p.add_argument("--C", type=float)
        p.add_argument("--r", type=int)
        if campaign == "proposition":
            p.add_argument("--l", type=_int_list)
            p.add_argument("--n", type=_int_list)
            p.add_argument("--sizes", type=_int_list)
            p.add_argument("--family", choices=harness.SET_FAMILIES)
            p.add_argument("--no-chain", dest="chain", action="store_false", default=None)
        else:
            p.add_argument("--q", type=_int_list)
            p.add_argument("--H", type=int)
            p.add_argument("--H-pow", type=float)
            p.add_argument("--H-mul", type=float)
            p.add_argument("--H-offset", type=int)
            p.add_argument("--J", type=int)
            p.add_argument("--J-frac", type=float)
            p.add_argument("--scheme", choices=("uniform", "random"))
        if campaign == "corollary":
            p.add_argument("--s", type=int)
            p.add_argument("--length-pow", type=float)
            p.add_argument("--trials", type=int)
            p.add_argument("--certificates", help="also write certificates as JSON here")
        if campaign == "reduction":
            p.add_argument("--P", type=int)
        p.set_defaults(func=_campaign_cmd(campaign))
    return parser


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
        return args.func(args)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except ScaleError as e:
        print(f"scale refused: {e}", file=sys.stderr)
        return EXIT_SCALE
    except CharsumError as e:
        print(f"invalid: {e}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as e:  # noqa: BLE001 - top-level boundary
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
