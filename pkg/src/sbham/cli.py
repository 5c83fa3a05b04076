"""``sbham`` command line.

Exit codes: 0 success, 1 a checked property fails (invalid certificate,
sign mismatches, no cycle found under --require-cycle), 2 usage error,
3 capacity or I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import core, debruijn, enumeration, necklace, textio
from .errors import CapacityExceeded, CertificateError, CheckpointRejected, FormatError, SBError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


def _range(text):
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("expected LO:HI")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sbham",
        description="Hamiltonian cycles, signs and necklace counts for the digraph SB(m, n).",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("-o", "--output", type=Path, help="write the report here instead of stdout")

    mn = argparse.ArgumentParser(add_help=False)
    mn.add_argument("-m", type=int, required=True, help="alphabet size")
    mn.add_argument("-n", type=int, required=True, help="word length")

    plot = argparse.ArgumentParser(add_help=False)
    plot.add_argument("--plot", type=Path, metavar="PNG", help="also render a figure to this file")

    p = sub.add_parser("verify", parents=[common, mn], help="verify a Hamiltonian-cycle string")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--cycle", help="cycle as one line of digits (0-9, a-z)")
    src.add_argument("--cycle-file", type=Path)
    p.add_argument("--save-choice-set", type=Path, metavar="JSON")

    p = sub.add_parser("necklace", parents=[common, mn], help="necklace count and parity")
    p.add_argument("--bruteforce", action="store_true", help="also count by brute force")

    sub.add_parser("burnside", parents=[common, mn, plot], help="cyclic and dihedral Burnside table")

    p = sub.add_parser("sign", parents=[common, mn], help="sgn(sigma), and sgn(f_S) for a choice set")
    p.add_argument("--choice-set", type=Path, metavar="JSON")

    p = sub.add_parser("verdict", parents=[common, plot], help="sign-obstruction verdict")
    p.add_argument("-m", type=int)
    p.add_argument("-n", type=int)
    p.add_argument("--table", action="store_true", help="verdicts for 2<=m<=M, 1<=n<=N")
    p.add_argument("--m-max", type=int, default=12)
    p.add_argument("--n-max", type=int, default=8)

    p = sub.add_parser("enumerate", parents=[common, mn, plot], help="exhaustive choice-set search")
    p.add_argument("--workers", type=_positive, default=os.cpu_count() or 1)
    p.add_argument("--track-signs", action="store_true")
    p.add_argument("--range", type=_range, metavar="LO:HI")
    p.add_argument("--extended", action="store_true", help=f"allow up to {enumeration.EXTENDED_LIMIT} free bits")
    p.add_argument("--checkpoint", type=Path)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--collect", type=int, default=0, metavar="K", help="list the first K Hamiltonian tables")
    p.add_argument("--require-cycle", action="store_true", help="exit 1 if no Hamiltonian cycle is found")
    p.add_argument("--no-timing", action="store_true")

    p = sub.add_parser("sample", parents=[common, mn, plot], help="sgn(f_S) vs sgn(sigma) on random tables")
    p.add_argument("--trials", type=_positive, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pruned", action="store_true", help="pin b = 1 on constant prefixes")
    p.add_argument("--workers", type=_positive, default=1)

    p = sub.add_parser("sequence", parents=[common], help="register sequence and de Bruijn check")
    p.add_argument("--choice-set", type=Path, required=True, metavar="JSON")
    p.add_argument("--seed-word", help="initial window (default all zeros)")
    p.add_argument("--length", type=int, help="symbols to emit (default: one orbit period)")
    return parser


def _emit(args, kind, record, csv_rows=None, csv_text=None):
    if args.format == "json":
        out = textio.to_json(kind, record) + "\n"
    elif args.format == "csv":
        out = csv_text if csv_text is not None else textio.to_csv(csv_rows or [record])
    else:
        out = textio.to_text(record)
    if args.output:
        args.output.write_text(out)
    else:
        sys.stdout.write(out)


def _params(args):
    return core.Params(args.m, args.n)


def cmd_verify(args):
    p = _params(args)
    text = args.cycle if args.cycle is not None else args.cycle_file.read_text()
    record = {"m": p.m, "n": p.n, "valid": False}
    try:
        digits = textio.parse_symbols(text, p.m)
        b = core.verify_certificate(core.Certificate(p, digits))
    except (CertificateError, FormatError) as e:
        record.update(reason=getattr(e, "reason", "bad_digit"), detail=str(e))
        _emit(args, "verify", record)
        return EXIT_FAIL
    record.update(
        valid=True,
        choice_set=textio.choice_set_to_dict(b)["suffixes"],
        choice_set_size=len(b.choice_set()),
        mask_hex=textio.choice_set_to_dict(b, "mask_hex")["mask_hex"],
    )
    if args.save_choice_set:
        textio.save_choice_set(b, args.save_choice_set)
    _emit(args, "verify", record)
    return EXIT_OK


def cmd_necklace(args):
    par = necklace.necklace_parity(args.m, args.n)
    record = {"m": args.m, "n": args.n, "necklaces": par.necklaces, "parity": par.parity}
    if par.half_witness is not None:
        record["half_witness"] = par.half_witness
    if args.bruteforce:
        record["bruteforce"] = necklace.necklace_count_bruteforce(args.m, args.n)
    _emit(args, "necklace", record)
    return EXIT_OK


def cmd_burnside(args):
    rep = necklace.counting_report(args.m, args.n)
    _emit(args, "burnside", vars(rep).copy(), csv_text=textio.burnside_csv(rep))
    if args.plot:
        from . import plots

        plots.plot_burnside(rep, args.plot)
    return EXIT_OK


def cmd_sign(args):
    p = _params(args)
    record = {"m": p.m, "n": p.n, "sgn_sigma": necklace.sign_sigma(p.m, p.n, p.size <= necklace.SIGN_TABLE_CAP)}
    if args.choice_set:
        b = textio.load_choice_set(args.choice_set)
        if b.params != p:
            raise FormatError(f"choice set is for SB({b.params.m},{b.params.n}), not SB({p.m},{p.n})")
        report = core.cycle_decomposition(core.permutation_table(b))
        record.update(
            sgn_adjust=necklace.sign_adjust(b),
            sgn_successor=report.sign,
            cycle_count=report.cycle_count,
            cycle_type=report.cycle_type,
            hamiltonian=report.is_single_cycle,
        )
    _emit(args, "sign", record)
    return EXIT_OK


def cmd_verdict(args):
    if args.table:
        reports = [
            necklace.obstruction_verdict(m, n)
            for m in range(2, args.m_max + 1)
            for n in range(1, args.n_max + 1)
        ]
        rows = [vars(r).copy() for r in reports]
        if args.format == "csv":
            _emit(args, "verdict_table", {}, csv_rows=rows)
        else:
            if args.format == "json":
                _emit(args, "verdict_table", {"verdicts": rows})
            else:
                lines = [
                    f"m={r.m:<3} n={r.n:<3} obstructed={str(r.obstructed):<5} sgn_sigma={r.sgn_sigma:+d}"
                    for r in reports
                ]
                out = "\n".join(lines) + "\n"
                (args.output.write_text(out) if args.output else sys.stdout.write(out))
        if args.plot:
            from . import plots

            plots.plot_verdict_grid(reports, args.plot)
        return EXIT_OK
    if args.m is None or args.n is None:
        raise UsageError("verdict needs -m and -n (or --table)")
    rep = necklace.obstruction_verdict(args.m, args.n)
    _emit(args, "verdict", vars(rep).copy())
    if args.plot:
        from . import plots

        plots.plot_verdict_grid([rep], args.plot)
    return EXIT_OK


def cmd_enumerate(args):
    p = _params(args)
    limit = enumeration.EXTENDED_LIMIT if args.extended else enumeration.EXHAUSTIVE_LIMIT
    space = enumeration.build_search_space(p, limit)
    if args.extended and args.checkpoint is None:
        raise UsageError("--extended runs require --checkpoint")
    if args.range:
        lo, hi = args.range
        if not 0 <= lo <= hi <= space.full_size:
            raise UsageError(f"--range must lie within 0:{space.full_size}")
        space = space.subrange(lo, hi)
    report = enumeration.enumerate_space(
        space,
        track_signs=args.track_signs,
        workers=args.workers,
        collect=args.collect,
        checkpoint=args.checkpoint,
        resume=args.resume,
    )
    record = {
        "m": report.m,
        "n": report.n,
        "range": [space.lo, space.hi],
        "free_bits": space.free_bits,
        "tested": report.tested,
        "hamiltonian_count": report.hamiltonian_count,
        "sign_histogram": report.sign_histogram,
        "complete": report.complete,
    }
    if not args.no_timing:
        record["elapsed"] = round(report.elapsed, 3)
    if args.collect:
        record["hamiltonian"] = [
            {
                "counter": c,
                "choice_set": textio.choice_set_to_dict(space.feedback(c))["suffixes"],
                "cycle": textio.format_symbols(core.orbit_certificate(space.feedback(c)).digits, p.m)
                if p.m <= 36 else None,
            }
            for c in report.hamiltonian_counters
        ]
    _emit(args, "enumerate", record)
    if args.plot and report.track_signs:
        from . import plots

        plots.plot_sign_histogram(
            report.sign_plus, report.sign_minus,
            f"SB({p.m},{p.n}): {report.tested:,} tables, {report.hamiltonian_count} Hamiltonian",
            args.plot,
        )
    if not report.complete:
        return EXIT_FAIL
    if args.require_cycle and report.hamiltonian_count == 0:
        return EXIT_FAIL
    return EXIT_OK


def cmd_sample(args):
    p = _params(args)
    rep = enumeration.sample_signs(p, args.trials, args.seed, args.pruned, args.workers)
    record = vars(rep).copy()
    record["sign_histogram"] = rep.sign_histogram
    _emit(args, "sample", record)
    if args.plot:
        from . import plots

        plots.plot_sign_histogram(
            rep.sign_plus, rep.sign_minus,
            f"SB({p.m},{p.n}): {rep.trials:,} random b, sgn(sigma) = {rep.sign_sigma:+d}",
            args.plot,
        )
    if p.m % 2 == 1 and rep.mismatches:
        return EXIT_FAIL
    return EXIT_OK


def cmd_sequence(args):
    b = textio.load_choice_set(args.choice_set)
    p = b.params
    seed = textio.parse_symbols(args.seed_word, p.m) if args.seed_word else (0,) * p.n
    if len(seed) != p.n:
        raise UsageError(f"--seed-word must have n={p.n} symbols")
    orbit = debruijn.orbit_sequence(b, seed)
    length = args.length if args.length is not None else orbit.period
    seq = debruijn.sequence_from_feedback(b, seed, length)
    record = {
        "m": p.m,
        "n": p.n,
        "seed_word": textio.format_symbols(seed, p.m),
        "period": orbit.period,
        "sequence": textio.format_symbols(seq.symbols, p.m),
        "is_debruijn": orbit.period == p.size and debruijn.is_debruijn(orbit),
    }
    _emit(args, "sequence", record)
    return EXIT_OK


class UsageError(Exception):
    pass


COMMANDS = {
    "verify": cmd_verify,
    "necklace": cmd_necklace,
    "burnside": cmd_burnside,
    "sign": cmd_sign,
    "verdict": cmd_verdict,
    "enumerate": cmd_enumerate,
    "sample": cmd_sample,
    "sequence": cmd_sequence,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"sbham: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityExceeded, CheckpointRejected, FormatError, OSError) as e:
        print(f"sbham: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except SBError as e:
        if isinstance(e, ValueError):
            parser.print_usage(sys.stderr)
            print(f"sbham: error: {e}", file=sys.stderr)
            return EXIT_USAGE
        print(f"sbham: {e}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
