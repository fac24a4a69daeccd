"""Command-line front end.

Subcommands: ``generate`` (moment | random | em | cupcap), ``color``,
``check`` (monotone | transitive | one-switch | identities), ``search``.
Artifacts (sequence JSON, coloring tables, search results) go to the
``-o`` file when given, else to standard output; one-line summaries go to
standard output when the artifact went to a file, else to standard error;
error messages always go to standard error.  All numeric I/O is exact
rational strings, so command pipelines are lossless, and every command is
deterministic in its arguments — identical invocations produce identical
bytes.

Exit codes: 0 success, 2 usage or malformed input, 3 generation failure,
4 degenerate or wrongly oriented input, 5 violated property or identity,
6 search budget exhausted (suppressed by --best-effort).

The environment variable ABR_THREADS (an integer >= 0, 0 meaning auto)
caps internal parallelism.  The current implementation is sequential, so
any cap is trivially honored; the variable is still validated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from itertools import combinations
from math import comb

from .coloring import (
    color_by_crossing,
    color_by_heights,
    color_table,
    divdiff_color_table,
    one_switch_certificate,
    vandermonde_divdiff_residual,
)
from .constructions import (
    MAX_BASE,
    build_cluster_parabola,
    cluster_parabola_sequence,
    cupcap_extremal,
    random_cyclic_instance,
)
from .errors import (
    BadIndicesError,
    BadShapeError,
    DegenerateInputError,
    GenerationFailedError,
    IdentityViolationError,
    InvariantError,
    NonSquareError,
    ParameterSearchFailedError,
    ParseError,
    TooFewPointsError,
    TooLargeError,
    WrongOrientationError,
)
from .linalg import Matrix, plucker_residual
from .sequences import (
    LiftedSequence,
    PlanarSequence,
    moment_lift,
    parse_sequence,
    serialize_sequence,
    validate_cyclic_projections,
    validate_general_position,
)
from .tables import ColoringTable, is_monotone, is_transitive, longest_monochromatic

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GENERATION = 3
EXIT_DEGENERATE = 4
EXIT_VIOLATION = 5
EXIT_BUDGET = 6

_SUMMARY_TUPLE_CAP = 20000


def _json_bytes(obj):
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def _read_input(path):
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _emit(data, path):
    """Write the artifact; returns True when it went to a file."""
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return False
    with open(path, "wb") as fh:
        fh.write(data)
    return True


def _summary(to_file, text):
    print(text, file=sys.stdout if to_file else sys.stderr)


def _load_input(path):
    """Sniff a sequence (JSON with "kind"), a table (JSON with "colors"),
    or a table CSV."""
    data = _read_input(path)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"input is not UTF-8: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
        if isinstance(obj, dict) and "kind" in obj:
            return parse_sequence(data)
        if isinstance(obj, dict) and "colors" in obj:
            return ColoringTable.from_json_obj(obj)
        raise ParseError("JSON input has neither 'kind' (sequence) nor 'colors' (table)")
    if stripped.startswith("i0,"):
        return ColoringTable.from_csv(text)
    raise ParseError("input is neither a JSON document nor a coloring-table CSV")


def _as_lifted(seq, d):
    if isinstance(seq, LiftedSequence):
        return seq
    return moment_lift(seq, d)


def _validated_lifted(s, *, reverse=False):
    """Run both validators, optionally repairing a reversed orientation."""
    report = validate_cyclic_projections(s)
    if report.wrong_orientation and reverse:
        s = s.reversed()
        report = validate_cyclic_projections(s)
    if report.wrong_orientation:
        raise WrongOrientationError(
            "projections are cyclically ordered only after reversal; "
            "rerun with --reverse-orientation",
            witness=report.failures[0][0],
        )
    if not report.valid:
        witness = report.failures[0][0] if report.failures else None
        raise DegenerateInputError(
            f"projections are not cyclically ordered (witness {witness})", witness=witness
        )
    gp = validate_general_position(s)
    if not gp.valid:
        witness = gp.failures[0][0] if gp.failures else None
        raise DegenerateInputError(
            f"degenerate lifted tuple {witness}", witness=witness
        )
    return s


def _table_from(obj, args):
    """A coloring table from whatever the input was."""
    if isinstance(obj, ColoringTable):
        return obj
    if isinstance(obj, PlanarSequence):
        return divdiff_color_table(obj, args.d)
    lifted = _validated_lifted(obj, reverse=getattr(args, "reverse_orientation", False))
    return color_table(lifted)


def _validation_status(s):
    cyclic = validate_cyclic_projections(s, max_tuples=_SUMMARY_TUPLE_CAP)
    general = validate_general_position(s, max_tuples=_SUMMARY_TUPLE_CAP)
    return cyclic.status, general.status


# ---------------------------------------------------------------- generate

_HEIGHT_CHOICES = ("power", "cubic", "square", "zero", "random")


def _moment_heights(ts, kind, d, seed):
    if kind == "power":
        return [t ** d for t in ts]
    if kind == "cubic":
        return [t ** 3 for t in ts]
    if kind == "square":
        return [t ** 2 for t in ts]
    if kind == "zero":
        return [0 for _ in ts]
    import random as _random

    from .constructions import _random_rational

    rng = _random.Random(seed)
    return [_random_rational(rng, 16, signed=True) for _ in ts]


def _cmd_generate_moment(args):
    if args.n < 1:
        raise InvariantError(f"need n >= 1, got {args.n}")
    ts = list(range(args.n))
    hs = _moment_heights(ts, args.heights, args.d, args.seed)
    seq = moment_lift(PlanarSequence(tuple(zip(ts, hs))), args.d)
    to_file = _emit(serialize_sequence(seq), args.output)
    if len(seq) >= args.d + 1:
        cyclic, general = _validation_status(seq)
    else:
        cyclic = general = "skipped"
    _summary(
        to_file,
        f"kind=lifted d={args.d} n={len(seq)} cyclic={cyclic} general_position={general}",
    )
    return EXIT_OK


def _cmd_generate_random(args):
    seq = random_cyclic_instance(args.d, args.n, args.seed, bits=args.bits)
    to_file = _emit(serialize_sequence(seq), args.output)
    cyclic, general = _validation_status(seq)
    _summary(
        to_file,
        f"kind=lifted d={args.d} n={len(seq)} seed={args.seed} "
        f"cyclic={cyclic} general_position={general}",
    )
    return EXIT_OK


def _cmd_generate_em(args):
    if args.no_verify:
        seq, params = build_cluster_parabola(args.m, args.base)
        report_obj = {
            "m": args.m,
            "n": len(seq),
            "max_monotone": None,
            "exhaustive": False,
            "params": params.to_json_obj(),
        }
    else:
        seq, params, report = cluster_parabola_sequence(
            args.m, start_base=args.base, max_base=args.max_base, budget=args.budget
        )
        report_obj = {
            "m": report.depth,
            "n": report.n,
            "max_monotone": report.max_monotone,
            "exhaustive": report.exhaustive,
            "params": params.to_json_obj(),
        }
    to_file = _emit(serialize_sequence(seq), args.output)
    _summary(to_file, _json_bytes(report_obj).decode("utf-8").rstrip("\n"))
    return EXIT_OK


def _cmd_generate_cupcap(args):
    seq = cupcap_extremal(args.k)
    to_file = _emit(serialize_sequence(seq), args.output)
    _summary(to_file, f"kind=planar n={len(seq)} k={args.k}")
    return EXIT_OK


# ------------------------------------------------------------------- color

def _cmd_color(args):
    obj = _load_input(args.input)
    if isinstance(obj, ColoringTable):
        raise ParseError("'color' needs a point sequence, not a coloring table")
    lifted = _validated_lifted(_as_lifted(obj, args.d), reverse=args.reverse_orientation)
    table = color_table(lifted)
    if args.format == "csv":
        artifact = table.to_csv().encode("utf-8")
    else:
        artifact = _json_bytes(table.to_json_obj())
    to_file = _emit(artifact, args.output)
    positive, negative = table.counts()
    d = lifted.dimension
    lines = [f"n={len(lifted)} d={d} tuples={table.total} positive={positive} negative={negative}"]
    if args.cross_check:
        mismatches = 0
        for tup, color in table:
            pts = [lifted.points[i] for i in tup]
            _, by_heights = color_by_heights(pts)
            agree = by_heights is color
            if d == 3:
                agree = agree and color_by_crossing(pts) is color
            if not agree:
                mismatches += 1
        lines.append(f"mismatches: {mismatches}")
        if mismatches:
            for line in lines:
                _summary(to_file, line)
            raise IdentityViolationError(
                f"{mismatches} tuples disagree between color oracles"
            )
    for line in lines:
        _summary(to_file, line)
    return EXIT_OK


# ------------------------------------------------------------------- check

def _report(args, human, obj):
    if args.format == "json":
        sys.stdout.buffer.write(_json_bytes(obj))
    else:
        print(human)


def _cmd_check(args):
    obj = _load_input(args.input)
    what = args.what
    if what in ("monotone", "transitive"):
        table = _table_from(obj, args)
        ok, witness = is_monotone(table) if what == "monotone" else is_transitive(table)
        _report(
            args,
            f"{what}: {'ok' if ok else f'violation witness={witness}'} "
            f"(n={table.n}, r={table.r})",
            {"check": what, "ok": ok, "witness": list(witness) if witness else None,
             "n": table.n, "r": table.r},
        )
        return EXIT_OK if ok else EXIT_VIOLATION

    if isinstance(obj, ColoringTable):
        raise ParseError(f"'check {what}' needs a point sequence, not a table")

    if what == "one-switch":
        lifted = _validated_lifted(_as_lifted(obj, args.d), reverse=args.reverse_orientation)
        d = lifted.dimension
        if len(lifted) < d + 2:
            raise TooFewPointsError(f"one-switch needs at least {d + 2} points")
        count = 0
        max_switches = 0
        for tup in combinations(range(len(lifted)), d + 2):
            cert = one_switch_certificate([lifted.points[i] for i in tup])
            count += 1
            max_switches = max(max_switches, cert.switch_count)
        _report(
            args,
            f"one-switch: ok subtuples={count} max_switch_count={max_switches}",
            {"check": "one-switch", "ok": True, "subtuples": count,
             "max_switch_count": max_switches},
        )
        return EXIT_OK

    # identities
    checked = 0
    if isinstance(obj, PlanarSequence):
        if len(obj) < args.d + 1:
            raise TooFewPointsError(f"need at least {args.d + 1} points for order {args.d}")
        for tup in combinations(range(len(obj)), args.d + 1):
            residual = vandermonde_divdiff_residual([obj.points[i] for i in tup])
            if residual != 0:
                raise IdentityViolationError(
                    f"determinant/divided-difference residual {residual} at {tup}"
                )
            checked += 1
    else:
        d = obj.dimension
        if len(obj) < d + 2:
            raise TooFewPointsError(f"need at least {d + 2} points")
        for tup in combinations(range(len(obj)), d + 2):
            rows = [tuple(1 for _ in tup)]
            for coord in range(d - 1):
                rows.append(tuple(obj.points[i][coord] for i in tup))
            q = Matrix(tuple(rows))
            for quad in combinations(range(d + 2), 4):
                residual = plucker_residual(q, quad)
                if residual != 0:
                    raise IdentityViolationError(
                        f"three-term minor residual {residual} at {tup} columns {quad}"
                    )
                checked += 1
    _report(
        args,
        f"identities: ok checked={checked}",
        {"check": "identities", "ok": True, "checked": checked},
    )
    return EXIT_OK


# ------------------------------------------------------------------ search

def _cmd_search(args):
    obj = _load_input(args.input)
    table = _table_from(obj, args)
    result = longest_monochromatic(table, budget=args.budget)
    payload = result.to_json_obj()
    if args.k is not None:
        payload["k"] = args.k
        payload["reached"] = result.size >= args.k
    to_file = _emit(_json_bytes(payload), args.output)
    if not result.exhaustive:
        _summary(to_file, f"budget exhausted after {result.nodes_visited} nodes")
        if not args.best_effort:
            return EXIT_BUDGET
    return EXIT_OK


# -------------------------------------------------------------------- main

def _add_output(p):
    p.add_argument("-o", "--output", default=None, help="artifact file (default: stdout)")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="abr",
        description="Exact above-below colorings of lifted point sequences: "
        "generators, color oracles, structure checks, and searches.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write an instance as sequence JSON")
    kinds = gen.add_subparsers(dest="kind", required=True)

    p = kinds.add_parser("moment", help="moment-curve lift of integer nodes 0..n-1")
    p.add_argument("--d", type=int, default=3, help="lift dimension (default 3)")
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--heights", choices=_HEIGHT_CHOICES, default="power",
                   help="height rule for h_i (default: t^d)")
    p.add_argument("--seed", type=int, default=0, help="seed for --heights random")
    _add_output(p)
    p.set_defaults(func=_cmd_generate_moment)

    p = kinds.add_parser("random", help="seeded random cyclic instance")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bits", type=int, default=16, help="rational coordinate size")
    _add_output(p)
    p.set_defaults(func=_cmd_generate_random)

    p = kinds.add_parser("em", help="doubly-exponential cluster construction")
    p.add_argument("--m", type=int, required=True, help="recursion depth: 2^(2^(m-1)) points")
    p.add_argument("--base", type=int, default=2, help="starting scale base (default 2)")
    p.add_argument("--max-base", type=int, default=MAX_BASE)
    p.add_argument("--budget", type=int, default=None, help="verification node budget")
    p.add_argument("--no-verify", action="store_true",
                   help="emit the instance at --base without the verification search")
    _add_output(p)
    p.set_defaults(func=_cmd_generate_em)

    p = kinds.add_parser("cupcap", help="classical no-k-cup/no-k-cap extremal set")
    p.add_argument("--k", type=int, required=True)
    _add_output(p)
    p.set_defaults(func=_cmd_generate_cupcap)

    p = sub.add_parser("color", help="color every (d+1)-tuple of a sequence")
    p.add_argument("input", help="sequence JSON file, or - for stdin")
    p.add_argument("--d", type=int, default=3, help="lift dimension for planar input")
    p.add_argument("--cross-check", action="store_true",
                   help="recompute every color with the independent oracles")
    p.add_argument("--reverse-orientation", action="store_true",
                   help="repair a sequence whose projections are cyclic in reverse")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_output(p)
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("check", help="structure and identity checks")
    p.add_argument("what", choices=("monotone", "transitive", "one-switch", "identities"))
    p.add_argument("input", help="sequence or table file, or - for stdin")
    p.add_argument("--d", type=int, default=3,
                   help="divided-difference order / lift dimension for planar input")
    p.add_argument("--reverse-orientation", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("search", help="longest monochromatic subset of a coloring")
    p.add_argument("input", help="sequence or table file, or - for stdin")
    p.add_argument("--d", type=int, default=3, help="order/dimension for sequence input")
    p.add_argument("--k", type=int, default=None, help="report whether size k is reached")
    p.add_argument("--budget", type=int, default=None, help="search node budget")
    p.add_argument("--best-effort", action="store_true",
                   help="exit 0 even when the budget ran out")
    p.add_argument("--reverse-orientation", action="store_true")
    _add_output(p)
    p.set_defaults(func=_cmd_search)

    return parser


def _validate_threads_env():
    raw = os.environ.get("ABR_THREADS")
    if raw is None:
        return
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"ABR_THREADS must be an integer, got {raw!r}") from None
    if value < 0:
        raise ParseError(f"ABR_THREADS must be >= 0, got {value}")


def main(argv=None):
    try:
        _validate_threads_env()
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantError, TooLargeError, TooFewPointsError,
            NonSquareError, BadShapeError, BadIndicesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GenerationFailedError, ParameterSearchFailedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        for attempt in getattr(exc, "attempts", ()):
            print(f"  base {attempt[0]}: {attempt[1]}", file=sys.stderr)
        return EXIT_GENERATION
    except (DegenerateInputError, WrongOrientationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except IdentityViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
