"""
Command-line front end.

Every subcommand prints exactly one JSON document on stdout; logging goes to
stderr. Exit codes: 0 success, 1 verification failure, 2 bad input,
3 missing ring capability, 4 prime search exhausted.
"""

import argparse
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from . import config, database
from .elimination import factor5, factor_sl, gauss
from .errors import (
    CapabilityMissing,
    InputError,
    ParseError,
    SearchExhausted,
    SupportViolation,
    UnitriError,
)
from .exactmat import factorisation_from_json, matrix_from_json, mul, verify_factorisation
from .monomial import MonomialMatrix, factor_monomial
from .rings import LocalizedIntegers, ring_from_spec
from .selftest import CHECKS, results_frame, run_selftest
from .shears import EulerAngles, paeth2, toffoli_quick3
from .sl2core import factor_sl2, factor_sl2_traced
from .verify import enumerate_sets, enumeration_table
from .zp import factor_sl2_zp, factor_sl_n_zp

_logger = logging.getLogger(__name__)

# ===========================
# EXIT CODES
# ===========================

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2
EXIT_CAPABILITY = 3
EXIT_SEARCH = 4

SHEAR_2D_BOUND = 1e-12
SHEAR_3D_BOUND = 1e-10
REGULAR_COSINE = 0.1

FACTORISERS = ("factor", "factor5", "gauss", "monomial", "zp")


def exit_code_for(exc):
    if isinstance(exc, InputError):
        return EXIT_INPUT
    if isinstance(exc, CapabilityMissing):
        return EXIT_CAPABILITY
    if isinstance(exc, SearchExhausted):
        return EXIT_SEARCH
    return EXIT_VERIFICATION


def error_payload(exc):
    out = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError) and exc.row is not None:
        out["row"] = exc.row
        out["column"] = exc.column
    if isinstance(exc, SearchExhausted):
        out["k_max"] = exc.k_max
    return {"ok": False, "error": out}


# ===========================
# INPUT
# ===========================

def parse_matrix(text, ring):
    """Matrix over ``ring`` from a JSON array of arrays (or a full matrix object)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"matrix is not valid JSON: {exc.msg} at char {exc.pos}") from exc
    return matrix_from_json(obj, ring)


def _read_source(args):
    if args.matrix is not None:
        return args.matrix
    if args.file is not None:
        try:
            with open(args.file) as fh:
                return fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {args.file}: {exc.strerror}") from exc
    return sys.stdin.read()


def _read_batch(path):
    try:
        with open(path) as fh:
            lines = [line.strip() for line in fh]
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return [line for line in lines if line and not line.startswith("#")]


# ===========================
# FACTORISERS
# ===========================

def _verified(f, payload):
    report = verify_factorisation(f)
    payload["verification"] = report.to_json()
    if not report.ok:
        raise SupportViolation(f"self-produced factorisation failed: {report.first_violation}")
    return payload


def _solve(command, ring, options, text):
    """Parse one input and run one factoriser; returns the JSON payload."""
    if command == "monomial" and text.lstrip().startswith("{") and '"perm"' in text:
        try:
            g = MonomialMatrix.from_json(ring, json.loads(text)).to_matrix()
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad monomial description: {exc}") from exc
    else:
        g = parse_matrix(text, ring)

    if command == "factor":
        trace = None
        if g.n == 2 and options.get("leading", "U") == "L":
            f = factor_sl2(g, leading="L")
        elif g.n == 2 and options.get("trace"):
            f, trace = factor_sl2_traced(g)
        else:
            f = factor_sl(g)
        payload = {"ok": True, "factorisation": f.to_json()}
        if options.get("trace"):
            payload["trace"] = trace.to_json() if trace is not None else None
        return _verified(f, payload)

    if command == "factor5":
        f = factor5(g)
        return _verified(f, {"ok": True, "factorisation": f.to_json()})

    if command == "gauss":
        u, t, v, u2 = gauss(g)
        if mul(mul(u.mat, t), mul(v.mat, u2.mat)) != g:
            raise SupportViolation("Gauss decomposition does not reproduce the input")
        return {
            "ok": True,
            "upper": u.to_json(),
            "torus": t.to_json(),
            "lower": v.to_json(),
            "upper2": u2.to_json(),
            "target": g.to_json(),
        }

    if command == "monomial":
        f = factor_monomial(g)
        return _verified(f, {"ok": True, "factorisation": f.to_json()})

    if command == "zp":
        if not isinstance(ring, LocalizedIntegers):
            raise ParseError(f"zp needs a ring of the form zp:p, got {ring.spec()}")
        k_max = options.get("k_max")
        trace = None
        if g.n == 2 and not options.get("six"):
            f, trace = factor_sl2_zp(g, k_max)
        else:
            f = factor_sl_n_zp(g, k_max)
        payload = {"ok": True, "factorisation": f.to_json()}
        if options.get("trace"):
            payload["trace"] = trace.to_json() if trace is not None else None
        return _verified(f, payload)

    raise ValueError(f"unknown factoriser {command!r}")


def _solve_entry(command, ring, options, text):
    """Batch worker: never raises, returns (exit code, payload)."""
    try:
        return EXIT_OK, _solve(command, ring, options, text)
    except UnitriError as exc:
        return exit_code_for(exc), error_payload(exc)


def _record(command, ring, payload, text):
    f = payload.get("factorisation")
    n = f["target"]["n"] if f else payload.get("target", {}).get("n", 0)
    pattern = f["pattern"] if f else "U T L U"
    length = f["length"] if f else 4
    row_id = database.record_factorisation(
        command, ring.spec(), n, pattern, length, payload["ok"], text, payload,
    )
    _logger.info("recorded %s as history row %d", command, row_id)


def cmd_factoriser(args):
    ring = ring_from_spec(args.ring)
    options = {
        "trace": args.trace,
        "leading": getattr(args, "leading", "U"),
        "k_max": getattr(args, "k_max", None),
        "six": getattr(args, "six", False),
    }
    if args.record:
        database.init_db()

    if args.batch:
        texts = _read_batch(args.batch)
        solve = partial(_solve_entry, args.command, ring, options)
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                outcomes = list(pool.map(solve, texts))
        else:
            outcomes = [solve(t) for t in texts]
        if args.record:
            for text, (code, payload) in zip(texts, outcomes):
                if code == EXIT_OK:
                    _record(args.command, ring, payload, text)
        code = max((c for c, _ in outcomes), default=EXIT_OK)
        failed = sum(1 for c, _ in outcomes if c != EXIT_OK)
        _logger.info("batch of %d inputs, %d failed", len(outcomes), failed)
        return code, {"ok": failed == 0, "results": [p for _, p in outcomes]}

    text = _read_source(args)
    payload = _solve(args.command, ring, options, text)
    if args.record:
        _record(args.command, ring, payload, text)
    return EXIT_OK, payload


def cmd_shear(args):
    if args.kind == "paeth":
        if args.phi is None:
            raise ParseError("shear paeth needs --phi")
        result = paeth2(args.phi, args.tol)
        bound = SHEAR_2D_BOUND
        regular = abs(math.cos(args.phi / 2)) > REGULAR_COSINE
    else:
        if None in (args.alpha, args.beta, args.gamma):
            raise ParseError("shear tq needs --alpha, --beta and --gamma")
        try:
            angles = EulerAngles(args.alpha, args.beta, args.gamma)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        result = toffoli_quick3(angles, args.tol)
        bound = SHEAR_3D_BOUND
        regular = min(abs(angles.half_sum_cosine()), abs(angles.half_beta_cosine())) > REGULAR_COSINE
    # Residual bounds only hold away from the singular cosines.
    ok = result.max_abs_error <= bound or not regular
    payload = {"ok": ok, "regular": regular, "decomposition": result.to_json()}
    return (EXIT_OK if payload["ok"] else EXIT_VERIFICATION), payload


def cmd_verify(args):
    text = _read_source(args)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"factorisation is not valid JSON: {exc.msg}") from exc
    if isinstance(obj, dict) and "factorisation" in obj:
        obj = obj["factorisation"]
    try:
        f = factorisation_from_json(obj)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"not a factorisation document: {exc}") from exc
    report = verify_factorisation(f)
    payload = {"ok": report.ok, "verification": report.to_json()}
    return (EXIT_OK if report.ok else EXIT_VERIFICATION), payload


def cmd_selftest(args):
    only = args.only.split(",") if args.only else None
    results = run_selftest(args.trials, args.seed, only)
    if args.record:
        database.init_db()
        database.record_selftest(results)
    for line in results_frame(results).to_string(index=False).splitlines():
        _logger.info(line)
    ok = all(r.ok for r in results)
    payload = {"ok": ok, "checks": [r.to_json() for r in results]}
    return (EXIT_OK if ok else EXIT_VERIFICATION), payload


def cmd_enumerate(args):
    reports = [enumerate_sets(ring_from_spec(spec), args.n, args.limit) for spec in args.ring]
    if args.csv:
        enumeration_table(reports).to_csv(args.csv, index=False)
    return EXIT_OK, {"ok": True, "reports": [r.to_json() for r in reports]}


def cmd_history(args):
    database.init_db()
    if args.show is not None:
        row = database.get_factorisation(args.show)
        if row is None:
            raise ParseError(f"no history row with id {args.show}")
        return EXIT_OK, {"ok": True, "id": args.show, **row}
    df = database.get_history_frame(args.limit, args.filter)
    if args.csv:
        df.to_csv(args.csv, index=False)
    payload = {"ok": True, "rows": df.to_dict(orient="records")}
    if args.stats:
        payload["statistics"] = database.get_statistics()
    return EXIT_OK, payload


# ===========================
# PARSER
# ===========================

def _add_input(parser):
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--matrix", help="matrix as a JSON array of rows")
    source.add_argument("--file", help="read the input JSON from a file")


def _add_factoriser(sub, name, help_text, ring_default=None):
    p = sub.add_parser(name, help=help_text)
    p.add_argument("--ring", required=ring_default is None, default=ring_default,
                   help="zmod:m, gf:p, q, z, zp:p or product:zmod:2,zmod:3")
    _add_input(p)
    p.add_argument("--batch", help="JSON-lines file, one matrix per line")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for --batch")
    p.add_argument("--trace", action="store_true", help="attach the reduction trace")
    p.add_argument("--record", action="store_true", help="store the result in the history database")
    return p


def build_parser():
    parser = argparse.ArgumentParser(
        prog="unitri",
        description="Unitriangular factorisations of SL(n, R) over exact rings.",
    )
    parser.add_argument("--log-level", default=config.LOG_LEVEL,
                        help="logging level for stderr diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = _add_factoriser(sub, "factor", "at most 4 blocks U L U L (stable rank 1 rings)")
    p.add_argument("--leading", choices=("U", "L"), default="U",
                   help="leading block side for 2x2 inputs")
    _add_factoriser(sub, "factor5", "at most 5 blocks through the Gauss decomposition")
    _add_factoriser(sub, "gauss", "Gauss decomposition U T L U")
    _add_factoriser(sub, "monomial", "determinant-1 monomial matrices (matrix or {perm, units})")
    p = _add_factoriser(sub, "zp", "SL(n, Z[1/p]) in at most 5 (n = 2) or 6 blocks")
    p.add_argument("--k-max", type=int, default=None, help="prime search bound")
    p.add_argument("--six", action="store_true", help="use the 6-block form also for n = 2")

    p = sub.add_parser("shear", help="shear decompositions of rotations")
    p.add_argument("kind", choices=("paeth", "tq"))
    p.add_argument("--phi", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("verify", help="check a factorisation document")
    _add_input(p)

    p = sub.add_parser("selftest", help="run the oracle suite")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--only", help="comma-separated check names: " + ",".join(n for n, _ in CHECKS))
    p.add_argument("--record", action="store_true")

    p = sub.add_parser("enumerate", help="exhaustive set sizes over tiny finite rings")
    p.add_argument("--ring", action="append", required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--csv", help="also write the table as CSV")

    p = sub.add_parser("history", help="stored factorisations")
    p.add_argument("--limit", type=int, default=50)
    p.add_argument("--filter", help="only rows of this subcommand")
    p.add_argument("--show", type=int, help="full input and output of one row")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--csv")
    return parser


HANDLERS = {
    "shear": cmd_shear,
    "verify": cmd_verify,
    "selftest": cmd_selftest,
    "enumerate": cmd_enumerate,
    "history": cmd_history,
    **{name: cmd_factoriser for name in FACTORISERS},
}


def run(argv=None, stdout=None):
    """Parse ``argv``, dispatch, print one JSON document; returns the exit code."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT

    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    if getattr(args, "batch", None) and (args.matrix is not None or args.file is not None):
        code, payload = EXIT_INPUT, error_payload(ParseError("--batch excludes --matrix and --file"))
    else:
        try:
            code, payload = HANDLERS[args.command](args)
        except UnitriError as exc:
            _logger.error("%s: %s", type(exc).__name__, exc)
            code, payload = exit_code_for(exc), error_payload(exc)

    print(json.dumps(payload, indent=2), file=stdout)
    return code
