"""Command line front end.

Exit codes: 0 clean, 1 the run completed but flagged findings (failed
verdicts, mismatched pipelines, broken invariants), 2 malformed input or
an impossible window, 3 a resource cap refused the computation.

Output is deterministic for a fixed command line: no timestamps, fixed
key order, seeded sampling. JSON payloads carry "schema": "nc-hodge/1".
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .errors import (
    CartierError,
    ConstructionError,
    InternalCheckError,
    ModulusError,
    NCHodgeError,
    NotAComplexError,
    OrderError,
    ParityError,
    ReductionMismatchError,
    ResourceError,
    ShapeError,
    SubdivisionMismatchError,
    WindowError,
)

SCHEMA = "nc-hodge/1"

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3

_INPUT_ERRORS = (ConstructionError, ModulusError, ShapeError, WindowError,
                 OrderError, ParityError, ReductionMismatchError)
_FINDING_ERRORS = (InternalCheckError, SubdivisionMismatchError, CartierError,
                   NotAComplexError)


def _progress(args, msg: str) -> None:
    if not args.quiet:
        print(msg, file=sys.stderr)


def _load_algebra(args):
    from .algebra import load_algebra
    from .corpus import build, corpus_names

    spec = args.algebra
    if spec in corpus_names():
        return build(spec, args.prime)
    if spec.endswith(".json") or os.path.sep in spec:
        return load_algebra(spec)
    raise ConstructionError(
        f"unknown algebra '{spec}'; builtins are: {', '.join(corpus_names())}; "
        "anything else must be a path to a JSON file")


def _dims_list(dims: dict[int, int]) -> list[list[int]]:
    return [[int(n), int(dims[n])] for n in sorted(dims)]


def _triples(table: dict[tuple[int, int], int]) -> list[list[int]]:
    return [[int(x), int(y), int(v)] for (x, y), v in sorted(table.items())]


def _base_payload(command: str, a=None) -> dict:
    from .conventions import SIGN_CONVENTION

    payload = {"schema": SCHEMA, "command": command,
               "sign_convention": SIGN_CONVENTION}
    if a is not None:
        payload["algebra"] = a.label()
        payload["p"] = a.p
        payload["modulus"] = a.modulus
        payload["dim"] = a.dim
    return payload


# ---------------- commands ----------------

def cmd_corpus(args):
    from .corpus import DESCRIPTIONS, build, corpus_names

    rows = []
    for name in corpus_names():
        a = build(name, args.prime)
        rows.append({"name": name, "dim": a.dim,
                     "description": DESCRIPTIONS[name]})
    payload = _base_payload("corpus")
    payload["p"] = args.prime
    payload["algebras"] = rows
    table = (["name", "dim", "description"],
             [[r["name"], r["dim"], r["description"]] for r in rows])
    return payload, table, False


def cmd_validate(args):
    from .algebra import validate_algebra

    a = _load_algebra(args)
    _progress(args, f"checking associativity and unit laws for {a.label()}")
    failures = validate_algebra(a)
    payload = _base_payload("validate", a)
    payload["failures"] = failures
    payload["valid"] = not failures
    table = (["index", "failure"], [[i, f] for i, f in enumerate(failures)])
    return payload, table, bool(failures)


def cmd_hh(args):
    from .hochcyc import hh_dims

    a = _load_algebra(args)
    _progress(args, f"chain groups through level {args.levels}")
    dims = hh_dims(a, args.levels, cap=args.cap)
    payload = _base_payload("hh", a)
    payload["N"] = args.levels
    payload["window"] = [0, args.levels - 1]
    payload["dims"] = _dims_list(dims)
    return payload, (["degree", "dim"], payload["dims"]), False


def cmd_hc(args):
    from .hochcyc import hc_dims

    a = _load_algebra(args)
    _progress(args, f"mixed bicomplex through level {args.levels}")
    dims = hc_dims(a, args.levels, cap=args.cap)
    payload = _base_payload("hc", a)
    payload["N"] = args.levels
    payload["window"] = [0, args.levels - 2]
    payload["dims"] = _dims_list(dims)
    return payload, (["degree", "dim"], payload["dims"]), False


def cmd_sbi(args):
    from .hochcyc import sbi_check

    a = _load_algebra(args)
    _progress(args, "rank bookkeeping for the inclusion/shift/connecting triangle")
    rep = sbi_check(a, args.levels, cap=args.cap)
    payload = _base_payload("sbi", a)
    payload["N"] = rep.N
    payload["degrees"] = rep.degrees
    payload["hh"] = _dims_list(rep.hh)
    payload["hc"] = _dims_list(rep.hc)
    payload["ranks"] = {str(n): rep.ranks[n] for n in sorted(rep.ranks)}
    payload["spots"] = {str(n): rep.spots[n] for n in sorted(rep.spots)}
    payload["complex_valid"] = rep.complex_valid
    payload["exact"] = rep.exact
    rows = [[n, rep.spots[n]["at_hc"], rep.spots[n]["at_hc_shift"],
             rep.spots[n]["at_hh"]] for n in rep.degrees]
    table = (["degree", "at_hc", "at_hc_shift", "at_hh"], rows)
    return payload, table, not (rep.exact and rep.complex_valid)


def cmd_hodge(args):
    from .hochcyc import hodge_ss

    a = _load_algebra(args)
    _progress(args, "column filtration of the mixed bicomplex")
    rep = hodge_ss(a, args.levels, cap=args.cap,
                   pages_budget=args.pages_budget if args.pages else 0,
                   r_max=args.r_max)
    payload = _base_payload("hodge", a)
    payload["N"] = rep.N
    payload["window"] = list(rep.window)
    payload["e1"] = _triples(rep.e1)
    payload["hodge_sums"] = _dims_list(rep.hodge_sums)
    payload["abutment"] = _dims_list(rep.abutment)
    payload["degenerate"] = rep.degenerate
    payload["pages_certified"] = rep.pages_certified
    if rep.page_tables is not None:
        payload["pages"] = [
            {"r": page.r, "entries": _triples(page.table),
             "d_ranks": _triples(page.d_ranks)}
            for page in rep.page_tables
        ]
    rows = [[n, rep.abutment[n], rep.hodge_sums[n],
             rep.abutment[n] == rep.hodge_sums[n]]
            for n in sorted(rep.hodge_sums)]
    table = (["degree", "abutment", "hodge_sum", "equal"], rows)
    return payload, table, not rep.degenerate


def cmd_cartier0(args):
    from .cartier import cartier0

    a = _load_algebra(args)
    _progress(args, f"power map on the commutator quotient, {args.samples} samples")
    rep = cartier0(a, samples=args.samples, seed=args.seed)
    payload = _base_payload("cartier0", a)
    payload["dim_quotient"] = rep.dim_quotient
    payload["matrix"] = rep.matrix.to_dense().tolist()
    payload["additive_ok"] = rep.additive_ok
    payload["representative_ok"] = rep.representative_ok
    payload["samples"] = rep.samples
    payload["seed"] = rep.seed
    rows = [[i, j, v] for i, row in enumerate(payload["matrix"])
            for j, v in enumerate(row) if v]
    table = (["row", "col", "value"], rows)
    return payload, table, False


def cmd_edgewise_check(args):
    from .cartier import edgewise_hh_check

    a = _load_algebra(args)
    _progress(args, f"subdividing through level {args.levels}")
    rep = edgewise_hh_check(a, args.levels, cap=args.cap, allow_p2=args.allow_p2)
    payload = _base_payload("edgewise-check", a)
    payload["N"] = rep.N
    payload["window"] = [0, rep.N - 1]
    payload["subdivided"] = _dims_list(rep.sd_dims)
    payload["plain"] = _dims_list(rep.hh)
    payload["equal"] = rep.equal
    rows = [[n, rep.sd_dims[n], rep.hh[n]] for n in sorted(rep.sd_dims)]
    table = (["degree", "subdivided", "plain"], rows)
    return payload, table, not rep.equal


def cmd_conjugate(args):
    from .cartier import conjugate_ss

    a = _load_algebra(args)
    _progress(args, f"fiberwise bicomplex through level {args.levels}")
    rep = conjugate_ss(a, args.levels, L=args.columns, cap=args.cap,
                       allow_p2=args.allow_p2)
    payload = _base_payload("conjugate", a)
    payload["N"] = rep.N
    payload["L"] = rep.L
    payload["window"] = list(rep.window)
    payload["e1"] = _triples(rep.e1)
    payload["e2_positive_rows"] = _dims_list(rep.e2_positive)
    payload["e2_zero_row"] = _dims_list(rep.e2_zero)
    payload["hh"] = _dims_list(rep.hh)
    payload["matches_hh"] = rep.matches_hh
    payload["abutment"] = _dims_list(rep.abutment)
    rows = [[n, rep.e2_positive[n], rep.hh[n]] for n in sorted(rep.e2_positive)]
    table = (["degree", "e2_positive", "hh"], rows)
    return payload, table, not rep.matches_hh


def cmd_ledger(args):
    from .cartier import conjugate_ledger

    a = _load_algebra(args)
    _progress(args, "stacking Hochschild dimensions against cyclic homology")
    led = conjugate_ledger(a, args.levels, cap=args.cap)
    payload = _base_payload("ledger", a)
    payload["N"] = led.N
    payload["window"] = [0, led.N - 2]
    payload["rows"] = [
        {"degree": r.degree, "hc": r.hc, "hodge_sum": r.hodge_sum,
         "equal": r.equal} for r in led.rows
    ]
    payload["degenerate"] = led.degenerate
    rows = [[r.degree, r.hc, r.hodge_sum, r.equal] for r in led.rows]
    table = (["degree", "hc", "hodge_sum", "equal"], rows)
    return payload, table, not led.degenerate


def cmd_lift_check(args):
    from .algebra import AlgebraLift, check_lift, literal_lift, load_algebra

    a = _load_algebra(args)
    if args.lift:
        _progress(args, f"checking the lift in {args.lift}")
        lifted = load_algebra(args.lift, check=False)
        lift = AlgebraLift(base=a, lifted=lifted)
    else:
        _progress(args, "checking the literal lift of the structure constants")
        lift = literal_lift(a)
    rep = check_lift(lift)
    payload = _base_payload("lift-check", a)
    payload["lift_source"] = args.lift or "literal"
    payload["modulus_lift"] = lift.lifted.modulus
    payload["valid"] = rep.valid
    payload["failures"] = rep.failures
    table = (["index", "failure"], [[i, f] for i, f in enumerate(rep.failures)])
    return payload, table, not rep.valid


# ---------------- rendering ----------------

def _render_text(payload: dict, table) -> str:
    lines = []
    skip = {"schema", "command"}
    for key, value in payload.items():
        if key in skip:
            continue
        if isinstance(value, (str, int, float, bool)) or value is None:
            lines.append(f"{key}: {value}")
    header, rows = table
    if rows:
        widths = [max(len(str(h)), max(len(str(r[i])) for r in rows))
                  for i, h in enumerate(header)]
        lines.append("  ".join(str(h).ljust(w) for h, w in zip(header, widths)))
        for r in rows:
            lines.append("  ".join(str(v).ljust(w) for v, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


def _render(payload: dict, table, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        header, rows = table
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    return _render_text(payload, table)


# ---------------- parser ----------------

def _add_common(sub, levels_default=None, levels_help="chain levels to build"):
    sub.add_argument("algebra", help="builtin corpus name or path to a JSON file")
    sub.add_argument("-p", "--prime", type=int, default=3,
                     help="prime for builtin algebras (default 3)")
    if levels_default is not None:
        sub.add_argument("-N", "--levels", type=int, default=levels_default,
                         help=f"{levels_help} (default {levels_default})")
    sub.add_argument("--cap", type=int, default=None,
                     help="entry budget; refuse with exit 3 beyond it")
    sub.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sub.add_argument("--quiet", action="store_true", help="no progress on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nchodge",
        description="Hochschild and cyclic homology of finite F_p algebras, "
                    "with the Hodge and conjugate filtration toolkit.",
        epilog="exit codes: 0 clean, 1 flagged findings, 2 bad input, "
               "3 resource cap")
    parser.add_argument("--threads", type=int, default=None,
                        help="thread budget exported to the numeric backends")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("corpus", help="list the builtin algebras")
    sub.add_argument("-p", "--prime", type=int, default=3)
    sub.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sub.add_argument("--quiet", action="store_true")
    sub.set_defaults(func=cmd_corpus)

    sub = subs.add_parser("validate", help="associativity and unit laws")
    _add_common(sub)
    sub.set_defaults(func=cmd_validate)

    sub = subs.add_parser("hh", help="Hochschild homology dimensions")
    _add_common(sub, levels_default=5)
    sub.set_defaults(func=cmd_hh)

    sub = subs.add_parser("hc", help="cyclic homology dimensions")
    _add_common(sub, levels_default=5)
    sub.set_defaults(func=cmd_hc)

    sub = subs.add_parser("sbi", help="inclusion/shift/connecting rank checks")
    _add_common(sub, levels_default=6)
    sub.set_defaults(func=cmd_sbi)

    sub = subs.add_parser("hodge", help="column filtration verdict")
    _add_common(sub, levels_default=5)
    sub.add_argument("--pages", action="store_true",
                     help="attach certified page tables when affordable")
    sub.add_argument("--pages-budget", type=int, default=3000)
    sub.add_argument("--r-max", type=int, default=3)
    sub.set_defaults(func=cmd_hodge)

    sub = subs.add_parser("cartier0", help="power map on the commutator quotient")
    _add_common(sub)
    sub.add_argument("--samples", type=int, default=1000)
    sub.add_argument("--seed", type=int, default=0)
    sub.set_defaults(func=cmd_cartier0)

    sub = subs.add_parser("edgewise-check",
                          help="subdivided homology against the plain route")
    _add_common(sub, levels_default=2)
    sub.add_argument("--allow-p2", action="store_true")
    sub.set_defaults(func=cmd_edgewise_check)

    sub = subs.add_parser("conjugate", help="fiberwise filtration second page")
    _add_common(sub, levels_default=2)
    sub.add_argument("-L", "--columns", type=int, default=None,
                     help="horizontal extent (default 2p)")
    sub.add_argument("--allow-p2", action="store_true")
    sub.set_defaults(func=cmd_conjugate)

    sub = subs.add_parser("ledger", help="degeneration ledger per degree")
    _add_common(sub, levels_default=5)
    sub.set_defaults(func=cmd_ledger)

    sub = subs.add_parser("lift-check", help="verify a mod p**2 lift")
    _add_common(sub)
    sub.add_argument("--lift", default=None,
                     help="JSON file with the lifted constants (default: literal)")
    sub.set_defaults(func=cmd_lift_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ[var] = str(args.threads)
    try:
        payload, table, findings = args.func(args)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno}, column {exc.colno}: "
              f"{exc.msg}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"error: {exc} (estimate {exc.estimate}, cap {exc.cap})",
              file=sys.stderr)
        return EXIT_RESOURCE
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _FINDING_ERRORS as exc:
        print(f"finding: {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    except NCHodgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(_render(payload, table, args.format))
    return EXIT_FINDINGS if findings else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
