"""``talg``: batch checks on algebra definition files.

Exit status: 0 when every check passes, 1 when a check fails, 2 on an
input or usage error.
"""

from __future__ import annotations

import argparse
import sys

from .calculus import Calculus, build_omega1_ternary, check_ternary_leibniz, derivation_space
from .catalog import CATALOG, export, parse_params
from .checks import CheckResult
from .envelope import build_envelope, check_envelope_associative
from .errors import FileFormatError, PreconditionError, ScalarParseError, TalgError
from .fileio import load_algebra, load_trimodule
from .ternary import KINDS, check_associativity, check_star, star_to_btype
from .trimodule import trimodule_check_all
from .report import EXIT_ERROR, Report

__all__ = ["main", "build_parser", "run_command"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=None,
                        help="report format (default json)")
    p = _Parser(prog="talg", description="Exact checks for ternary algebras and their calculi.",
                parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("check", parents=[common], help="associativity check")
    s.add_argument("file")
    s.add_argument("--kind", choices=KINDS, default=None,
                   help="identity to check (default: the declared kind, else strong)")
    s = sub.add_parser("star-check", parents=[common], help="star anti-involution check")
    s.add_argument("file")
    s = sub.add_parser("derivations", parents=[common], help="basis of ternary derivations")
    s.add_argument("file")
    s = sub.add_parser("envelope", parents=[common], help="universal envelope U_A")
    s.add_argument("file")
    s = sub.add_parser("omega1", parents=[common], help="universal ternary calculus")
    s.add_argument("file")
    s.add_argument("--verify-axioms", action="store_true", help="run all tri-module identities")
    s.add_argument("--verify-leibniz", action="store_true", help="check the Leibniz rule of D")
    s = sub.add_parser("trimodule-check", parents=[common], help="tri-module identities of a module file")
    s.add_argument("file")
    s = sub.add_parser("catalog", parents=[common], help="named examples")
    s.add_argument("action", choices=("list", "export"))
    s.add_argument("name", nargs="?")
    s.add_argument("params", nargs="*", help="key=value parameters")
    return p


def _precondition(report: Report, exc: PreconditionError, label: str):
    if exc.result is not None:
        report.add(exc.result)
    else:
        report.details.append({"check": label, "verdict": "fail", "reason": str(exc)})
    report.derived["precondition"] = str(exc)


def _cmd_check(args, report):
    alg = load_algebra(args.file)
    kind = args.kind or (alg.declared_kind if alg.declared_kind != "none" else "strong")
    report.derived["kind"] = kind
    report.derived["dimension"] = alg.dim
    report.add(check_associativity(alg, kind))


def _cmd_star(args, report):
    alg = load_algebra(args.file)
    if alg.star is None:
        raise FileFormatError("file has no 'star' matrix")
    res = report.add(check_star(alg))
    if res.ok and check_associativity(alg, "strong").ok:
        b = star_to_btype(alg)
        report.add(check_associativity(b, "B"))
        report.derived["btype_structure_constants"] = [
            {"n": n, "i": i, "j": j, "k": k, "value": lit}
            for (n, i, j, k), lit in _sparse_literals(b.rho)
        ]


def _sparse_literals(arr):
    from .scalars import format_scalar

    mask = arr.nonzero_mask()
    for pos in zip(*mask.nonzero()):
        pos = tuple(int(p) for p in pos)
        yield pos, format_scalar(arr[pos])


def _cmd_derivations(args, report):
    alg = load_algebra(args.file)
    basis = derivation_space(alg)
    report.derived["dimension"] = len(basis)
    report.derived["basis"] = [b.literals() for b in basis]
    for k, b in enumerate(basis):
        res = check_ternary_leibniz(Calculus.from_derivation(alg, b))
        report.add(CheckResult(f"derivation {k} Leibniz", res.counterexample, res.checked))


def _cmd_envelope(args, report):
    alg = load_algebra(args.file)
    try:
        env = build_envelope(alg)
    except PreconditionError as exc:
        _precondition(report, exc, "strong")
        return
    report.add(check_envelope_associative(env))
    report.derived.update(env.export())


def _cmd_omega1(args, report):
    alg = load_algebra(args.file)
    try:
        om = build_omega1_ternary(alg)
    except PreconditionError as exc:
        _precondition(report, exc, "strong")
        return
    report.derived.update({"dimension": alg.dim, "a0_dimension": om.k, "module_dimension": om.dim})
    if args.verify_axioms:
        for res in trimodule_check_all(om.tm):
            report.add(res)
    if args.verify_leibniz:
        report.add(check_ternary_leibniz(Calculus.universal(om)))


def _cmd_trimodule(args, report):
    tm = load_trimodule(args.file)
    report.derived.update({"kind": tm.kind, "module_dimension": tm.mdim})
    for res in trimodule_check_all(tm):
        report.add(res)


def _cmd_catalog(args, report, out):
    if args.action == "list":
        report.derived["entries"] = {k: {"summary": v.summary, "params": v.params} for k, v in CATALOG.items()}
        return True
    if not args.name:
        raise _UsageError("catalog export needs a name")
    if args.name not in CATALOG:
        raise _UsageError(f"unknown catalog entry {args.name!r}")
    out.write(export(args.name, **parse_params(args.params)))
    return False


_COMMANDS = {
    "check": _cmd_check,
    "star-check": _cmd_star,
    "derivations": _cmd_derivations,
    "envelope": _cmd_envelope,
    "omega1": _cmd_omega1,
    "trimodule-check": _cmd_trimodule,
}


def _emit(report: Report, fmt: str, out):
    out.write((report.to_text() if fmt == "text" else report.to_json()) + "\n")


def run_command(argv, out=None) -> int:
    out = out or sys.stdout
    fmt = "json"
    if "--format" in argv:
        i = argv.index("--format")
        if i + 1 < len(argv) and argv[i + 1] in ("json", "text"):
            fmt = argv[i + 1]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        report = Report("usage", error=str(exc))
        _emit(report, fmt, out)
        return EXIT_ERROR
    if args.command is None:
        _emit(Report("usage", error="no command given; see talg --help"), fmt, out)
        return EXIT_ERROR
    fmt = args.format or fmt
    report = Report(args.command)
    try:
        if args.command == "catalog":
            if not _cmd_catalog(args, report, out):
                return 0
        else:
            _COMMANDS[args.command](args, report)
    except (_UsageError, FileFormatError, ScalarParseError, OSError, KeyError, ValueError, TalgError) as exc:
        report.error = f"{type(exc).__name__}: {exc}"
    _emit(report, fmt, out)
    return report.exit_code


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        return run_command(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
