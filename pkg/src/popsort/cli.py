"""
Command-line interface: ``python -m popsort <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 size guard exceeded (rerun with ``--force``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import classes, enumeration, preimage, verify, words
from .machines import MachineConfig, dfs_sortable, psbp, psbw, run
from .perms import (GuardError, ParseError, PatternBasis, check_guard, format_permutation,
                    parse_permutation)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
GUARD = 8


class UsageError(Exception):
    pass


def _perm(text: str) -> tuple[int, ...]:
    return parse_permutation(text)


def _fmt(p) -> str:
    return format_permutation(p, compact=len(p) < 10)


def _config(text: str) -> MachineConfig:
    try:
        return MachineConfig.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(args, text_lines: list[str], payload, csv_rows: list[Sequence] | None = None) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=None))
    elif args.format == "csv" and csv_rows is not None:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(csv_rows)
        sys.stdout.write(buf.getvalue())
    else:
        for line in text_lines:
            print(line)


def _guard(args, n: int, what: str) -> None:
    check_guard(n, GUARD, args.force, what)


# -- subcommands ----------------------------------------------------------------------

def cmd_sort(args) -> int:
    config = _config(args.machine)
    p = _perm(args.perm)
    if config.kind == "parallel-pops" and config.k == 2 and config.bypass and args.eager:
        outcome = psbp(p, trace=bool(args.trace), eager=True)
    else:
        outcome = run(config, p, trace=bool(args.trace))
    status = "stuck" if outcome.stuck else ("sorted" if outcome.sorted else "unsorted")
    if args.trace == "json":
        print(outcome.trace.to_json())
        return EXIT_OK
    lines = [f"{_fmt(outcome.output)} {status}"]
    if args.trace == "text":
        for s in outcome.trace.steps:
            stacks = " | ".join(" ".join(map(str, c)) or "-" for c in s.stacks)
            i = "-" if s.i is None else s.i
            v = "" if s.value is None else s.value
            lines.append(f"  {i!s:>3} {s.op:<8} {v!s:>3}  [{stacks}]  out={s.out_len}")
    payload = {"machine": config.name, "input": list(p), "output": list(outcome.output),
               "sorted": outcome.sorted, "stuck": outcome.stuck}
    _emit(args, lines, payload, [["input", "output", "status"], [_fmt(p), _fmt(outcome.output), status]])
    return EXIT_OK


def cmd_sortable(args) -> int:
    config = _config(args.machine)
    p = _perm(args.perm)
    ok = dfs_sortable(p, config) if args.oracle else run(config, p).sorted
    word = "sortable" if ok else "unsortable"
    _emit(args, [word], {"machine": config.name, "input": list(p), "sortable": ok},
          [["input", "sortable"], [_fmt(p), ok]])
    return EXIT_OK


def cmd_preimages(args) -> int:
    s = _perm(args.perm)
    if args.brute:
        found = preimage.brute_preimages(s, force=args.force)
    else:
        found = preimage.preimages(s)
    ordered = sorted(found)
    _emit(args, [_fmt(p) for p in ordered], [list(p) for p in ordered],
          [["preimage"]] + [[_fmt(p)] for p in ordered])
    return EXIT_OK


def cmd_word2perm(args) -> int:
    p = words.word_to_perm(args.word)
    _emit(args, [_fmt(p)], list(p), [["word", "perm"], [args.word, _fmt(p)]])
    return EXIT_OK


def cmd_perm2word(args) -> int:
    p = _perm(args.perm)
    w = words.perm_to_word(p)
    _emit(args, [w], {"perm": list(p), "word": w, "in_W": words.word_in_W(w)},
          [["perm", "word"], [_fmt(p), w]])
    return EXIT_OK


def cmd_perm2path(args) -> int:
    p = _perm(args.perm)
    m = words.perm_to_path(p)
    _emit(args, [m], {"perm": list(p), "path": m, "in_M": words.path_in_M(m)},
          [["perm", "path"], [_fmt(p), m]])
    return EXIT_OK


def cmd_path2word(args) -> int:
    w = words.path_to_word(args.path)
    _emit(args, [w], {"path": args.path, "word": w}, [["path", "word"], [args.path, w]])
    return EXIT_OK


_NAMED_BASES = {
    "psb": lambda: PatternBasis.of("231", "4213"),
    "popstack": lambda: PatternBasis.of("231", "312"),
    "stack": lambda: PatternBasis.of("231"),
    "queue": lambda: PatternBasis.of("321"),
    "bubble": lambda: PatternBasis.of("231", "321"),
    "psbp": classes.psbp_basis,
    "parallel-2-bypass": classes.psbp_basis,
    "parallel-2-nobypass": classes.parallel_nobypass_basis,
}


def cmd_basis(args) -> int:
    if args.preimage_of:
        verdict = classes.preimage_class(_perm(args.preimage_of))
        if verdict.is_class:
            lines = verdict.basis.lines()
            _emit(args, lines, {"pattern": list(verdict.target), "class": True, "basis": lines},
                  [["pattern"]] + [[x] for x in lines])
        else:
            sigma, pi = verdict.witness
            lines = [f"not a class; witness sigma={_fmt(sigma)} pi={_fmt(pi)} "
                     f"verified={verdict.verify()}"]
            _emit(args, lines, {"pattern": list(verdict.target), "class": False,
                                "sigma": list(sigma), "pi": list(pi), "verified": verdict.verify()},
                  [["sigma", "pi", "verified"], [_fmt(sigma), _fmt(pi), verdict.verify()]])
        return EXIT_OK
    if not args.name:
        raise UsageError("basis needs a name or --preimage-of")
    key = args.name.lower()
    if key in _NAMED_BASES:
        basis = _NAMED_BASES[key]()
    else:
        try:
            basis = classes.composition_basis(args.name)
        except ValueError as exc:
            raise UsageError(f"unknown basis {args.name!r}; choose from "
                             f"{', '.join(list(_NAMED_BASES) + list(classes.COMPOSITIONS))}") from exc
    lines = basis.lines()
    _emit(args, lines, lines, [["pattern"]] + [[x] for x in lines])
    return EXIT_OK


def cmd_discover(args) -> int:
    config = _config(args.machine)
    _guard(args, args.max_len, "basis discovery")
    found = sorted(classes.discover_basis(config, args.max_len, force=True), key=lambda t: (len(t), t))
    lines = [_fmt(p) for p in found]
    _emit(args, lines, lines, [["pattern"]] + [[x] for x in lines])
    return EXIT_OK


def cmd_enumerate(args) -> int:
    kind = args.kind
    if kind == "words":
        rows = words.count_rows(args.max_n)
        header = ["n", "W", "M", "F_2n-1"]
        _emit(args, [" ".join(map(str, r)) for r in rows], [dict(zip(header, r)) for r in rows],
              [header] + [list(r) for r in rows])
        return EXIT_OK
    _guard(args, args.max_n, "enumeration sweep")
    if kind == "preimages":
        rows = preimage.count_rows(args.max_n, force=True)
        header = ["n", "c0", "c1", "c2", "brute-c0", "brute-c1", "brute-c2"]
        _emit(args, [" ".join(map(str, r)) for r in rows], [dict(zip(header, r)) for r in rows],
              [header] + [list(r) for r in rows])
        return EXIT_OK
    config = _config(args.machine)
    counter = enumeration.count_inverse_sortable if args.inverse else enumeration.count_sortable_by
    counts = tuple(counter(config, n, oracle=args.oracle, force=True, workers=args.workers)
                   for n in range(1, args.max_n + 1))
    reference: tuple[int, ...] = ()
    if config.kind == "psb":
        reference = tuple(enumeration.fib(2 * n - 1) for n in range(1, args.max_n + 1))
    elif config.kind == "parallel-pops" and config.k == 2 and config.bypass:
        reference = tuple(enumeration.PSBP_GF.expand(args.max_n + 1)[1:])
    label = config.name + (" inverse" if args.inverse else "") + (" oracle" if args.oracle else "")
    report = enumeration.SequenceReport(label, counts, reference)
    _emit_reports(args, [report])
    return EXIT_OK


def _emit_reports(args, reports) -> None:
    rows = [r for rep in reports for r in rep.rows()]
    lines = [f"{label} n={n}: {c}" + (f" (reference {ref}, {'match' if m else 'MISMATCH'})" if ref != "" else "")
             for label, n, c, ref, m in rows]
    payload = [{"label": r.label, "computed": list(r.computed), "reference": list(r.reference),
                "agree": r.agree, "first_divergence": r.first_divergence} for r in reports]
    if args.format == "csv":
        sys.stdout.write(enumeration.reports_csv(reports))
    else:
        _emit(args, lines, payload)


def cmd_compose(args) -> int:
    name = classes.composition_name(args.name)
    if args.perm:
        p = _perm(args.perm)
        outcome = classes.composition_machines(name)(p)
        status = "sorted" if outcome.sorted else "unsorted"
        _emit(args, [f"{_fmt(outcome.output)} {status}"],
              {"composition": name, "input": list(p), "output": list(outcome.output), "sorted": outcome.sorted},
              [["input", "output", "status"], [_fmt(p), _fmt(outcome.output), status]])
        return EXIT_OK
    _guard(args, args.max_n, "composition sweep")
    reports = enumeration.composition_counts(name, args.max_n, inverse_class=args.inverse,
                                             force=True, workers=args.workers)
    _emit_reports(args, reports)
    return EXIT_OK


def cmd_psbw(args) -> int:
    outcome = psbw(args.word, args.k)
    out = "".join(map(str, outcome.output)) if all(x < 10 for x in outcome.output) \
        else " ".join(map(str, outcome.output))
    status = "sorted" if outcome.sorted else "unsorted"
    _emit(args, [f"{out} {status}"], {"input": args.word, "k": args.k, "output": list(outcome.output),
                                      "sorted": outcome.sorted},
          [["input", "k", "output", "status"], [args.word, args.k, out, status]])
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    if any(n not in verify.SUITES for n in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(verify.SUITES)}")
    checks = []
    for name in names:
        checks += verify.run_suite(name, args.max_n, force=args.force)
    failed = any(c.status == "FAIL" for c in checks)
    if args.format == "json":
        print(json.dumps([{"suite": c.suite, "check": c.name, "status": c.status, "detail": c.detail}
                          for c in checks]))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "check", "status", "detail"])
        w.writerows([c.suite, c.name, c.status, c.detail] for c in checks)
        sys.stdout.write(buf.getvalue())
    else:
        print(verify.format_table(checks))
        print(f"{sum(c.status == 'PASS' for c in checks)} passed, "
              f"{sum(c.status == 'FAIL' for c in checks)} failed, "
              f"{sum(c.status == 'REPORT' for c in checks)} reported")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_conjecture(args) -> int:
    report = enumeration.conjecture_simple_psbp(args.max_n, force=args.force)
    _emit_reports(args, [report])
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--force", action="store_true", help="lift the default size guard (up to 10)")
    common.add_argument("--workers", type=int, default=None,
                        help="processes for sweeps (default: POPSORT_WORKERS or 1)")

    parser = argparse.ArgumentParser(prog="popsort", description="Pop stacks with bypass: sorting, preimages, bases, counts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sort", parents=[common], help="run a machine on a permutation")
    p.add_argument("perm")
    p.add_argument("--machine", default="psb")
    p.add_argument("--trace", choices=("text", "json"))
    p.add_argument("--eager", action="store_true", help="psbp only: pop a stack as soon as its top is due")
    p.set_defaults(func=cmd_sort)

    p = sub.add_parser("sortable", parents=[common], help="decide sortability")
    p.add_argument("perm")
    p.add_argument("--machine", default="psb")
    p.add_argument("--oracle", action="store_true", help="search all operation sequences")
    p.set_defaults(func=cmd_sortable)

    p = sub.add_parser("preimages", parents=[common], help="all preimages under psb")
    p.add_argument("perm")
    p.add_argument("--brute", action="store_true", help="scan S_n instead of running the recursion")
    p.set_defaults(func=cmd_preimages)

    for name, arg, func in (("word2perm", "word", cmd_word2perm), ("perm2word", "perm", cmd_perm2word),
                            ("perm2path", "perm", cmd_perm2path), ("path2word", "path", cmd_path2word)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument(arg)
        p.set_defaults(func=func)

    p = sub.add_parser("basis", parents=[common], help="print a named basis, or the basis of psb^-1(Av(rho))")
    p.add_argument("name", nargs="?")
    p.add_argument("--preimage-of", metavar="RHO")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("discover-basis", parents=[common], help="minimal unsortable patterns")
    p.add_argument("--machine", default="psb")
    p.add_argument("--max-len", type=int, default=6)
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("enumerate", parents=[common], help="count sortable permutations, words or preimages")
    p.add_argument("--kind", choices=("sortable", "words", "preimages"), default="sortable")
    p.add_argument("--machine", default="psb")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--inverse", action="store_true", help="count permutations whose inverse is sortable")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("compose", parents=[common], help="run or count a composition such as que-psb")
    p.add_argument("name")
    p.add_argument("perm", nargs="?")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("psbw", parents=[common], help="sort a k-regular word over 0..n-1")
    p.add_argument("word")
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_psbw)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", default="all")
    p.add_argument("--max-n", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", parents=[common], help="simple sortable permutations vs the conjecture")
    p.add_argument("--max-n", type=int, default=9)
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ParseError, UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
