"""Command-line front end: ``compgraph <command> ...``.

Exit codes: 0 yes / witness / all checks pass, 1 no / exhausted / a check
failed, 2 usage error, 3 search budget exhausted (inconclusive), 4 I/O or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .analysis import check_all, refute_by_counting
from .core import InvalidTournament, validate_sizes
from .formats import FormatError, dumps, loads
from .oracle import exists_complete_orientation, synthesize_witness
from .search import EXHAUSTED, INCONCLUSIVE, WITNESS, SearchConfig, exhaustive_search, parse_prune, refute_444
from .verify import LEVELS, verify_paper
from .witnesses import WitnessId, load_witness

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_IO = 0, 1, 2, 3, 4
_SEARCH_EXIT = {WITNESS: EXIT_OK, EXHAUSTED: EXIT_NO, INCONCLUSIVE: EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


def _sizes(values: Sequence[int]) -> tuple[int, ...]:
    try:
        validate_sizes(values)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return tuple(values)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_oracle(args) -> int:
    v = exists_complete_orientation(_sizes(args.sizes))
    _emit(args, {"sizes": list(args.sizes), "exists": v.exists, "clause": v.clause}, str(v))
    return EXIT_OK if v.exists else EXIT_NO


def cmd_witness(args) -> int:
    sizes = _sizes(args.sizes)
    t = synthesize_witness(sizes)
    if t is None:
        v = exists_complete_orientation(sizes)
        print(f"no orientation of K_{{{','.join(map(str, sizes))}}} has a complete competition graph "
              f"(clause={v.clause})", file=sys.stderr)
        return EXIT_NO
    fmt = "json" if args.json else args.format
    sys.stdout.write(dumps(t, fmt, comment=f"witness for {' '.join(map(str, sizes))}"))
    return EXIT_OK


def cmd_dump_witness(args) -> int:
    try:
        wid = WitnessId(args.id.upper())
    except ValueError:
        raise UsageError(f"unknown witness {args.id!r}; choose from {', '.join(w.value for w in WitnessId)}") from None
    fmt = "json" if args.json else args.format
    sys.stdout.write(dumps(load_witness(wid), fmt, comment=wid.value))
    return EXIT_OK


def cmd_check(args) -> int:
    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file).read()
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        t = loads(text)
        t.require_valid()
    except InvalidTournament as exc:
        print(f"invalid tournament: {exc}", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_IO
    except (FormatError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    report = check_all(t)
    _emit(args, report.as_dict(), report.table())
    return EXIT_OK if report.passed and report.complete else EXIT_NO


def _search_config(args) -> SearchConfig:
    try:
        return SearchConfig(
            prune=parse_prune(args.prune),
            max_nodes=args.max_nodes,
            workers=args.workers,
            symmetry_fix=args.symmetry,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _search_payload(out) -> dict:
    return {
        "sizes": list(out.sizes),
        "status": out.status,
        "nodes_explored": out.nodes_explored,
        "prunes_by_rule": out.prunes_by_rule,
        "wall_time": out.wall_time,
        "symmetry_reduced": out.symmetry_reduced,
        "witness": None if out.witness is None else json.loads(dumps(out.witness, "json")),
        **({"details": out.details} if out.details else {}),
    }


def _run_search(args, sizes: tuple[int, ...], config: SearchConfig) -> int:
    if sizes == (4, 4, 4) and not args.prune_given:
        out = refute_444()
    else:
        try:
            out = exhaustive_search(sizes, config)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    text = out.summary()
    if out.witness is not None:
        text += "\n" + dumps(out.witness, "dmt").rstrip()
    _emit(args, _search_payload(out), text)
    return _SEARCH_EXIT[out.status]


def cmd_search(args) -> int:
    return _run_search(args, _sizes(args.sizes), _search_config(args))


def cmd_refute(args) -> int:
    sizes = _sizes(args.sizes)
    config = _search_config(args)
    ref = refute_by_counting(sizes)
    if ref.refuted:
        _emit(args, {"sizes": list(sizes), "refuted": True, "method": "counting",
                     "reasons": [{"condition": c, "detail": d} for c, d in ref.reasons]}, ref.summary())
        return EXIT_NO
    if sum(sizes) > config.max_sum:
        msg = f"{ref.summary()}; {sum(sizes)} vertices is over the search cap of {config.max_sum}"
        _emit(args, {"sizes": list(sizes), "refuted": False, "method": "counting", "status": INCONCLUSIVE}, msg)
        return EXIT_INCONCLUSIVE
    return _run_search(args, sizes, config)


def cmd_verify(args) -> int:
    def show(item) -> None:
        if not args.json:
            print(item.line(), flush=True)

    if not args.json:
        print(f"verify-paper level={args.level} seed={args.seed}", flush=True)
    report = verify_paper(args.level, seed=args.seed, progress=show)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        print("all green" if report.passed else "FAILED")
    return EXIT_OK if report.passed else EXIT_NO


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="compgraph", description="Complete competition graphs of multipartite tournaments.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func, help_: str, sizes: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        if sizes:
            sp.add_argument("sizes", nargs="+", type=int, metavar="n", help="part sizes, nonincreasing")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    add("oracle", cmd_oracle, "decide whether K_{n1,...,nk} has such an orientation")
    w = add("witness", cmd_witness, "print an orientation with complete competition graph")
    w.add_argument("--format", choices=("dmt", "json", "dot"), default="dmt")
    d = add("dump-witness", cmd_dump_witness, "print one embedded construction", sizes=False)
    d.add_argument("id", help="QR7 or A1..A9")
    d.add_argument("--format", choices=("dmt", "json", "dot"), default="dmt")
    c = add("check", cmd_check, "check the necessary conditions on a DMT/JSON file", sizes=False)
    c.add_argument("file", help="path, or - for stdin")
    for name, func, help_ in (("search", cmd_search, "exhaustive pruned search"),
                              ("refute", cmd_refute, "counting refutation, then search")):
        s = add(name, func, help_)
        s.add_argument("--prune", default=None, help="all | none | comma-separated rule ids (default all)")
        s.add_argument("--max-nodes", type=int, default=None)
        s.add_argument("--workers", type=int, default=1)
        s.add_argument("--symmetry", action="store_true", help="fix vertex 0's block up to symmetry")
    v = add("verify-paper", cmd_verify, "run the verification suite", sizes=False)
    v.add_argument("--level", default="quick", help="quick | full")
    v.add_argument("--seed", type=int, default=0)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if hasattr(args, "prune"):
            args.prune_given = args.prune is not None
            args.prune = args.prune or "all"
        if getattr(args, "level", None) is not None and args.level not in LEVELS:
            raise UsageError(f"--level must be one of {', '.join(LEVELS)}, got {args.level!r}")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # Size cap and similar input checks raised deep inside a command.
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
