"""``permsort`` command-line workbench.

Exit codes: 0 success, 1 usage, 2 resource limit, 3 verification failure.
Primary output goes to stdout and is deterministic; timings and cache
status go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
import time
from pathlib import Path

from . import diagrams, engine, taxonomy
from .cache import ResultCache
from .classes import class_handle
from .errors import LimitExceeded, PermsortError
from .perm import Perm
from .sorters import SORTERS, SortCertificate, certificate_failure

EXIT_OK, EXIT_USAGE, EXIT_LIMIT, EXIT_VERIFY = 0, 1, 2, 3

SCAN_COLUMNS = ["spec", "n", "wst", "level_size", "rin_of_class", "counting_lower_bound", "runtime_ms"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, data, text: str) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _fmt(value) -> str | int:
    return "infinite" if value == engine.INFINITE else int(value)


def _cache(args) -> ResultCache:
    return ResultCache(args.cache_dir)


def _perm(text: str) -> Perm:
    return Perm.parse(text)


# --------------------------------------------------------------------------
# commands


def cmd_wst(args) -> int:
    cache = _cache(args)
    table = engine.sorting_time_table(args.spec, args.n, allow_large=args.allow_large, cache=cache)
    worst = table.maximum()
    witnesses = table.argmax(args.limit)
    print(cache.status, file=sys.stderr)
    _emit(args, {"spec": table.spec, "n": args.n, "wst": _fmt(worst),
                 "argmax": [p.compact() for p in witnesses]},
          f"{_fmt(worst)}\nargmax: " + ", ".join(p.compact() for p in witnesses))
    return EXIT_OK


def cmd_sort(args) -> int:
    if args.perm is not None:
        pi = _perm(args.perm)
    elif args.random is not None:
        rng = random.Random(args.seed)
        values = list(range(1, args.random + 1))
        rng.shuffle(values)
        pi = Perm(values)
    else:
        raise UsageError("sort needs --perm or --random")
    if args.optimal:
        if not args.spec:
            raise UsageError("--optimal needs --spec")
        spec = class_handle(args.spec).canonical
        steps = engine.optimal_steps(spec, pi, allow_large=args.allow_large, cache=_cache(args))
        cert = SortCertificate(pi, spec, list(steps))
    else:
        if args.sorter not in SORTERS:
            raise UsageError(f"unknown sorter {args.sorter!r}; choose from {', '.join(SORTERS)}")
        cert = SORTERS[args.sorter][0](pi)
    if args.out:
        Path(args.out).write_text(cert.to_text())
    reason = certificate_failure(cert)
    if reason is not None:  # pragma: no cover - a sorter bug
        print(f"verification failed: {reason}", file=sys.stderr)
        return EXIT_VERIFY
    _emit(args, {"input": pi.compact(), "spec": cert.spec, "steps": len(cert),
                 "certificate": cert.to_text()},
          f"{len(cert)} steps ({cert.spec})" + ("" if args.out else "\n" + cert.to_text().rstrip()))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        cert = SortCertificate.from_text(Path(args.file).read_text())
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    except PermsortError as exc:
        print(f"FAIL: malformed certificate: {exc}")
        return EXIT_VERIFY
    reason = certificate_failure(cert)
    if reason is None:
        _emit(args, {"valid": True, "steps": len(cert)}, f"OK: {len(cert)} steps")
        return EXIT_OK
    _emit(args, {"valid": False, "reason": reason}, f"FAIL: {reason}")
    return EXIT_VERIFY


def scan_rows(spec: str, ns, cache=None, allow_large=False) -> list[dict]:
    c = class_handle(spec)
    rows = []
    for n in ns:
        t0 = time.perf_counter()
        w = engine.wst(c, n, allow_large=allow_large, cache=cache)
        size = len(c.level(n, cap=engine.LARGE_CAP))
        try:
            r = engine.rin_of_class(c, n, allow_large=allow_large, cache=cache)
        except PermsortError:
            r = ""
        lb = engine.counting_lower_bound(n, size) if size else ""
        rows.append({"spec": c.canonical, "n": n, "wst": _fmt(w), "level_size": size,
                     "rin_of_class": r, "counting_lower_bound": lb,
                     "runtime_ms": round((time.perf_counter() - t0) * 1000, 1)})
    return rows


def cmd_scan(args) -> int:
    cache = _cache(args)
    rows = scan_rows(args.spec, range(args.n_min, args.n_max + 1), cache, args.allow_large)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SCAN_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    if args.json:
        print(json.dumps(rows, sort_keys=True))
    elif not args.out:
        sys.stdout.write(buf.getvalue())
    print(cache.status, file=sys.stderr)
    return EXIT_OK


def cmd_classify(args) -> int:
    cache = _cache(args)
    c = class_handle(args.spec)
    key = f"classify|{c.canonical}|{args.n_max}|{args.depth}"
    data = cache.load_json(key)
    if data is None:
        verdict = taxonomy.classify(c, args.n_max, args.depth, allow_large=args.allow_large, cache=cache)
        data = verdict.to_json()
        cache.store_json(key, data)
    lines = [f"{data['band']} ({data['confidence']})"]
    lines += [f"  {e['check']}: {e['result']} {json.dumps(e['witness'], sort_keys=True)}"
              for e in data["evidence"]]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_diagram(args) -> int:
    if args.steps:
        steps = [_perm(s) for s in args.steps.split(",")]
    elif args.random:
        rng = random.Random(args.seed)
        t, n = args.random
        steps = [Perm(rng.sample(range(1, n + 1), n)) for _ in range(t)]
    else:
        steps = None
    if steps is not None:
        sd = diagrams.build_sorting_diagram(steps)
        g = sd.graph
        info = {"n": sd.n, "t": sd.t, "vertices": g.n, "edges": len(g.edges),
                "crossings": diagrams.straight_line_crossings(sd),
                "composition": sd.composed().compact()}
    elif args.perm:
        pi = _perm(args.perm)
        g = diagrams.adjacency_graph(pi)
        info = {"n": g.n, "vertices": g.n, "edges": len(g.edges)}
    else:
        raise UsageError("diagram needs --steps, --random or --perm")
    if args.treewidth:
        info["treewidth_upper"] = diagrams.treewidth_upper(g)
        try:
            info["treewidth_exact"] = diagrams.treewidth_exact(g)
        except LimitExceeded:
            info["treewidth_exact"] = None
    body = diagrams.graph_to_json(g) if args.format == "json" else diagrams.export_dot(g)
    if args.out:
        Path(args.out).write_text(body if body.endswith("\n") else body + "\n")
        _emit(args, info, " ".join(f"{k}={v}" for k, v in info.items()))
    elif args.json:
        print(json.dumps({**info, "graph": diagrams.Graph.to_json(g)}, sort_keys=True))
    else:
        sys.stdout.write(body if body.endswith("\n") else body + "\n")
        print(" ".join(f"{k}={v}" for k, v in info.items()), file=sys.stderr)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    c = class_handle(args.spec)
    members = c.level(args.n, cap=engine.LARGE_CAP if args.allow_large else engine.BFS_CAP)
    if args.count:
        _emit(args, {"spec": c.canonical, "n": args.n, "count": len(members)}, str(len(members)))
    else:
        _emit(args, [p.compact() for p in members], "\n".join(str(p) for p in members))
    return EXIT_OK


def cmd_rin(args) -> int:
    cache = _cache(args)
    if args.perm:
        pi = _perm(args.perm)
        value = engine.rin(pi, allow_large=args.allow_large, cache=cache)
        _emit(args, {"perm": pi.compact(), "rin": value}, str(value))
    elif args.spec and args.n is not None:
        value = engine.rin_of_class(args.spec, args.n, allow_large=args.allow_large, cache=cache)
        _emit(args, {"spec": class_handle(args.spec).canonical, "n": args.n, "rin_of_class": value},
              str(value))
    else:
        raise UsageError("rin needs --perm, or --spec with --n")
    return EXIT_OK


def cmd_member(args) -> int:
    c = class_handle(args.spec)
    pi = _perm(args.perm)
    ok = c.member(pi)
    _emit(args, {"spec": c.canonical, "perm": pi.compact(), "member": ok}, "true" if ok else "false")
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS)
    common.add_argument("--allow-large", action="store_true", default=argparse.SUPPRESS,
                        help="raise the BFS cap from 10 to 11")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = _Parser(prog="permsort", description="Sorting with hereditary permutation classes.")
    p.add_argument("--json", action="store_true")
    p.add_argument("--cache-dir", default=None, help="defaults to $PERMSORT_CACHE or .permsort-cache/")
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("wst", cmd_wst, "worst-case sorting time by BFS")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--limit", type=int, default=3, help="argmax permutations to print")

    sp = add("sort", cmd_sort, "sort a permutation and emit a certificate")
    sp.add_argument("--sorter", default=None, help="|".join(SORTERS))
    sp.add_argument("--optimal", action="store_true", help="BFS-optimal steps for --spec")
    sp.add_argument("--spec")
    sp.add_argument("--perm")
    sp.add_argument("--random", type=int, metavar="N", help="sort a random permutation of size N")
    sp.add_argument("--out", help="certificate file")

    sp = add("verify", cmd_verify, "check a certificate file")
    sp.add_argument("file")

    sp = add("scan", cmd_scan, "CSV table of wst and diagnostics over a size range")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--n-min", type=int, default=3)
    sp.add_argument("--n-max", type=int, default=7)
    sp.add_argument("--out")

    sp = add("classify", cmd_classify, "place a class into a sorting-time band")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--n-max", type=int, default=7)
    sp.add_argument("--depth", type=int, default=taxonomy.DEFAULT_DEPTH)

    sp = add("diagram", cmd_diagram, "sorting diagram or adjacency graph as DOT/JSON")
    sp.add_argument("--steps", help="comma-separated step tuple, e.g. 2413,3214,3412")
    sp.add_argument("--perm", help="adjacency graph of a permutation")
    sp.add_argument("--random", type=int, nargs=2, metavar=("T", "N"))
    sp.add_argument("--format", choices=["dot", "json"], default="dot")
    sp.add_argument("--treewidth", action="store_true")
    sp.add_argument("--out")

    sp = add("enumerate", cmd_enumerate, "list the members of a class of one size")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--count", action="store_true")

    sp = add("rin", cmd_rin, "reduced inversion number of a permutation or class level")
    sp.add_argument("--perm")
    sp.add_argument("--spec")
    sp.add_argument("--n", type=int)

    sp = add("member", cmd_member, "class membership test")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--perm", required=True)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except LimitExceeded as exc:
        print(f"permsort: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, PermsortError, ValueError) as exc:
        print(f"permsort: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
