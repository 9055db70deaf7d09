"""Command-line front end: products, certified constructions, certificate
verification, exact search, and bound-family tables.

Exit codes: 0 success or verification pass, 1 verification failure, 2 parse
or parameter error, 3 search timeout, 4 certificate/graph hash mismatch.

Graph arguments are file paths in the canonical text format, or inline
specs of the form 'complete:5', 'cycle:7', 'star:4', 'path:6',
'hamming:3,2'.  Output is deterministic; `--strict` additionally drops
timing lines so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import constructions as cons
from .errors import (ColoringMissingError, ConsistencyError, FactorModelError,
                     ParameterError, ParseError, SearchTimeout, StructureError)
from .expansion import (OddExpansionModel, parse_model, serialize_model,
                        verify_odd_expansion)
from .graphs import (Graph, make_named_graph, product, read_graph_text,
                     write_graph_text)
from .oracle import SearchBudget, has_odd_clique_minor, odd_hadwiger

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_PARAM = 2
EXIT_TIMEOUT = 3
EXIT_HASH_MISMATCH = 4


class _CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_PARAM):
        super().__init__(message)
        self.code = code


def _load_graph(spec: str) -> Graph:
    if ":" in spec and not Path(spec).exists():
        family, _, rest = spec.partition(":")
        try:
            params = [int(x) for x in rest.split(",") if x.strip() != ""]
        except ValueError:
            raise _CliError(f"bad inline graph spec {spec!r}")
        return make_named_graph(family, params)
    try:
        text = Path(spec).read_text()
    except OSError as e:
        raise _CliError(f"cannot read graph file {spec}: {e}")
    try:
        return read_graph_text(text)
    except ParseError as e:
        raise _CliError(f"{spec}: {e}")


def _load_certificate(path: str) -> tuple[OddExpansionModel, str]:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise _CliError(f"cannot read certificate {path}: {e}")
    try:
        return parse_model(text)
    except ParseError as e:
        raise _CliError(f"{path}: {e}")


def _write_text(path: str, text: str):
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise _CliError(f"cannot write {path}: {e}")


def _parse_range(text: str) -> range:
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            return range(int(lo), int(hi) + 1)
        except ValueError:
            raise _CliError(f"bad range {text!r}, expected 'a..b'")
    try:
        v = int(text)
    except ValueError:
        raise _CliError(f"bad range {text!r}, expected 'a..b' or a single integer")
    return range(v, v + 1)


def _budget_from_args(args) -> SearchBudget:
    return SearchBudget(max_vertices=args.max_n, time_limit=args.time,
                        node_limit=args.nodes)


# ----------------------------------------------------------------------
# Subcommands


def cmd_product(args) -> int:
    g = _load_graph(args.first)
    h = _load_graph(args.second)
    result = product(args.kind, g, h)
    _write_text(args.out, write_graph_text(result))
    print(f"n={result.n} m={result.m}")
    return EXIT_OK


def _factor_inputs(args):
    for opt in ("factor_a", "model_a", "factor_b", "model_b"):
        if getattr(args, opt) is None:
            raise _CliError(f"theorem {args.theorem!r} needs --{opt.replace('_', '-')}")
    g = _load_graph(args.factor_a)
    mg, hg = _load_certificate(args.model_a)
    if hg != g.content_hash():
        raise _CliError(f"--model-a hash does not match --factor-a", EXIT_HASH_MISMATCH)
    h = _load_graph(args.factor_b)
    mh, hh = _load_certificate(args.model_b)
    if hh != h.content_hash():
        raise _CliError(f"--model-b hash does not match --factor-b", EXIT_HASH_MISMATCH)
    return g, mg, h, mh


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise _CliError(f"theorem {args.theorem!r} needs --{name}")
    return value


def cmd_construct(args) -> int:
    t0 = time.monotonic()
    theorem = args.theorem
    if theorem == "cartesian-complete":
        s, t = _need(args, "s"), _need(args, "t")
        model = cons.cartesian_complete_model(s, t).model
        host = product("cartesian", make_named_graph("complete", [s]),
                       make_named_graph("complete", [t]))
    elif theorem == "direct-k3":
        t = _need(args, "t")
        model = cons.direct_k3_model(t)
        host = product("direct", make_named_graph("complete", [t]),
                       make_named_graph("complete", [3]))
    elif theorem == "direct-general":
        t, s = _need(args, "t"), _need(args, "s")
        model = cons.direct_general_model(t, s)
        host = product("direct", make_named_graph("complete", [t]),
                       make_named_graph("complete", [s]))
    elif theorem == "hamming":
        n, d = _need(args, "n"), _need(args, "d")
        model = cons.hamming_model(n, d)
        host = make_named_graph("hamming", [n, d])
    elif theorem == "stars":
        r, t = _need(args, "r"), _need(args, "t")
        model = cons.star_model(r, t)
        host = product("strong", make_named_graph("star", [r]),
                       make_named_graph("star", [t]))
    elif theorem in ("strong", "lex"):
        g, mg, h, mh = _factor_inputs(args)
        kind = "strong" if theorem == "strong" else "lexicographic"
        model = cons.strong_model(g, mg, h, mh, kind)
        host = product(kind, g, h)
    elif theorem == "cartesian-lift":
        g, mg, h, mh = _factor_inputs(args)
        base = None
        if args.base is not None:
            bmodel, bhash = _load_certificate(args.base)
            s, t = mg.clique_order, mh.clique_order
            base = cons.BaseModel(s, t, bmodel)
            if bhash != base.host().content_hash():
                raise _CliError("--base hash does not match the factor-order host",
                                EXIT_HASH_MISMATCH)
        model = cons.cartesian_lift(g, mg, h, mh, base)
        host = product("cartesian", g, h)
    elif theorem == "best":
        g, mg, h, mh = _factor_inputs(args)
        if args.kind is None:
            raise _CliError("theorem 'best' needs --kind")
        found = cons.best_lower_bound(g, mg, h, mh, args.kind)
        if found is None:
            print("no construction applies")
            return EXIT_OK
        _, model = found
        host = product(args.kind, g, h)
    else:
        raise _CliError(f"unknown theorem id {theorem!r}")

    text = serialize_model(model, host.content_hash())
    _write_text(args.out, text)
    if args.graph_out:
        _write_text(args.graph_out, write_graph_text(host))
    reparsed, _ = parse_model(Path(args.out).read_text())
    verdict = verify_odd_expansion(host, reparsed, strict=True)

    print(f"command: construct {theorem}")
    print(f"host: n={host.n} m={host.m} hash={host.content_hash()}")
    print(f"order: {model.clique_order}")
    print(f"verdict: {verdict.summary()}")
    print(f"certificate: {args.out}")
    if not args.strict:
        print(f"time_s: {time.monotonic() - t0:.3f}")
    return EXIT_OK if verdict.passed else EXIT_VERIFY_FAIL


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    model, stored_hash = _load_certificate(args.certificate)
    actual = g.content_hash()
    if stored_hash != actual and not args.ignore_hash:
        print(f"HASH-MISMATCH certificate={stored_hash} graph={actual}")
        return EXIT_HASH_MISMATCH
    verdict = verify_odd_expansion(g, model, strict=args.strict)
    if verdict.passed:
        print(f"PASS order={model.clique_order}")
        return EXIT_OK
    print(verdict.summary())
    if verdict.message:
        print(f"detail: {verdict.message}")
    return EXIT_VERIFY_FAIL


def cmd_exact(args) -> int:
    g = _load_graph(args.graph)
    budget = _budget_from_args(args)
    t0 = time.monotonic()
    result = odd_hadwiger(g, budget)
    out = args.out or (args.graph + ".oh.cert" if Path(args.graph).exists()
                       else "exact.oh.cert")
    _write_text(out, serialize_model(result.certificate, g.content_hash()))
    if result.status == "exact":
        print(f"EXACT {result.value}")
    elif result.status == "lower_bound_only":
        print(f"LOWER_BOUND {result.value}")
    else:
        print(f"TIMEOUT best={result.value}")
    print(f"certificate: {out}")
    if not args.strict:
        print(f"nodes: {result.nodes}")
        print(f"time_s: {time.monotonic() - t0:.3f}")
    return EXIT_TIMEOUT if result.status == "timeout" else EXIT_OK


_TABLE_BUILDERS = {
    "cartesian-complete": {
        "params": ("s", "t"),
        "defaults": ("2..6", "2..6"),
    },
    "direct-k3": {
        "params": ("t",),
        "defaults": ("6..10",),
    },
    "direct-general": {
        "params": ("t", "s"),
        "defaults": ("4..6", "3..6"),
    },
    "stars": {
        "params": ("r", "t"),
        "defaults": ("1..4", "1..4"),
    },
}


def _table_row(which, values):
    if which == "cartesian-complete":
        s, t = values
        model = cons.cartesian_complete_model(s, t).model
        host = product("cartesian", make_named_graph("complete", [s]),
                       make_named_graph("complete", [t]))
    elif which == "direct-k3":
        (t,) = values
        model = cons.direct_k3_model(t)
        host = product("direct", make_named_graph("complete", [t]),
                       make_named_graph("complete", [3]))
    elif which == "direct-general":
        t, s = values
        model = cons.direct_general_model(t, s)
        host = product("direct", make_named_graph("complete", [t]),
                       make_named_graph("complete", [s]))
    else:
        r, t = values
        model = cons.star_model(r, t)
        host = product("strong", make_named_graph("star", [r]),
                       make_named_graph("star", [t]))
    return model, host


def cmd_table(args) -> int:
    spec = _TABLE_BUILDERS.get(args.which)
    if spec is None:
        raise _CliError(f"unknown table family {args.which!r}")
    ranges = []
    for name, default in zip(spec["params"], spec["defaults"]):
        given = getattr(args, name)
        ranges.append(_parse_range(given if given is not None else default))
    header = list(spec["params"]) + ["order", "verdict"]
    if args.oracle:
        header.append("oracle")
    print(" ".join(header))
    any_fail = False

    def rows(rs):
        if len(rs) == 1:
            for a in rs[0]:
                yield (a,)
        else:
            for a in rs[0]:
                for b in rs[1]:
                    yield (a, b)

    for values in rows(ranges):
        model, host = _table_row(args.which, values)
        verdict = verify_odd_expansion(host, model, strict=True)
        cells = [str(v) for v in values] + [str(model.clique_order),
                                            "PASS" if verdict.passed else "FAIL"]
        if not verdict.passed:
            any_fail = True
        if args.oracle:
            if host.n <= args.max_n:
                try:
                    found = has_odd_clique_minor(host, model.clique_order,
                                                 _budget_from_args(args))
                    cells.append("ok" if found is not None else "absent")
                    if found is None:
                        any_fail = True
                except SearchTimeout:
                    cells.append("timeout")
            else:
                cells.append("-")
        print(" ".join(cells))
    return EXIT_VERIFY_FAIL if any_fail else EXIT_OK


# ----------------------------------------------------------------------
# Argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oddminors",
        description="Certified lower bounds and exact search for odd clique "
                    "minors in graph products.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("product", help="write a product graph in canonical text form")
    p.add_argument("kind", choices=("cartesian", "direct", "lexicographic", "strong"))
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("construct", help="emit and self-verify a certificate")
    p.add_argument("theorem", choices=("cartesian-complete", "cartesian-lift",
                                       "strong", "lex", "stars", "direct-k3",
                                       "direct-general", "hamming", "best"))
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--kind", choices=("cartesian", "direct", "lexicographic", "strong"))
    p.add_argument("--factor-a", dest="factor_a")
    p.add_argument("--model-a", dest="model_a")
    p.add_argument("--factor-b", dest="factor_b")
    p.add_argument("--model-b", dest="model_b")
    p.add_argument("--base")
    p.add_argument("--out", required=True)
    p.add_argument("--graph-out", dest="graph_out")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.add_argument("--strict", action="store_true",
                   help="require a stored connector for every tree pair")
    p.add_argument("--ignore-hash", action="store_true", dest="ignore_hash")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exact", help="exact odd clique minor number by search")
    p.add_argument("graph")
    p.add_argument("--out")
    p.add_argument("--time", type=float, default=60.0)
    p.add_argument("--nodes", type=int, default=100_000_000)
    p.add_argument("--max-n", dest="max_n", type=int, default=16)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--jobs", type=int, default=1,
                   help="reserved; the canonical-order search runs single-threaded")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("table", help="reproduce a bound family as a text table")
    p.add_argument("which", choices=tuple(_TABLE_BUILDERS))
    p.add_argument("--s")
    p.add_argument("--t")
    p.add_argument("--r")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check each row by exhaustive search when small enough")
    p.add_argument("--time", type=float, default=60.0)
    p.add_argument("--nodes", type=int, default=100_000_000)
    p.add_argument("--max-n", dest="max_n", type=int, default=16)
    p.set_defaults(func=cmd_table)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_PARAM
    try:
        return args.func(args)
    except _CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except (ParameterError, StructureError, ParseError, ColoringMissingError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAM
    except FactorModelError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    except SearchTimeout as e:
        print(f"TIMEOUT {e}", file=sys.stderr)
        return EXIT_TIMEOUT
    except ConsistencyError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_VERIFY_FAIL


if __name__ == "__main__":
    sys.exit(main())
