"""pellkit command line.

Exit status: 0 success, 2 bad input, 3 a theorem check failed (a bug, with
the counterexample printed), 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from pellkit.errors import DomainError, InternalError, ResourceError, TheoremViolation

EXIT_OK, EXIT_DOMAIN, EXIT_THEOREM, EXIT_INTERNAL, EXIT_USAGE = 0, 2, 3, 1, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _jsonable(obj):
    """Ints become decimal strings so big units survive any JSON reader."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return str(obj)


def _emit(data, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(_jsonable(data), indent=2) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        rows = data if isinstance(data, list) else [data]
        if rows and isinstance(rows[0], dict):
            keys = list(rows[0])
            w.writerow(keys)
            for r in rows:
                w.writerow([json.dumps(_jsonable(r[k])) if isinstance(r[k], (list, dict)) else r[k] for k in keys])
        out.write(buf.getvalue())
    else:
        rows = data if isinstance(data, list) else [data]
        for r in rows:
            if isinstance(r, dict):
                for k, v in r.items():
                    out.write(f"{k}: {v}\n")
            else:
                out.write(f"{r}\n")
            if len(rows) > 1:
                out.write("\n")


# -- subcommands --------------------------------------------------------------


def cmd_solve(a):
    from pellkit.pell import fundamental_solution_plus, fundamental_unit

    eps = fundamental_unit(a.d)
    out = {"d": a.d, "x": eps.x, "y": eps.y, "norm": eps.norm}
    if a.plus and eps.norm == -1:
        sol = fundamental_solution_plus(a.d)
        out.update(x=sol.x, y=sol.y, norm=1)
    return out


def cmd_unit(a):
    from pellkit.arith import unit_symbol
    from pellkit.pell import maximal_order_unit

    t, u = maximal_order_unit(a.disc)
    out = {"disc": a.disc, "T": t, "U": u, "norm": (t * t - a.disc * u * u) // 4}
    if a.at is not None:
        out["symbol_at"] = a.at
        out["symbol"] = unit_symbol(a.disc, a.at)
    return out


def cmd_cf(a):
    from pellkit.pell import cf_expand

    cf = cf_expand(a.d)
    return {"d": a.d, "a0": cf.a0, "period": list(cf.period), "period_length": cf.period_length}


def cmd_descent(a):
    from pellkit.descent import verify_uniqueness

    rep = verify_uniqueness(a.A)
    return [
        {"M": e.M, "N": e.N, "c": e.c, "class": e.selmer_class(), "status": s}
        for e, s in sorted(rep.status.items(), key=lambda kv: (kv[0].c, kv[0].M))
    ]


def cmd_selmer(a):
    from pellkit.descent import descent_from_fundamental, divisors, verify_uniqueness

    rep = verify_uniqueness(a.A)
    eq, r, s = descent_from_fundamental(a.A)
    return {
        "A": a.A,
        "group": divisors(2 * a.A),
        "solvable_classes": list(rep.solvable_classes),
        "equation": str(eq),
        "witness": [r, s],
    }


def cmd_redei(a):
    from pellkit.arith import prime_discriminant_factorization
    from pellkit.redei import e4, redei_matrix

    fac = prime_discriminant_factorization(a.d)
    return {"d": a.d, "parts": list(fac.values), "matrix": redei_matrix(a.d).to_lists(), "e4": e4(a.d)}


def cmd_splittings(a):
    from pellkit.redei import enumerate_c4_splittings

    return [{"delta1": s.delta1, "delta2": s.delta2} for s in enumerate_c4_splittings(a.d)]


def cmd_graph(a):
    from pellkit.arith import radicand
    from pellkit.graphs import build_graph, enumerate_evds, is_odd_graph, spanning_tree_count
    from pellkit.pell import negative_pell_solvable

    g = build_graph(a.d)
    if a.emit == "dot":
        return g.to_dot()
    if a.emit == "edges":
        return g.to_edge_list()
    if a.check == "odd":
        return {"odd": is_odd_graph(g), "negative_pell": negative_pell_solvable(radicand(a.d))}
    return {
        "d": a.d,
        "vertices": list(g.labels),
        "edges": [list(e) for e in g.edges()],
        "odd": is_odd_graph(g),
        "spanning_trees": spanning_tree_count(g),
        "evds": [[list(b.A1), list(b.A2)] for b in enumerate_evds(a.d)],
    }


def cmd_classgroup(a):
    from pellkit.forms import FormClassGroup, class_number_wide

    G = FormClassGroup(a.disc)
    out = {"disc": a.disc, "h_plus" if a.disc > 0 else "h": G.order}
    if a.disc > 0:
        out["h"] = class_number_wide(a.disc)
    e2, e4, e8 = G.two_ranks(3)
    out.update(e2=e2, e4=e4, e8=e8, two_sylow=list(G.two_sylow_invariants()))
    return out


def cmd_criteria(a):
    from pellkit import criteria as C

    args = a.args
    name = a.name
    if name == "richaud":
        v = C.richaud(args, a.clause)
    elif name in ("tano", "trotter", "newman"):
        v = getattr(C, name)(args)
    elif name in ("legendre_prime", "dirichlet_two_term", "dirichlet_quartic", "redei_elementary"):
        if len(args) != 1:
            raise DomainError(f"{name} takes one argument")
        v = getattr(C, name)(args[0])
    elif name in ("dirichlet_pq", "scholz", "governing_8h"):
        if len(args) != 2:
            raise DomainError(f"{name} takes two arguments")
        fn = C.scholz_classify if name == "scholz" else getattr(C, name)
        v = fn(*args)
    else:
        raise DomainError(f"unknown criterion {name!r}")
    return v.as_record()


def cmd_density(a):
    from pellkit import density as D

    workers = a.workers if a.workers is not None else D.default_workers()
    if a.family == "legendre-2":
        rep = D.scan_legendre_2(a.max, chunk=a.chunk, workers=workers)
        return rep.summary()
    parts = D.scan_negative_pell_chunks(a.max, a.convention, chunk=a.chunk, workers=workers)
    fmt = a.report or a.format
    if fmt == "csv":
        return [{"lo": p.lo, "hi": p.X, "total": p.total, "solvable": p.solvable} for p in parts]
    out = parts[0]
    for p in parts[1:]:
        out = out.merge(p)
    return out.summary()


def cmd_verify(a):
    from pellkit.sweeps import run_suite

    res = run_suite(a.suite, a.max)
    out = res.summary()
    if res.failures:
        raise TheoremViolation(f"verify {a.suite}: {len(res.failures)} failure(s)", out)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pellkit", description="Pell equations, descent, Redei matrices and discriminant graphs.")
    p.add_argument("--format", choices=("human", "json", "csv"), default="human")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--format", choices=("human", "json", "csv"), default=argparse.SUPPRESS)
        return sp

    s = add("solve", cmd_solve, "fundamental unit of Z[sqrt d]")
    s.add_argument("d", type=int)
    s.add_argument("--plus", action="store_true", help="least solution of norm +1")
    s = add("unit", cmd_unit, "fundamental unit of the order of discriminant disc")
    s.add_argument("disc", type=int)
    s.add_argument("--at", type=int, help="quadratic character of the unit at an odd prime or 8")
    s = add("cf", cmd_cf, "continued fraction of sqrt d")
    s.add_argument("d", type=int)
    s = add("descent", cmd_descent, "all auxiliary equations for A, certified")
    s.add_argument("A", type=int)
    s = add("selmer", cmd_selmer, "square classes of the descent for A")
    s.add_argument("A", type=int)
    s = add("redei", cmd_redei, "Redei matrix and 4-rank")
    s.add_argument("d", type=int)
    s = add("splittings", cmd_splittings, "C4-splittings of d")
    s.add_argument("d", type=int)
    s = add("graph", cmd_graph, "discriminant graph of d")
    s.add_argument("d", type=int)
    s.add_argument("--check", choices=("odd",))
    s.add_argument("--emit", choices=("dot", "edges"))
    s = add("classgroup", cmd_classgroup, "strict form class group and its 2-part")
    s.add_argument("disc", type=int)
    s = add("criteria", cmd_criteria, "evaluate one named criterion")
    s.add_argument(
        "name",
        choices=(
            "legendre_prime",
            "dirichlet_two_term",
            "dirichlet_quartic",
            "dirichlet_pq",
            "richaud",
            "tano",
            "trotter",
            "newman",
            "scholz",
            "governing_8h",
            "redei_elementary",
        ),
    )
    s.add_argument("args", type=int, nargs="+")
    s.add_argument("--clause", default="R1a")
    s = add("density", cmd_density, "negative Pell density scan")
    s.add_argument("--max", type=int, default=10**5)
    s.add_argument("--convention", choices=("fundamental", "radicand"), default="fundamental")
    s.add_argument("--family", choices=("negative-pell", "legendre-2"), default="negative-pell")
    s.add_argument("--chunk", type=int, default=10**4)
    s.add_argument("--workers", type=int, default=None, help="default: $PELLKIT_WORKERS or 1")
    s.add_argument("--report", choices=("json", "csv"), help="shorthand for --format")
    s = add("verify", cmd_verify, "run a verification sweep")
    from pellkit.sweeps import SUITES

    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--max", type=int, default=None)
    s.add_argument("--bound", type=int, dest="max", help="alias of --max")
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    fmt = getattr(args, "report", None) or args.format
    try:
        data = args.fn(args)
    except TheoremViolation as exc:
        sys.stderr.write(f"theorem violation: {exc}\n")
        _emit(exc.record or {}, "json", out)
        return EXIT_THEOREM
    except (DomainError, ResourceError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except InternalError as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    if isinstance(data, str):
        out.write(data)
    else:
        _emit(data, fmt, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
