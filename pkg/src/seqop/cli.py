"""Command-line interface: ``seqop <command> ...``.

Exit status is 0 on success, 1 when a verification suite finds a failure and
2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from . import __version__
from .bar import format_bar, parse_bar
from .coefficients import coefficient
from .diagonal import diagonal
from .freealg import FreeAlgebra
from .operad import format_seq, parse_element, parse_surjection
from .phi import phi

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def ring_modulus(ring: str, prime: int | None) -> int | None:
    """``Z`` -> None, ``F2``/``F3``/... -> that prime, ``Fp`` -> ``--prime``."""
    r = ring.strip()
    if r.upper() == "Z":
        return None
    m = re.fullmatch(r"[Ff](\d+|p)", r)
    if not m:
        raise UsageError(f"unknown ring {ring!r}; use Z, Fp or F<prime>")
    p = prime if m.group(1) == "p" else int(m.group(1))
    if p is None:
        raise UsageError("--ring Fp needs --prime")
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise UsageError(f"{p} is not prime")
    return p


def _emit(args, text: str, data: dict):
    if args.format == "structured":
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_coeff(args) -> int:
    modulus = ring_modulus(args.ring, args.prime)
    f = parse_surjection(args.surjection)
    e = tuple(args.e)
    if len(e) != max(f):
        raise UsageError(f"{format_seq(f)} needs {max(f)} lengths, got {len(e)}")
    if any(x < 1 for x in e):
        raise UsageError("lengths must be >= 1")
    c = coefficient(f, e, modulus)
    _emit(args, str(c), {"surjection": format_seq(f), "e": list(e), "ring": args.ring,
                         "result": str(c)})
    return EXIT_OK


_IDENT = re.compile(r"(?<![\w)])([A-Za-z_][A-Za-z_0-9]*)")


def _algebra_for(texts: Sequence[str], gens: Sequence[str], default_degree: int,
                 modulus: int | None) -> FreeAlgebra:
    A = FreeAlgebra(modulus=modulus)
    declared = []
    for decl in gens:
        m = re.fullmatch(r"\s*([A-Za-z_]\w*)\s*:\s*(-?\d+)\s*(?:=(.*))?", decl)
        if not m:
            raise UsageError(f"bad generator declaration {decl!r}; use name:degree[=differential]")
        declared.append((m.group(1), int(m.group(2)), m.group(3)))
    names = {n for n, _, _ in declared}
    for n, deg, dtext in declared:
        if dtext is None:
            A.add_generator(n, deg)
    for n, deg, dtext in declared:
        if dtext is not None:
            A.add_generator(n, deg, A.parse(dtext))
    for t in texts:
        for n in _IDENT.findall(t):
            if n not in names:
                names.add(n)
                A.add_generator(n, default_degree)
    return A


def cmd_phi_eval(args) -> int:
    modulus = ring_modulus(args.ring, args.prime)
    g = parse_element(args.operation)
    A = _algebra_for(args.inputs, args.gen, args.default_degree, modulus)
    xs = [parse_bar(A, t) for t in args.inputs]
    if len(xs) != g.arity:
        raise UsageError(f"{args.operation} takes {g.arity} bar inputs, got {len(xs)}")
    out = format_bar(A, phi(A, g.reduce(modulus), xs))
    _emit(args, out, {"operation": str(g), "inputs": list(args.inputs), "ring": args.ring,
                      "result": out})
    return EXIT_OK


def cmd_diagonal(args) -> int:
    modulus = ring_modulus(args.ring, args.prime)
    g = parse_element(args.operation, modulus)
    out = str(diagonal(g))
    _emit(args, out, {"operation": str(g), "ring": args.ring, "result": out})
    return EXIT_OK


def _space(name: str):
    from . import cochains

    m = re.fullmatch(r"(S|RP|Delta)(\d+)", name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        return {"S": cochains.sphere, "RP": cochains.projective_space,
                "Delta": cochains.standard_simplex}[kind](n)
    if name == "S2thick":
        return cochains.thick_sphere()
    try:
        return cochains.load_simplicial_set(name)
    except FileNotFoundError:
        raise UsageError(f"no such space or file: {name!r}")


def _table_text(rows) -> str:
    lines = []
    for r in rows:
        lines.append(f"{r['class']} = {r['representative']}  {r['operation']} -> "
                     f"{r['result']}  (degree {r['result_degree']}, coordinates {r['coordinates']})")
    return "\n".join(lines) if lines else "(no classes under the cutoff)"


def cmd_steenrod_table(args) -> int:
    from .cochains import CochainAlgebra
    from .steenrod import bar_structure, cochain_structure, operation_table

    X = _space(args.space)
    ring_modulus(f"F{args.prime}", None)
    if args.cochains:
        alg = CochainAlgebra(X, modulus=args.prime)
        C = cochain_structure(alg, args.max_degree)
    else:
        if X.has_nondegenerate_edges():
            raise UsageError("bar complex needs a space without nondegenerate 1-simplices")
        alg = CochainAlgebra(X, modulus=args.prime, reduced=True)
        C = bar_structure(alg, args.max_degree)
    rows = operation_table(C)
    _emit(args, _table_text(rows), {"space": X.name, "prime": args.prime,
                                    "max_degree": args.max_degree,
                                    "complex": "cochains" if args.cochains else "bar",
                                    "rows": rows})
    return EXIT_OK


def cmd_loop_cohomology(args) -> int:
    from .cochains import loop_cohomology

    X = _space(args.space)
    ring_modulus(f"F{args.prime}", None)
    try:
        res = loop_cohomology(X, args.prime, args.max_degree, augmented=not args.reduced,
                              operations=not args.no_operations)
    except ValueError as exc:
        raise UsageError(str(exc))
    text = [f"H^n(B N*({X.name}); F{args.prime})"]
    for n, d in enumerate(res["dimensions"]):
        text.append(f"  n={n}: {d}")
    if "operations" in res:
        text.append(_table_text(res["operations"]))
    _emit(args, "\n".join(text), res)
    return EXIT_OK


def _suite_params(name: str, args) -> dict:
    params = {"jobs": args.jobs, "seed": args.seed}
    if name in ("operad", "diagonal"):
        params["max_entries"] = args.max_entries or 7
    elif name == "coefficients":
        params.update(max_arity=args.max_arity or 3, max_entries=args.max_entries or 5)
    elif name == "phi":
        params.update(max_arity=args.max_arity or 3, max_entries=args.max_entries or 5,
                      max_bar_length=args.max_bar_length or 4)
    elif name == "steenrod":
        params["primes"] = [args.prime] if args.prime else [2, 3]
    return params


def cmd_verify(args) -> int:
    from .verify import SUITES, run_suite

    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        reports.extend(run_suite(name, **_suite_params(name, args)))
    ok = all(r.ok for r in reports)
    if args.format == "structured":
        print(json.dumps({"ok": ok, "reports": [r.to_dict(args.timings) for r in reports]},
                         sort_keys=True, indent=2))
    else:
        for r in reports:
            print(f"suite {r.suite} {json.dumps(r.params, sort_keys=True)}")
            for c in r.checks:
                status = "ok" if c.ok else ("info" if c.informational else "FAIL")
                line = f"  {c.name}: {c.cases} cases, {len(c.failures)} failures [{status}]"
                if args.timings:
                    line += f" {c.seconds:.2f}s"
                print(line)
                for ce in c.failures[:5]:
                    print(f"    counterexample: {ce}")
        print("all ok" if ok else "FAILURES")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "structured"], default="text")
    common.add_argument("--ring", default="Z", help="Z, Fp (with --prime) or F<prime>")
    common.add_argument("--prime", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)

    ap = _Parser(prog="seqop", description="Sequence operad computations.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeff", parents=[common], help="coefficient element C(f; e)")
    p.add_argument("surjection")
    p.add_argument("e", type=int, nargs="+")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("phi-eval", parents=[common], help="evaluate Phi on bar elements")
    p.add_argument("operation")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--gen", action="append", default=[],
                   help="generator name:degree[=differential]; repeatable")
    p.add_argument("--default-degree", type=int, default=2)
    p.set_defaults(func=cmd_phi_eval)

    p = sub.add_parser("diagonal", parents=[common], help="the diagonal of an operad element")
    p.add_argument("operation")
    p.set_defaults(func=cmd_diagonal)

    p = sub.add_parser("steenrod-table", parents=[common], help="Steenrod operations on cohomology")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--space", default="S2", help="S<n>, RP<n>, Delta<n>, S2thick or a JSON file")
    p.add_argument("--cochains", action="store_true",
                   help="use the cochains themselves instead of their bar complex")
    p.set_defaults(func=cmd_steenrod_table, prime_required=True)

    p = sub.add_parser("loop-cohomology", parents=[common], help="H*(B N*(X); F_p) table")
    p.add_argument("--space", required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--reduced", action="store_true", help="omit the unit in degree 0")
    p.add_argument("--no-operations", action="store_true")
    p.set_defaults(func=cmd_loop_cohomology, prime_required=True)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=["operad", "coefficients", "phi", "diagonal", "steenrod", "all"])
    p.add_argument("--max-entries", type=int)
    p.add_argument("--max-arity", type=int)
    p.add_argument("--max-bar-length", type=int)
    p.add_argument("--timings", action="store_true", help="include wall times (not reproducible)")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if getattr(args, "prime_required", False) and args.prime is None:
            args.prime = 2
        return args.func(args)
    except UsageError as exc:
        print(f"seqop {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"seqop {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
