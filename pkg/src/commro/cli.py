"""Command-line surface: generate, analyze, build, verify.

Exit codes: 0 success, 1 verification failure, 2 usage or input errors,
3 size cap exceeded (the message names the cap flag to raise).
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

from .abp import check_kind, eval_abp, expand_abp, nisan_width, permute_order
from .apolar import normal_set, quotient
from .construct import (build_commro_general, build_diagro_from_waring,
                        build_smabp, waring_of_monomial)
from .detspecial import (det_mult_tables, det_polynomial, det_variables,
                         palindrome, perm_polynomial)
from .errors import DEFAULT_ENTRY_CAP, DEFAULT_TERM_CAP, CapExceeded
from .partials import derivative_basis, dpd
from .poly import Poly, PolyParseError, mono_str
from .textio import (format_abp, format_matrix, format_poly_file,
                     format_waring_file, parse_abp, parse_poly_file,
                     parse_waring_file)

RANDOM_COORD_BOUND = 10 ** 6


def _read(path: str) -> str:
    return Path(path).read_text()


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_poly(path: str, vars_flag: str | None) -> Poly:
    default = vars_flag.split(",") if vars_flag else None
    return parse_poly_file(_read(path), default_vars=default)


def _random_point(rng: random.Random, arity: int) -> list[Fraction]:
    return [Fraction(rng.randint(-RANDOM_COORD_BOUND, RANDOM_COORD_BOUND))
            for _ in range(arity)]


def _parse_partition(text: str, vars: tuple[str, ...]) -> list[list[int]]:
    index = {name: i for i, name in enumerate(vars)}
    parts = []
    for group in text.split("|"):
        names = [name.strip() for name in group.split(",") if name.strip()]
        try:
            parts.append([index[name] for name in names])
        except KeyError as bad:
            raise ValueError(f"unknown variable {bad.args[0]!r} in partition") from None
    return parts


def _cmd_dpd(args) -> int:
    f = _load_poly(args.poly, args.vars)
    if f.is_zero():
        print(0)
        return 0
    basis = derivative_basis(f)
    print(basis.dimension)
    if args.basis:
        for g in basis.basis:
            print(g)
    return 0


def _cmd_normal_set(args) -> int:
    f = _load_poly(args.poly, args.vars)
    structure = normal_set(derivative_basis(f))
    for mono in structure.normal_set:
        print(mono_str(mono, f.vars))
    return 0


def _cmd_tables(args) -> int:
    f = _load_poly(args.poly, args.vars)
    structure = quotient(f)
    chunks = []
    for name, table in zip(f.vars, structure.tables):
        if table.rows * table.cols > args.max_entries:
            raise CapExceeded(
                f"table for {name} has {table.rows * table.cols} entries, "
                f"cap is {args.max_entries}")
        chunks.append(f"table {name}\n{format_matrix(table)}")
    _write_output("".join(chunks), args.output)
    return 0


def _cmd_build(args) -> int:
    if args.target == "diagro":
        w = parse_waring_file(_read(args.input))
        vars = tuple(f"x{i + 1}" for i in range(w.arity))
        abp = build_diagro_from_waring(w, vars)
    else:
        f = _load_poly(args.input, args.vars)
        if args.target == "commro":
            abp = build_commro_general(f)
        else:
            if not args.partition:
                raise ValueError("smabp requires --partition")
            abp = build_smabp(f, _parse_partition(args.partition, f.vars))
    Path(args.output).write_text(format_abp(abp))
    print(f"wrote {args.output} (kind={abp.kind} width={abp.width})")
    return 0


def _cmd_nisan(args) -> int:
    f = _load_poly(args.poly, args.vars)
    index = {name: i for i, name in enumerate(f.vars)}

    def report(order_indices: list[int]) -> None:
        cut = nisan_width(f, order_indices, max_entries=args.max_entries)
        names = ",".join(f.vars[i] for i in order_indices)
        ranks = " ".join(str(r) for r in cut.cut_ranks)
        print(f"order: {names} cut-ranks: {ranks} width: {cut.width} size: {cut.size}")

    if args.order:
        names = [name.strip() for name in args.order.split(",")]
        try:
            order = [index[name] for name in names]
        except KeyError as bad:
            raise ValueError(f"unknown variable {bad.args[0]!r} in --order") from None
        if sorted(order) != list(range(f.arity)):
            raise ValueError("--order must list every variable exactly once")
        report(order)
    else:
        if f.arity > 6:
            raise ValueError("--all-orders is limited to 6 variables (720 orders)")
        import itertools
        for perm in itertools.permutations(range(f.arity)):
            report(list(perm))
    return 0


def _cmd_verify(args) -> int:
    abp = parse_abp(_read(args.abp))
    f = _load_poly(args.against, args.vars)
    if f.vars != abp.vars:
        print(f"verify FAILED: variable mismatch {f.vars} vs {abp.vars}")
        return 1

    def check(program, label: str) -> bool:
        if args.expand:
            computed = expand_abp(program, max_terms=args.max_terms)
            if computed != f:
                print(f"verify FAILED: {label} expansion differs")
                return False
            print(f"{label} expand: ok")
        else:
            rng = random.Random(args.seed)
            for k in range(args.random_eval):
                point = _random_point(rng, f.arity)
                if eval_abp(program, point) != f.eval(point):
                    print(f"verify FAILED: {label} differs at random point #{k}")
                    return False
            print(f"{label} random-eval: {args.random_eval} points ok (seed={args.seed})")
        return True

    if not check_kind(abp):
        print(f"verify FAILED: structural invariant of kind {abp.kind!r} violated")
        return 1
    print(f"kind {abp.kind}: ok")
    if not check(abp, "program"):
        return 1
    if args.any_order:
        rng = random.Random(args.seed + 1 if args.seed is not None else 1)
        k = len(abp.layers)
        for trial in range(args.any_order):
            perm = list(range(k))
            rng.shuffle(perm)
            if not check(permute_order(abp, perm), f"order-{trial}"):
                return 1
    print("verify OK")
    return 0


def _cmd_gen(args) -> int:
    n = args.n
    if args.what == "det":
        text = format_poly_file(det_polynomial(n))
    elif args.what == "perm":
        text = format_poly_file(perm_polynomial(n))
    elif args.what == "palindrome":
        text = format_poly_file(palindrome(n))
    elif args.what == "monomial-waring":
        text = format_waring_file(waring_of_monomial(n))
    else:  # det-tables
        chunks = []
        for name, table in zip(det_variables(n), det_mult_tables(n)):
            chunks.append(f"table {name}\n{format_matrix(table)}")
        text = "".join(chunks)
    _write_output(text, args.output)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commro",
        description="Compile polynomials into commutative read-once oblivious "
                    "branching programs and verify the artifacts.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_vars(p):
        p.add_argument("--vars", help="comma-separated variable order for headerless files")

    p = sub.add_parser("dpd", help="dimension of the span of all partial derivatives")
    p.add_argument("poly")
    p.add_argument("--basis", action="store_true", help="also print the basis polynomials")
    add_vars(p)
    p.set_defaults(func=_cmd_dpd)

    p = sub.add_parser("normal-set", help="normal set of the apolar ideal")
    p.add_argument("poly")
    add_vars(p)
    p.set_defaults(func=_cmd_normal_set)

    p = sub.add_parser("tables", help="apolar multiplication tables")
    p.add_argument("poly")
    p.add_argument("-o", "--output")
    p.add_argument("--max-entries", type=int, default=DEFAULT_ENTRY_CAP)
    add_vars(p)
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("build", help="build a branching program artifact")
    p.add_argument("target", choices=("commro", "smabp", "diagro"))
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--partition", help="variable groups a,b|c,d (smabp only)")
    add_vars(p)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("nisan", help="exact minimal ROABP width per variable order")
    p.add_argument("poly")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--order", help="comma-separated variable order")
    group.add_argument("--all-orders", action="store_true")
    p.add_argument("--max-entries", type=int, default=DEFAULT_ENTRY_CAP)
    add_vars(p)
    p.set_defaults(func=_cmd_nisan)

    p = sub.add_parser("verify", help="verify an ABP file against a polynomial")
    p.add_argument("abp")
    p.add_argument("--against", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--expand", action="store_true", help="exact symbolic comparison")
    group.add_argument("--random-eval", type=int, metavar="K",
                       help="compare at K seeded random rational points")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--any-order", type=int, metavar="M", default=0,
                   help="also verify M random layer permutations")
    p.add_argument("--max-terms", type=int, default=DEFAULT_TERM_CAP)
    add_vars(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", help="generate standard inputs")
    p.add_argument("what", choices=("det", "perm", "palindrome",
                                    "monomial-waring", "det-tables"))
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_gen)

    return parser


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return stop.code if isinstance(stop.code, int) else 2
    try:
        return args.func(args)
    except CapExceeded as cap:
        print(f"error: {cap} (raise {cap.flag})", file=sys.stderr)
        return 3
    except (PolyParseError, ValueError, OSError) as bad:
        print(f"error: {bad}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
