"""Command-line front end.

Commands: count, spectrum, matrix, ogf, polybernoulli, sattr, verify.
Output is deterministic byte for byte for a fixed set of flags.  Exit
codes: 0 success, 1 verification failure, 2 parse or usage error,
3 enumeration budget exceeded, 4 domain error (not idempotent or not a
lattice).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import oracle, reference
from .closedforms import (
    abelian_group_count,
    chain_coefficient,
    chain_counts,
    chain_eigenvalues,
    ladder_eigenvalues,
    mk_eigenvalues,
    poly_bernoulli,
)
from .errors import (
    MonoidSpecError,
    NotALattice,
    NotIdempotent,
    SizeLimitExceeded,
    SubmonError,
)
from .monoid import from_spec, is_group, is_idempotent, semilattice_order
from .oracle import brute_force_submonoid_count
from .spectral import eigenvalues, ogf, spectrum_of, verify_recurrence
from .submonoids import DEFAULT_MAX_MONOID_SIZE, enumerate_submonoids, inclusion_order, mask_to_hex
from .transfer import build_transfer_matrix, count_sequence
from .transfersystems import (
    DEFAULT_MAX_ST_SIZE,
    enumerate_saturated_transfer_systems,
    st_count_sequence,
    verify_graph_isomorphism,
)

VERIFY_SUITES = (
    "triangular",
    "recurrence",
    "oracle",
    "transfer-iso",
    "closed-forms",
    "appendix",
)

# Default sweeps for the verify suites.
DEFAULT_MONOIDS = (
    "chain:0",
    "chain:1",
    "chain:2",
    "chain:3",
    "chain:1 x chain:1",
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "mk:2",
    "mk:3",
    "n5",
)
DEFAULT_LATTICES = (
    "chain:1",
    "chain:2",
    "chain:1 x chain:1",
    "chain:1 x chain:2",
    "mk:3",
)
GROUP_SPECS = ("cyclic:2", "cyclic:3", "cyclic:4", "cyclic:6", "cyclic:2 x cyclic:2")


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


def cmd_count(args) -> int:
    monoid = from_spec(args.monoid)
    matrix = build_transfer_matrix(monoid, max_size=args.max_monoid_size)
    seq = count_sequence(matrix, args.n, label=args.monoid)
    if args.oracle:
        for n, value in enumerate(seq.values):
            if (n + 1) * monoid.size > args.max_oracle_size:
                continue
            expected = brute_force_submonoid_count(
                monoid, n, max_size=args.max_oracle_size
            )
            if expected != value:
                return _fail(
                    f"oracle mismatch at n={n}: pipeline {value}, "
                    f"brute force {expected}",
                    1,
                )
    if args.format == "json":
        _emit(json.dumps({"monoid": args.monoid, "values": list(seq.values)}))
    else:
        lines = ["n,count"] + [f"{n},{v}" for n, v in enumerate(seq.values)]
        _emit("\n".join(lines))
    return 0


def cmd_spectrum(args) -> int:
    matrix = build_transfer_matrix(from_spec(args.monoid), max_size=args.max_monoid_size)
    spectrum = spectrum_of(matrix)
    rows = list(zip(spectrum.eigenvalues, spectrum.coefficients, spectrum.normalized))
    if args.format == "json":
        payload = {
            "monoid": args.monoid,
            "rows": [
                {
                    "eigenvalue": v,
                    "coefficient": reference.format_rational(c),
                    "normalized": h,
                }
                for v, c, h in rows
            ],
        }
        _emit(json.dumps(payload))
    else:
        lines = ["eigenvalue,coefficient,normalized"]
        lines += [
            f"{v},{reference.format_rational(c)},{h}" for v, c, h in rows
        ]
        _emit("\n".join(lines))
    return 0


def cmd_matrix(args) -> int:
    matrix = build_transfer_matrix(from_spec(args.monoid), max_size=args.max_monoid_size)
    legend = [mask_to_hex(m) for m in matrix.lattice.members]
    if args.format == "json":
        _emit(
            json.dumps(
                {
                    "monoid": args.monoid,
                    "size": matrix.size,
                    "legend": legend,
                    "rows": [list(row) for row in matrix.entries],
                }
            )
        )
    else:
        lines = ["mask," + ",".join(legend)]
        for mask, row in zip(legend, matrix.entries):
            lines.append(mask + "," + ",".join(str(v) for v in row))
        _emit("\n".join(lines))
    return 0


def cmd_ogf(args) -> int:
    matrix = build_transfer_matrix(from_spec(args.monoid), max_size=args.max_monoid_size)
    spectrum = spectrum_of(matrix)
    seq = count_sequence(matrix, 2 * len(spectrum.eigenvalues), label=args.monoid)
    result = ogf(matrix, spectrum, seq)
    if args.format == "json":
        _emit(
            json.dumps(
                {
                    "monoid": args.monoid,
                    "numerator": list(result.numerator),
                    "denominator_roots": list(result.denominator_roots),
                }
            )
        )
    else:
        lines = [
            "numerator," + ",".join(str(c) for c in result.numerator),
            "denominator_roots,"
            + ",".join(str(v) for v in result.denominator_roots),
        ]
        _emit("\n".join(lines))
    return 0


def cmd_polybernoulli(args) -> int:
    _emit(str(poly_bernoulli(args.m, args.n)))
    return 0


def cmd_sattr(args) -> int:
    order = semilattice_order(from_spec(args.lattice))
    if args.list:
        systems = enumerate_saturated_transfer_systems(order, max_size=args.max_st_size)
        payload = {
            "lattice": args.lattice,
            "systems": [system.pairs() for system in systems],
        }
        _emit(json.dumps(payload))
        return 0
    seq = st_count_sequence(order, args.n, max_size=args.max_st_size, label=args.lattice)
    if args.format == "json":
        _emit(json.dumps({"lattice": args.lattice, "values": list(seq.values)}))
    else:
        lines = ["n,count"] + [f"{n},{v}" for n, v in enumerate(seq.values)]
        _emit("\n".join(lines))
    return 0


def _oracle_case(item):
    spec, n, max_oracle = item
    monoid = from_spec(spec)
    return brute_force_submonoid_count(monoid, n, max_size=max_oracle)


def _suite_triangular(args) -> int:
    for spec in [args.monoid] if args.monoid else DEFAULT_MONOIDS:
        matrix = build_transfer_matrix(from_spec(spec), max_size=args.max_monoid_size)
        diag = matrix.diagonal()
        for i in range(matrix.size):
            if diag[i] < 2:
                return _fail(f"{spec}: diagonal entry {i} is {diag[i]}", 1)
            for j in range(i + 1, matrix.size):
                if matrix.entries[i][j]:
                    return _fail(f"{spec}: nonzero entry above diagonal at ({i},{j})", 1)
        if is_idempotent(matrix.lattice.monoid):
            order = inclusion_order(matrix.lattice)
            for i in range(matrix.size):
                for j in range(matrix.size):
                    if i != j and order.leq(i, j) and diag[i] >= diag[j]:
                        return _fail(
                            f"{spec}: diagonal not strictly increasing at ({i},{j})", 1
                        )
        print(f"ok triangular {spec}")
    return 0


def _suite_recurrence(args) -> int:
    specs = [args.monoid] if args.monoid else [
        s for s in DEFAULT_MONOIDS if is_idempotent(from_spec(s))
    ]
    for spec in specs:
        matrix = build_transfer_matrix(from_spec(spec), max_size=args.max_monoid_size)
        eigs = eigenvalues(matrix)
        seq = count_sequence(matrix, 2 * len(eigs) - 1, label=spec)
        ok, witness = verify_recurrence(eigs, seq)
        if not ok:
            return _fail(f"{spec}: recurrence fails at n={witness}", 1)
        print(f"ok recurrence {spec}")
    return 0


def _suite_oracle(args) -> int:
    specs = [args.monoid] if args.monoid else list(DEFAULT_MONOIDS)
    cases = []
    for spec in specs:
        monoid = from_spec(spec)
        top = args.n if args.n is not None else args.max_oracle_size
        for n in range(top + 1):
            if (n + 1) * monoid.size <= args.max_oracle_size:
                cases.append((spec, n, args.max_oracle_size))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            expected = list(pool.map(_oracle_case, cases))
    else:
        expected = [_oracle_case(item) for item in cases]
    matrices = {}
    for (spec, n, _), want in zip(cases, expected):
        if spec not in matrices:
            matrices[spec] = build_transfer_matrix(
                from_spec(spec), max_size=args.max_monoid_size
            )
        got = count_sequence(matrices[spec], n).values[n]
        if got != want:
            return _fail(f"{spec}: n={n} pipeline {got}, brute force {want}", 1)
        print(f"ok oracle {spec} n={n} count={got}")
    return 0


def _suite_transfer_iso(args) -> int:
    for spec in [args.monoid] if args.monoid else DEFAULT_LATTICES:
        order = semilattice_order(from_spec(spec))
        ok, details = verify_graph_isomorphism(order, max_size=args.max_st_size)
        if not ok:
            return _fail(f"{spec}: {details}", 1)
        print(f"ok transfer-iso {spec}")
    return 0


def _suite_closed_forms(args) -> int:
    for m in range(1, 5):
        for n in range(1, 5):
            half = poly_bernoulli(m, n) // 2
            matrix = build_transfer_matrix(from_spec(f"chain:{m - 1}"))
            got = count_sequence(matrix, n - 1).values[n - 1]
            if half != got:
                return _fail(f"poly-Bernoulli mismatch at ({m},{n}): {half} != {got}", 1)
    print("ok closed-forms poly-bernoulli grid")
    for m in range(7):
        matrix = build_transfer_matrix(from_spec(f"chain:{m}"))
        spectrum = spectrum_of(matrix)
        for j, coefficient in zip(spectrum.eigenvalues, spectrum.coefficients):
            if chain_coefficient(m, j) != coefficient:
                return _fail(f"chain coefficient mismatch at m={m}, j={j}", 1)
    print("ok closed-forms chain coefficients")
    for spec in GROUP_SPECS:
        monoid = from_spec(spec)
        if not is_group(monoid):
            return _fail(f"{spec} is not a group", 1)
        chains = chain_counts(inclusion_order(enumerate_submonoids(monoid)))
        matrix = build_transfer_matrix(monoid)
        values = count_sequence(matrix, 10).values
        for n in range(11):
            if abelian_group_count(chains, n) != values[n]:
                return _fail(f"{spec}: group count mismatch at n={n}", 1)
    print("ok closed-forms abelian groups")
    for m in range(7):
        got = set(eigenvalues(build_transfer_matrix(from_spec(f"chain:{m}"))))
        if got != chain_eigenvalues(m):
            return _fail(f"chain eigenvalue set mismatch at m={m}", 1)
    for m in range(1, 5):
        got = set(eigenvalues(build_transfer_matrix(from_spec(f"chain:{m} x chain:1"))))
        if got != ladder_eigenvalues(m):
            return _fail(f"ladder eigenvalue set mismatch at m={m}", 1)
    for k in range(1, 6):
        got = set(eigenvalues(build_transfer_matrix(from_spec(f"mk:{k}"))))
        if got != mk_eigenvalues(k):
            return _fail(f"mk eigenvalue set mismatch at k={k}", 1)
    print("ok closed-forms eigenvalue sets")
    return 0


def _suite_appendix(args) -> int:
    specs = reference.FAST_SPECS + (reference.SLOW_SPECS if args.slow else ())
    problems = reference.compare_reference(specs)
    if problems:
        return _fail("\n".join(problems), 1)
    for spec in specs:
        print(f"ok appendix {spec}")
    return 0


def cmd_verify(args) -> int:
    suites = {
        "triangular": _suite_triangular,
        "recurrence": _suite_recurrence,
        "oracle": _suite_oracle,
        "transfer-iso": _suite_transfer_iso,
        "closed-forms": _suite_closed_forms,
        "appendix": _suite_appendix,
    }
    if args.suite not in suites:
        return _fail(
            f"unknown suite {args.suite!r}; choose from {', '.join(VERIFY_SUITES)}", 2
        )
    return suites[args.suite](args)


def _add_common(parser, monoid_flag=True):
    if monoid_flag:
        parser.add_argument("--monoid", required=True, help="monoid spec string")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument(
        "--max-monoid-size",
        type=int,
        default=DEFAULT_MAX_MONOID_SIZE,
        help="submonoid enumeration budget",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="submon",
        description="Exact submonoid and saturated transfer system enumeration",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="counts of submonoids of monoid x chain")
    _add_common(p)
    p.add_argument("--n", type=int, required=True, help="largest chain length")
    p.add_argument("--oracle", action="store_true", help="cross-check small cases")
    p.add_argument("--max-oracle-size", type=int, default=oracle.DEFAULT_MAX_ORACLE_SIZE)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("spectrum", help="eigenvalues and exact coefficients")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("matrix", help="dump the transfer matrix")
    _add_common(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("ogf", help="generating function of the counts")
    _add_common(p)
    p.set_defaults(func=cmd_ogf)

    p = sub.add_parser("polybernoulli", help="poly-Bernoulli number B(m, n)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_polybernoulli)

    p = sub.add_parser("sattr", help="saturated transfer systems on a lattice")
    p.add_argument("--lattice", required=True, help="monoid spec of a lattice")
    p.add_argument("--n", type=int, default=0, help="largest chain length")
    p.add_argument("--list", action="store_true", help="dump the systems as JSON")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--max-st-size", type=int, default=DEFAULT_MAX_ST_SIZE)
    p.set_defaults(func=cmd_sattr)

    p = sub.add_parser("verify", help="run a named invariant sweep")
    p.add_argument("suite", help=f"one of: {', '.join(VERIFY_SUITES)}")
    p.add_argument("--monoid", help="restrict the sweep to one monoid")
    p.add_argument("--n", type=int, help="largest chain length for the oracle suite")
    p.add_argument("--slow", action="store_true", help="include the large table rows")
    p.add_argument("--jobs", type=int, default=1, help="parallel oracle workers")
    p.add_argument("--max-monoid-size", type=int, default=DEFAULT_MAX_MONOID_SIZE)
    p.add_argument("--max-oracle-size", type=int, default=oracle.DEFAULT_MAX_ORACLE_SIZE)
    p.add_argument("--max-st-size", type=int, default=DEFAULT_MAX_ST_SIZE)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MonoidSpecError, ValueError) as exc:
        return _fail(f"error: {exc}", 2)
    except SizeLimitExceeded as exc:
        return _fail(f"error: {exc}", 3)
    except (NotIdempotent, NotALattice) as exc:
        return _fail(f"error: {exc}", 4)
    except SubmonError as exc:
        return _fail(f"error: {exc}", 1)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
