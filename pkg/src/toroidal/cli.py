"""Command-line interface.

Three subcommands: ``cohomology`` computes the quotient table from a lattice
type, ``classify`` ingests an integer matrix file and goes end to end, and
``oracle`` builds an equivariant triangulation, quotients it and compares
against the formula pipeline.

Exit codes are a stable contract: 0 success, 2 input error, 3 internal
consistency failure (including any oracle mismatch).  JSON output encodes
integers beyond 64 bits as decimal strings so every consumer reads them
bit-exactly.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .classify import classify, is_trivial_action
from .cohomology import (
    CohomologyTable,
    equivariant_cohomology,
    fixed_point_set,
    quotient_cohomology,
)
from .errors import ConsistencyError
from .lattice import LatticeType
from .oracle import (
    DEFAULT_SIMPLEX_GATE,
    ComplexTooLarge,
    build_equivariant_torus,
    quotient_complex,
    rational_alpha_oracle,
    regularize,
    run_oracle_case,
)
from .snf import IntMatrix

_INT64_MAX = 2**63 - 1
_INT64_MIN = -(2**63)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INCONSISTENT = 3

SIZE_ENV_VAR = "TOROIDAL_MAX_SIMPLICES"


def _json_ready(value):
    """Recursively convert, stringifying ints that do not fit in 64 bits."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value) if value > _INT64_MAX or value < _INT64_MIN else value
    if isinstance(value, dict):
        return {k: _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    return value


def _json_int(value) -> int:
    if isinstance(value, str):
        return int(value)
    if isinstance(value, int):
        return value
    raise ValueError(f"expected an integer or decimal string, got {value!r}")


def table_to_json_dict(L: LatticeType, table: CohomologyTable) -> dict:
    fixed = fixed_point_set(L)
    return {
        "p": L.p,
        "type": [L.r, L.s, L.t],
        "n": L.rank,
        "groups": [
            {"k": k, "free_rank": a, "p_torsion_rank": b}
            for k, (a, b) in enumerate(table.entries)
        ],
        "fixed_points": {
            "components": fixed.component_count,
            "torus_dim": fixed.component_torus_dim,
        },
    }


def table_from_json_dict(doc: dict) -> tuple[LatticeType, CohomologyTable]:
    """Inverse of table_to_json_dict; accepts stringified big integers."""
    r, s, t = (_json_int(v) for v in doc["type"])
    L = LatticeType(_json_int(doc["p"]), r, s, t)
    groups = sorted(doc["groups"], key=lambda g: _json_int(g["k"]))
    entries = tuple(
        (_json_int(g["free_rank"]), _json_int(g["p_torsion_rank"])) for g in groups
    )
    return L, CohomologyTable(L.p, entries)


def _table_csv(table: CohomologyTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "free_rank", "p_torsion_rank"])
    for k, (a, b) in enumerate(table.entries):
        writer.writerow([k, a, b])
    return buf.getvalue()


def _table_plain(L: LatticeType, table: CohomologyTable, out) -> None:
    fixed = fixed_point_set(L)
    print(f"type (r,s,t) = ({L.r},{L.s},{L.t}) at p = {L.p}, rank n = {L.rank}", file=out)
    for k in range(table.max_degree + 1):
        print(f"H^{k} = {table.group_string(k)}", file=out)
    print(
        f"fixed points: {fixed.component_count} component(s), "
        f"each a torus of dimension {fixed.component_torus_dim}",
        file=out,
    )


def _parse_type(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"type must be r,s,t with three entries, got {text!r}")
    r, s, t = (int(x.strip()) for x in parts)
    return r, s, t


def read_matrix_file(path: str) -> tuple[IntMatrix, int | None]:
    """Parse the shared matrix text format, honoring a '# p=<prime>' header."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    header_p = None
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("#"):
            content = stripped.lstrip("#").strip()
            if content.startswith("p="):
                header_p = int(content[2:].strip())
        elif stripped:
            break
    return IntMatrix.from_text(text), header_p


def _cmd_cohomology(args) -> int:
    try:
        r, s, t = _parse_type(args.type)
        L = LatticeType(args.p, r, s, t)
        max_degree = args.max_degree if args.max_degree is not None else L.rank
        table = quotient_cohomology(L, max_degree)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        doc = table_to_json_dict(L, table)
        if args.equivariant:
            eq = equivariant_cohomology(L, max_degree)
            doc["equivariant"] = [
                {"k": k, "free_rank": a, "p_torsion_rank": b}
                for k, (a, b) in enumerate(eq.entries)
            ]
        print(json.dumps(_json_ready(doc), indent=2))
    elif args.format == "csv":
        sys.stdout.write(_table_csv(table))
    else:
        _table_plain(L, table, sys.stdout)
        if args.equivariant:
            eq = equivariant_cohomology(L, max_degree)
            print("equivariant cohomology:")
            for k, (a, b) in enumerate(eq.entries):
                parts = []
                if a:
                    parts.append("Z" if a == 1 else f"Z^{a}")
                if b:
                    parts.append(f"(Z/{L.p})" if b == 1 else f"(Z/{L.p})^{b}")
                group = " ⊕ ".join(parts) if parts else "0"
                print(f"H^{k}_G = {group}")
    return EXIT_OK


def _cmd_classify(args) -> int:
    try:
        matrix, header_p = read_matrix_file(args.matrix_file)
    except (OSError, ValueError) as exc:
        print(f"error: cannot read matrix: {exc}", file=sys.stderr)
        return EXIT_INPUT
    p = args.p if args.p is not None else header_p
    if p is None:
        print("error: no prime given (use --p or a '# p=<prime>' header)", file=sys.stderr)
        return EXIT_INPUT
    try:
        L = classify(matrix, p)
        max_degree = args.max_degree if args.max_degree is not None else L.rank
        table = quotient_cohomology(L, max_degree)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    verification = None
    if args.verify == "rational":
        verification = []
        for k in range(L.rank + 1):
            expected = table[k][0] if k <= table.max_degree else 0
            got = rational_alpha_oracle(matrix, k)
            verification.append((k, expected, got, expected == got))
    if args.format == "json":
        doc = table_to_json_dict(L, table)
        doc["trivial_action"] = is_trivial_action(matrix)
        if verification is not None:
            doc["rational_verification"] = [
                {"k": k, "expected": e, "got": g, "ok": ok}
                for k, e, g, ok in verification
            ]
        print(json.dumps(_json_ready(doc), indent=2))
    elif args.format == "csv":
        sys.stdout.write(_table_csv(table))
    else:
        if is_trivial_action(matrix):
            print("matrix is the identity: trivial action")
        _table_plain(L, table, sys.stdout)
        if verification is not None:
            for k, e, g, ok in verification:
                print(
                    f"rational oracle degree {k}: expected {e}, got {g}: "
                    f"{'PASS' if ok else 'FAIL'}"
                )
    if verification is not None and not all(ok for *_, ok in verification):
        return EXIT_INCONSISTENT
    return EXIT_OK


def _cmd_oracle(args) -> int:
    gate = args.max_size
    if gate is None:
        gate = int(os.environ.get(SIZE_ENV_VAR, DEFAULT_SIMPLEX_GATE))
    try:
        model = build_equivariant_torus(
            args.case, p=args.p, r=args.r, n=args.n, t=args.t, m=args.m
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = run_oracle_case(model, args.mode, max_simplices=gate)
    except ComplexTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.dump_quotient:
        K, act, _ = regularize(model.complex, model.action)
        with open(args.dump_quotient, "w", encoding="utf-8") as fh:
            fh.write(quotient_complex(K, act).to_text())
    if args.format == "json":
        doc = {
            "case": report.description,
            "p": report.lattice_type.p,
            "type": [
                report.lattice_type.r,
                report.lattice_type.s,
                report.lattice_type.t,
            ],
            "mode": report.mode,
            "subdivisions": report.subdivisions,
            "total_simplices": report.total_simplices,
            "quotient_simplices": report.quotient_simplices,
            "rows": [
                {
                    "label": row.label,
                    "expected": row.expected,
                    "actual": row.actual,
                    "ok": row.ok,
                }
                for row in report.rows
            ],
            "passed": report.passed,
        }
        print(json.dumps(_json_ready(doc), indent=2))
    else:
        L = report.lattice_type
        print(f"case: {report.description}")
        print(
            f"type ({L.r},{L.s},{L.t}) at p = {L.p}; mode {report.mode}; "
            f"{report.subdivisions} subdivision(s); "
            f"{report.total_simplices} simplices -> quotient {report.quotient_simplices}"
        )
        for row in report.rows:
            print(
                f"{row.label}: expected {row.expected}, got {row.actual}: "
                f"{'PASS' if row.ok else 'FAIL'}"
            )
        print(f"RESULT: {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_INCONSISTENT


def _cmd_grid(args) -> int:
    try:
        bounds = (args.max_r, args.max_s, args.max_t)
        if any(b < 0 for b in bounds):
            raise ValueError("grid bounds must be nonnegative")
        types = [
            LatticeType(args.p, r, s, t)
            for r in range(args.max_r + 1)
            for s in range(args.max_s + 1)
            for t in range(args.max_t + 1)
        ]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        docs = [
            table_to_json_dict(L, quotient_cohomology(L, L.rank)) for L in types
        ]
        print(json.dumps(_json_ready(docs), indent=2))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["p", "r", "s", "t", "k", "free_rank", "p_torsion_rank"])
        for L in types:
            table = quotient_cohomology(L, L.rank)
            for k, (a, b) in enumerate(table.entries):
                writer.writerow([L.p, L.r, L.s, L.t, k, a, b])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toroidal",
        description="Integral cohomology of torus quotients by prime-order cyclic actions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_coh = sub.add_parser(
        "cohomology", help="table for a lattice type (r,s,t) at a prime p"
    )
    p_coh.add_argument("--p", type=int, required=True, help="the prime order")
    p_coh.add_argument(
        "--type", required=True, help="lattice type as r,s,t (e.g. 3,0,0)"
    )
    p_coh.add_argument("--max-degree", type=int, default=None)
    p_coh.add_argument(
        "--format", choices=("plain", "json", "csv"), default="plain"
    )
    p_coh.add_argument(
        "--equivariant",
        action="store_true",
        help="also print the Borel-construction table",
    )
    p_coh.set_defaults(func=_cmd_cohomology)

    p_cls = sub.add_parser(
        "classify", help="classify a matrix file and print its quotient table"
    )
    p_cls.add_argument("matrix_file", help="text file: 'n n' then n rows of n integers")
    p_cls.add_argument(
        "--p", type=int, default=None, help="prime order (overrides '# p=' header)"
    )
    p_cls.add_argument("--max-degree", type=int, default=None)
    p_cls.add_argument(
        "--format", choices=("plain", "json", "csv"), default="plain"
    )
    p_cls.add_argument(
        "--verify",
        choices=("rational",),
        default=None,
        help="cross-check free ranks against the exterior-power oracle",
    )
    p_cls.set_defaults(func=_cmd_classify)

    p_orc = sub.add_parser(
        "oracle", help="build an equivariant triangulation and compare pipelines"
    )
    p_orc.add_argument(
        "--case", required=True, choices=("sign", "cyclic", "hexagonal", "mixed")
    )
    p_orc.add_argument(
        "--r", type=int, default=1, help="sign factors (sign and mixed cases)"
    )
    p_orc.add_argument(
        "--n",
        type=int,
        default=1,
        help="regular-representation blocks (cyclic and mixed cases)",
    )
    p_orc.add_argument("--p", type=int, default=None, help="prime (cyclic case)")
    p_orc.add_argument("--t", type=int, default=0, help="extra trivial circle factors")
    p_orc.add_argument(
        "--m", type=int, default=None, help="vertices per circle factor / grid size"
    )
    p_orc.add_argument("--mode", choices=("integral", "field"), default="integral")
    p_orc.add_argument(
        "--max-size",
        type=int,
        default=None,
        help=f"integral-mode simplex gate (default ${SIZE_ENV_VAR} or "
        f"{DEFAULT_SIMPLEX_GATE})",
    )
    p_orc.add_argument("--format", choices=("plain", "json"), default="plain")
    p_orc.add_argument(
        "--dump-quotient",
        metavar="FILE",
        default=None,
        help="also write the quotient complex in the line-based text format",
    )
    p_orc.set_defaults(func=_cmd_oracle)

    p_grid = sub.add_parser(
        "grid", help="batch tables for every type within componentwise bounds"
    )
    p_grid.add_argument("--p", type=int, required=True)
    p_grid.add_argument("--max-r", type=int, default=2)
    p_grid.add_argument("--max-s", type=int, default=2)
    p_grid.add_argument("--max-t", type=int, default=2)
    p_grid.add_argument("--format", choices=("csv", "json"), default="csv")
    p_grid.set_defaults(func=_cmd_grid)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
