"""Command-line front end.

Exit codes: 0 success / PASS, 1 verification FAIL, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from math import comb
from pathlib import Path

import numpy as np

from .basis import dimension
from .combinatorics import (
    MAX_N,
    BoundaryDivisor,
    CyclicOrder,
    DivisorError,
    MarkedSubset,
    canonicalize,
    decompose,
    enumerate_divisors,
    is_consecutive,
    num_divisors,
)
from .expansion import basis_for, expand, oracle_expand
from .linalg import in_row_space, rank
from .relations import RELATION_MAX_N, quadruples, relation_matrix, verify_consistency

VERIFY_CAPS = {"oracle": 12, "relations": 8, "rank": 8}
U64_MAX = 2**64 - 1


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _parse_subset(n: int, text: str) -> MarkedSubset:
    try:
        labels = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse subset {text!r}; expected comma-separated labels")
    try:
        return MarkedSubset.of(n, labels)
    except ValueError as e:
        raise UsageError(str(e))


def _parse_divisor(n: int, text: str) -> BoundaryDivisor:
    try:
        return canonicalize(_parse_subset(n, text))
    except DivisorError as e:
        raise UsageError(str(e))


def _order(n: int, text: str | None) -> CyclicOrder:
    if text is None:
        return CyclicOrder.standard(n)
    try:
        order = CyclicOrder.parse(text)
    except ValueError as e:
        raise UsageError(f"bad --order: {e}")
    if order.n != n:
        raise UsageError(f"--order has {order.n} labels but n={n}")
    return order


def _check_n(n: int, low: int = 3, high: int = MAX_N) -> None:
    if not low <= n <= high:
        raise UsageError(f"n must be in {low}..{high}, got {n}")


def _subset_json(d: BoundaryDivisor) -> list[int]:
    return list(d.labels)


def random_orders(n: int, seed: int, count: int) -> list[CyclicOrder]:
    """``count`` cyclic orders drawn from independent children of ``seed``."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [CyclicOrder(tuple(int(x) + 1 for x in np.random.default_rng(c).permutation(n))) for c in children]


# -- commands -----------------------------------------------------------------


def cmd_dim(args) -> int:
    _check_n(args.n)
    rec = {"n": args.n, "num_divisors": num_divisors(args.n), "dimension": dimension(args.n)}
    if args.format == "json":
        sys.stdout.write(_dump(rec))
    else:
        print(f"n={rec['n']} num_divisors={rec['num_divisors']} dimension={rec['dimension']}")
    return 0


def cmd_enumerate(args) -> int:
    _check_n(args.n)
    divs = enumerate_divisors(args.n)
    if args.format == "json":
        sys.stdout.write(_dump({"n": args.n, "divisors": [_subset_json(d) for d in divs]}))
    else:
        for d in divs:
            print(d)
    return 0


def cmd_decompose(args) -> int:
    _check_n(args.n)
    d = _parse_divisor(args.n, args.subset)
    order = _order(args.n, args.order)
    dec = decompose(d, order)
    if args.format == "json":
        sys.stdout.write(_dump({
            "divisor": _subset_json(d),
            "order": list(order.arrangement),
            "k": dec.k,
            "blocks": [list(b) for b in dec.blocks],
            "gaps": [list(g) for g in dec.gaps],
            "signature": dec.signature(),
        }))
    else:
        print(f"{d} k={dec.k} {dec.signature()}")
    return 0


def cmd_basis(args) -> int:
    _check_n(args.n)
    order = _order(args.n, args.order)
    basis = basis_for(order)
    if args.format == "json":
        sys.stdout.write(_dump({
            "n": args.n,
            "order": list(order.arrangement),
            "dimension": len(basis),
            "basis": [_subset_json(d) for d in basis],
        }))
    else:
        for d in basis:
            print(d)
    return 0


def cmd_expand(args) -> int:
    _check_n(args.n, low=4)
    d = _parse_divisor(args.n, args.subset)
    order = _order(args.n, args.order)
    vec = expand(d, order)
    if args.format == "json":
        sys.stdout.write(_dump([{"subset": _subset_json(j), "coeff": c} for c, j in vec.terms()]))
    else:
        print(vec)
    return 0


def _verify_oracle(n, orders):
    checks, failures = 0, []
    for order in orders:
        basis = basis_for(order)
        for d in enumerate_divisors(n):
            if not is_consecutive(d, order):
                continue
            checks += 1
            try:
                ok = expand(d, order, basis) == oracle_expand(d, order, basis)
                err = None
            except Exception as e:  # report, keep sweeping
                ok, err = False, f"{type(e).__name__}: {e}"
            if not ok:
                failures.append({"check": "oracle", "order": list(order.arrangement),
                                 "divisor": _subset_json(d), "error": err})
    return {"checks": checks, "orders": len(orders), "failures": failures}


def _verify_relations(n, orders):
    rm = relation_matrix(n)
    checks, failures = 0, []
    for order in orders:
        basis = basis_for(order)
        for q in quadruples(n):
            checks += 1
            if not verify_consistency(q, order, basis):
                failures.append({"check": "relations", "order": list(order.arrangement),
                                 "quadruple": list(q.labels)})
    # each row must annihilate the expansion map
    order = orders[0]
    basis = basis_for(order)
    images = [expand(d, order, basis).coeffs for d in rm.columns]
    for i, row in enumerate(rm.rows):
        total = sum((v * images[j] for j, v in row.items()), np.zeros(len(basis), dtype=np.int64))
        if np.any(total):
            failures.append({"check": "row-annihilation", "row": i + 1,
                             "quadruple": list(rm.quads[i // 2].labels)})
    return {"rows": rm.shape[0], "columns": rm.shape[1], "checks": checks,
            "orders": len(orders), "failures": failures}


def _verify_rank(n):
    rm = relation_matrix(n)
    m = rm.to_intmatrix()
    r = rank(m)
    expected = comb(n, 2) - n
    failures = []
    if r != expected:
        failures.append({"check": "rank", "rank": r, "expected": expected})
    quotient = len(rm.columns) - r
    if quotient != dimension(n):
        failures.append({"check": "quotient", "quotient": quotient, "dimension": dimension(n)})
    order = CyclicOrder.standard(n)
    basis = basis_for(order)
    residuals = 0
    for d in rm.columns:
        if not is_consecutive(d, order):
            continue
        residuals += 1
        combo = {d: 1}
        for c, j in expand(d, order, basis).terms():
            combo[j] = combo.get(j, 0) - c
        if not in_row_space(rm.column_vector(combo), m):
            failures.append({"check": "residual", "divisor": _subset_json(d)})
    return {"rank": r, "expected_rank": expected, "columns": len(rm.columns),
            "quotient": quotient, "dimension": dimension(n), "residual_checks": residuals,
            "failures": failures}


def cmd_verify(args) -> int:
    n, mode = args.n, args.mode
    if not 0 <= args.seed <= U64_MAX:
        raise UsageError("--seed must be an unsigned 64-bit integer")
    modes = ["oracle", "relations", "rank"] if mode == "all" else [mode]
    for m in modes:
        cap = VERIFY_CAPS[m]
        if n > cap:
            raise UsageError(f"refusing verify --mode {mode} for n={n}: {m} is capped at n <= {cap}")
    _check_n(n, low=4)

    report = {"n": n, "mode": mode, "seed": args.seed}
    if "oracle" in modes:
        report["oracle"] = _verify_oracle(n, [CyclicOrder.standard(n)] + random_orders(n, args.seed, args.orders))
    if "relations" in modes:
        extra = random_orders(n, args.seed + 1 if args.seed < U64_MAX else 0, 5)
        report["relations"] = _verify_relations(n, [CyclicOrder.standard(n)] + extra)
    if "rank" in modes:
        report["rank"] = _verify_rank(n)
    passed = all(not report[m]["failures"] for m in modes)
    report["result"] = "PASS" if passed else "FAIL"

    if args.format == "json":
        sys.stdout.write(_dump(report))
    else:
        print(f"verify n={n} mode={mode} seed={args.seed}")
        if "oracle" in report:
            o = report["oracle"]
            print(f"oracle: {o['checks']} consecutive-divisor checks over {o['orders']} orders, "
                  f"{len(o['failures'])} failures")
        if "relations" in report:
            r = report["relations"]
            print(f"relations: {r['rows']} relation rows x {r['columns']} columns, {r['checks']} consistency "
                  f"checks over {r['orders']} orders, {len(r['failures'])} failures")
        if "rank" in report:
            k = report["rank"]
            print(f"rank: rank {k['rank']} (expected {k['expected_rank']}), quotient {k['quotient']} "
                  f"(dimension {k['dimension']}), {k['residual_checks']} residual checks, "
                  f"{len(k['failures'])} failures")
        for m in modes:
            for f in report[m]["failures"]:
                print("FAILURE " + json.dumps(f, sort_keys=True))
        print(report["result"])
    return 0 if passed else 1


def cmd_export_matrix(args) -> int:
    n = args.n
    if not 4 <= n <= RELATION_MAX_N:
        raise UsageError(f"export-matrix supports 4 <= n <= {RELATION_MAX_N}, got {n}")
    path = args.out or args.path
    if path is None:
        raise UsageError("export-matrix needs an output path")
    rm = relation_matrix(n)
    try:
        with open(Path(path), "w", newline="\n") as fh:
            fh.write(rm.to_coo_text())
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e}")
    r, c = rm.shape
    if args.format == "json":
        sys.stdout.write(_dump({"n": n, "path": str(path), "rows": r, "cols": c, "nnz": rm.nnz}))
    else:
        print(f"wrote {path}: {r} rows, {c} cols, {rm.nnz} nonzeros")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="picardm0n", description="Boundary divisors and Pic(M_0,n).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", parents=[common], help="divisor count and Picard rank")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("enumerate", parents=[common], help="list all boundary divisors")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("decompose", parents=[common], help="block/gap polygon of a divisor")
    p.add_argument("n", type=int)
    p.add_argument("subset")
    p.add_argument("--order")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("basis", parents=[common], help="non-adjacent basis for an order")
    p.add_argument("n", type=int)
    p.add_argument("--order")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("expand", parents=[common], help="expand a divisor in the non-adjacent basis")
    p.add_argument("n", type=int)
    p.add_argument("subset")
    p.add_argument("--order")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", parents=[common], help="run verification sweeps")
    p.add_argument("n", type=int)
    p.add_argument("--mode", choices=("oracle", "relations", "rank", "all"), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--orders", type=int, default=10, help="random orders for the oracle sweep")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-matrix", parents=[common], help="write the relation matrix")
    p.add_argument("n", type=int)
    p.add_argument("path", nargs="?")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_matrix)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"{parser.prog} {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
