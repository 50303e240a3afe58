"""Command-line front end.

    pqforms forms -n 14
    pqforms prime -p 23 -n 14
    pqforms pq -p 3 -q 7 -n 5 --check
    pqforms verify --n-max 30 --p-max 1000 --jobs 4
    pqforms table -n 14 --bound 1000

Every subcommand takes --format text|json. Exit codes: 0 ok, 1 invalid
input, 2 internal consistency fault (including sweep mismatches),
3 overflow or resource exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .classgroup import class_group, genus_partition, is_convenient
from .errors import ConsistencyError, HypothesisError
from .forms import QuadForm, Representation, enumerate_reduced
from .represent import (
    brute_force_pq,
    classify_pair_table,
    classify_prime,
    decide_pq,
    in_s14,
    sweep_theorem,
)

EXIT_OK, EXIT_INPUT, EXIT_FAULT, EXIT_RESOURCE = 0, 1, 2, 3


def _form(f: QuadForm | None):
    return None if f is None else f.as_list()


def _rep(r: Representation) -> dict:
    return {"m": r.m, "x": r.x, "y": r.y, "form": _form(r.form), "proper": r.proper}


def run_forms(n: int) -> dict:
    if n < 1:
        raise HypothesisError(f"n must be positive, got {n}")
    D = -4 * n
    forms = enumerate_reduced(D)
    return {
        "n": n,
        "D": D,
        "h": len(forms),
        "forms": [_form(f) for f in forms],
        "invariants": class_group(D).invariants(),
        "genera": [
            {"residues": sorted(res), "forms": [_form(f) for f in blk]}
            for res, blk in genus_partition(D).blocks
        ],
        "convenient": is_convenient(n),
    }


def run_prime(p: int, n: int) -> dict:
    c = classify_prime(p, n)
    out = {
        "p": c.p,
        "n": c.n,
        "symbol": c.symbol,
        "residue": c.residue,
        "forms": [_form(f) for f in c.forms],
        "witnesses": [_rep(r) for r in c.witnesses],
    }
    if n == 14:
        out["in_S"] = in_s14(p)
    return out


def run_pq(p: int, q: int, n: int, check: bool) -> dict:
    d = decide_pq(p, q, n)
    out = {
        "p": d.p,
        "q": d.q,
        "n": d.n,
        "representable": d.representable,
        "common_form": _form(d.common_form),
        "witness": None if d.witness is None else list(d.witness),
        "composed_witness": None if d.composed_witness is None else list(d.composed_witness),
    }
    if check:
        bf = brute_force_pq(p, q, n)
        out["brute_force"] = None if bf is None else list(bf)
        out["agrees"] = (bf is not None) == d.representable
        if not out["agrees"]:
            raise ConsistencyError(f"decision and exhaustive search disagree on {p}*{q}, n={n}")
    return out


def run_verify(n_max: int, p_max: int, jobs: int, inject_fault: bool) -> dict:
    r = sweep_theorem(n_max, p_max, jobs=jobs, inject_fault=inject_fault)
    return {
        "n_max": r.n_max,
        "p_max": r.p_max,
        "pairs_tested": r.pairs_tested,
        "representable": r.representable,
        "mismatch_count": len(r.mismatches),
        "mismatches": [list(m) for m in r.mismatches],
    }


def run_table(n: int, bound: int) -> dict:
    t = classify_pair_table(n, bound)
    rows = []
    for row in t.rows:
        entry: dict[str, Any] = {
            "form": _form(row.form),
            "residues": list(row.residues),
            "primes": row.primes,
        }
        if row.in_S is not None:
            entry["in_S"] = list(row.in_S)
            entry["not_in_S"] = list(row.not_in_S)
        rows.append(entry)
    return {
        "n": t.n,
        "bound": t.bound,
        "modulus": t.modulus,
        "rows": rows,
        "genera": [{"residues": list(res), "forms": [_form(f) for f in blk]} for res, blk in t.genera],
    }


def _text(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, v in value.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{key}:")
            for item in v:
                sub = _text(item, indent + 2)
                sub[0] = pad + "  - " + sub[0].lstrip()
                lines.extend(sub)
        else:
            lines.append(f"{pad}{key}: {_scalar(v)}")
    return lines


def _scalar(v: Any) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def render(record: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, indent=2)
    lines = [f"command: {record['command']}", f"status: {record['status']}"]
    if record["status"] == "error":
        lines.append(f"message: {record['message']}")
    else:
        lines.extend(_text(record["result"]))
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pqforms",
        description="Reduced forms of discriminant -4n and representations pq = x^2 + ny^2.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forms", parents=[common], help="reduced forms, genera, convenience")
    p.add_argument("-n", type=int, required=True)

    p = sub.add_parser("prime", parents=[common], help="which reduced forms represent p")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-n", type=int, required=True)

    p = sub.add_parser("pq", parents=[common], help="decide pq = x^2 + ny^2")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--check", action="store_true", help="cross-check by exhaustive search")

    p = sub.add_parser("verify", parents=[common], help="sweep the decision against exhaustive search")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--p-max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("table", parents=[common], help="residue classes represented by each form")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    return parser


def _inputs(args: argparse.Namespace) -> dict:
    skip = {"command", "format", "inject_fault"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def _dispatch(args: argparse.Namespace) -> dict:
    if args.command == "forms":
        return run_forms(args.n)
    if args.command == "prime":
        return run_prime(args.p, args.n)
    if args.command == "pq":
        return run_pq(args.p, args.q, args.n, args.check)
    if args.command == "verify":
        if args.n_max < 1 or args.p_max < 1 or args.jobs < 1:
            raise HypothesisError("--n-max, --p-max and --jobs must be positive")
        return run_verify(args.n_max, args.p_max, args.jobs, args.inject_fault)
    if args.command == "table":
        if args.bound < 1:
            raise HypothesisError("--bound must be positive")
        return run_table(args.n, args.bound)
    raise AssertionError(args.command)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    record: dict[str, Any] = {"command": args.command, "inputs": _inputs(args)}
    try:
        record["result"] = _dispatch(args)
        record["status"] = "ok"
        code = EXIT_OK
        if args.command == "verify" and record["result"]["mismatch_count"]:
            code = EXIT_FAULT
            print(f"{record['result']['mismatch_count']} mismatches", file=sys.stderr)
    except (HypothesisError, ValueError) as exc:
        record.update(status="error", message=str(exc))
        code = EXIT_INPUT
    except ConsistencyError as exc:
        record.update(status="error", message=str(exc))
        code = EXIT_FAULT
    except (OverflowError, MemoryError) as exc:
        record.update(status="error", message=str(exc) or type(exc).__name__)
        code = EXIT_RESOURCE
    if record["status"] == "error":
        print(f"error: {record['message']}", file=sys.stderr)
    print(render(record, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
