"""Command line surface: JSON in, JSON or table out, deterministic bytes.

Commands: root, flat, sigma, decompose, classify, charvar, enumerate-22,
oracle.  Payloads use the package's JSON schemas (rationals as "a/b"
strings, free exponents as integer arrays; no floating point anywhere).

Exit codes: 0 for a definitive verdict, 10 when the verdict lands in an
open case, 11 when it carries assumption flags, 2 for input errors, 3 for
internal invariant violations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .core import (
    InvariantViolation,
    MultParam,
    NotDecomposableError,
    OracleBudgetError,
    PreconditionError,
    Quiver,
    StructuralError,
    as_dim_vector,
)
from .forms import p_value
from .reflect import classify_root
from .sigma import brute_force_flat, brute_force_sigma, is_flat, sigma_membership
from .decompose import decompose_flat, refine_to_sigma
from .classify import Verdict, classify_crab, classify_general, is_crab_shaped
from .charvar import classify_charvar, problem_from_json
from .enum22 import SearchBounds, enumerate_22, verify_22_side_conditions

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUG = 3
EXIT_OPEN = 10
EXIT_ASSUMED = 11


def _emit(payload, fmt: str, table_lines=None) -> None:
    if fmt == "table" and table_lines is not None:
        for line in table_lines:
            print(line)
    else:
        print(json.dumps(payload, sort_keys=True, separators=(",", ": "), indent=1))


def _load_payload(args) -> dict:
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructuralError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise StructuralError("top-level JSON payload must be an object")
    return data


def _parse_datum(data: dict):
    try:
        quiver = Quiver.from_json(data["quiver"])
    except KeyError as exc:
        raise StructuralError("payload needs a 'quiver' object") from exc
    if "q" in data:
        q = MultParam.from_json(data["q"])
    else:
        q = MultParam.trivial(quiver.vertex_count)
    if len(q) != quiver.vertex_count:
        raise StructuralError("parameter length does not match the quiver")
    theta = as_dim_vector(data.get("theta", [0] * quiver.vertex_count), quiver)
    if "alpha" not in data:
        raise StructuralError("payload needs an 'alpha' array")
    alpha = as_dim_vector(data["alpha"], quiver)
    return quiver, q, theta, alpha


def _verdict_exit(verdict: Verdict) -> int:
    if verdict.has_open_case:
        return EXIT_OPEN
    if verdict.assumptions:
        return EXIT_ASSUMED
    return EXIT_OK


def _cmd_root(args) -> int:
    quiver, _q, _theta, alpha = _parse_datum(_load_payload(args))
    rc = classify_root(quiver, alpha)
    payload = {
        "tag": rc.tag,
        "witness": list(rc.witness),
        "terminal": list(rc.terminal),
        "p": p_value(quiver, alpha),
    }
    _emit(payload, args.format, [f"{rc.tag}  terminal={list(rc.terminal)}  p={payload['p']}"])
    return EXIT_OK


def _cmd_flat(args) -> int:
    quiver, q, theta, alpha = _parse_datum(_load_payload(args))
    cert = is_flat(quiver, q, theta, alpha)
    payload = {"flat": cert.flat, "reason": cert.reason,
               "terminal": list(cert.sequence.alpha)}
    _emit(payload, args.format, [f"flat={cert.flat}  ({cert.reason})"])
    return EXIT_OK


def _cmd_sigma(args) -> int:
    quiver, q, theta, alpha = _parse_datum(_load_payload(args))
    status = sigma_membership(quiver, q, theta, alpha)
    payload = {"tag": status.tag, "in_sigma": status.in_sigma}
    if status.sequence is not None:
        payload["terminal"] = list(status.sequence.alpha)
        payload["word"] = list(status.sequence.word)
    if status.form is not None:
        payload["multiple"] = status.form.m
        payload["ell"] = status.form.ell
        payload["delta"] = list(status.form.delta)
    if status.split is not None:
        payload["J"] = sorted(status.split.J)
        payload["K"] = sorted(status.split.K)
        payload["j"] = status.split.j
        payload["k"] = status.split.k
    if status.stuck_vertex is not None:
        payload["stuck_vertex"] = status.stuck_vertex
        payload["stuck_pairing"] = status.stuck_pairing
    _emit(payload, args.format, [f"{status.tag}"])
    return EXIT_OK


def _cmd_decompose(args) -> int:
    quiver, q, theta, alpha = _parse_datum(_load_payload(args))
    fd = decompose_flat(quiver, q, theta, alpha)
    sd = refine_to_sigma(quiver, q, theta, fd)
    payload = {
        "flat_parts": [
            {"vector": list(p.vector), "kind": p.kind, "multiple": p.multiple,
             "gamma": list(p.gamma) if p.gamma else None}
            for p in fd.parts
        ],
        "sigma_parts": [{"vector": list(v), "multiplicity": m} for v, m in sd.parts],
        "intersection_edges": [[list(a), list(b)] for a, b in sd.intersection_edges],
        "forest": sd.is_forest(),
    }
    lines = [f"flat: {[list(p.vector) for p in fd.parts]}",
             f"sigma: {[(list(v), m) for v, m in sd.parts]}"]
    _emit(payload, args.format, lines)
    return EXIT_OK


def _cmd_classify(args) -> int:
    quiver, q, theta, alpha = _parse_datum(_load_payload(args))
    if is_crab_shaped(quiver) is not None:
        verdict = classify_crab(quiver, q, theta, alpha)
    else:
        verdict = classify_general(quiver, q, theta, alpha)
    _emit(verdict.to_json(), args.format,
          [f"{verdict.overall}: {verdict.statement}"]
          + [f"  factor {list(f.vector)} x{f.count}: {f.verdict}" for f in verdict.per_factor])
    return _verdict_exit(verdict)


def _cmd_charvar(args) -> int:
    problem = problem_from_json(_load_payload(args))
    result = classify_charvar(problem)
    _emit(result.to_json(), args.format,
          [f"branch {result.branch}: {result.statement}",
           f"ell={result.ell} p={result.p} expected_dimension={result.expected_dimension}"])
    verdict = result.quiver_verdict
    if result.branch in ("a", "b", "c"):
        return EXIT_OPEN
    if verdict.assumptions:
        return EXIT_ASSUMED
    return EXIT_OK


def _parse_bounds(text: str | None) -> SearchBounds:
    bounds = SearchBounds()
    if not text:
        return bounds
    values = dict(center=bounds.max_center, legs=bounds.max_legs,
                  len=bounds.max_leg_length, genus=bounds.max_genus)
    for item in text.split(","):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in values:
            raise StructuralError(f"unknown bound '{key}' (use center, legs, len, genus)")
        try:
            values[key] = int(value)
        except ValueError as exc:
            raise StructuralError(f"bound '{key}' needs an integer") from exc
    return SearchBounds(values["center"], values["legs"], values["len"], values["genus"])


def _cmd_enumerate(args) -> int:
    bounds = _parse_bounds(args.bounds)
    entries = enumerate_22(bounds, args.genus)
    reports = [verify_22_side_conditions(e) for e in entries]
    payload = {"count": len(entries), "entries": reports}
    lines = [f"{i + 1:>2}. {e.table_row()}" for i, e in enumerate(entries)]
    flagged = [i + 1 for i, r in enumerate(reports) if r["two_delta_one"]]
    lines.append(f"total {len(entries)}; (2*delta,1) entries: {flagged}")
    _emit(payload, args.format, lines)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    data = _load_payload(args)
    quiver, q, theta, alpha = _parse_datum(data)
    op = data.get("op", "sigma")
    if op == "sigma":
        value = brute_force_sigma(quiver, q, theta, alpha, args.budget)
    elif op == "flat":
        value = brute_force_flat(quiver, q, theta, alpha, args.budget)
    else:
        raise StructuralError("oracle op must be 'sigma' or 'flat'")
    _emit({"op": op, "result": value}, args.format, [f"{op}: {value}"])
    return EXIT_OK


_COMMANDS = {
    "root": _cmd_root,
    "flat": _cmd_flat,
    "sigma": _cmd_sigma,
    "decompose": _cmd_decompose,
    "classify": _cmd_classify,
    "charvar": _cmd_charvar,
    "enumerate-22": _cmd_enumerate,
    "oracle": _cmd_oracle,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qresolve",
        description="Exact classification of multiplicative quiver varieties and "
                    "punctured-surface character varieties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("root", "flat", "sigma", "decompose", "classify", "charvar", "oracle"):
        p = sub.add_parser(name)
        p.add_argument("--input", default="-", help="JSON file, or - for stdin")
        p.add_argument("--format", choices=("json", "table"), default="json")
        if name == "oracle":
            p.add_argument("--budget", type=int, default=8,
                           help="maximum entry sum handed to the brute-force oracle")
    p = sub.add_parser("enumerate-22")
    p.add_argument("--genus", choices=("zero", "positive"), default="zero")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--bounds", default=None,
                   help="comma list like center=13,legs=6,len=12,genus=3")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    threads = os.environ.get("QRESOLVE_THREADS")
    if threads is not None:
        try:
            if int(threads) < 1:
                raise ValueError
        except ValueError:
            print("QRESOLVE_THREADS must be a positive integer", file=sys.stderr)
            return EXIT_INPUT
        # accepted as an upper bound; the current implementation is single threaded
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (StructuralError, PreconditionError, NotDecomposableError,
            OracleBudgetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_BUG


if __name__ == "__main__":
    sys.exit(main())
