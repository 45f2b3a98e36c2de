"""Command-line front end.

Four commands, all emitting deterministic JSON reports (sorted keys,
shortest-round-trip floats) to stdout or --output:

    gaugephase decompose matrix.json
    gaugephase phases evolution.json --quadrature pancharatnam
    gaugephase offdiag evolution.json --no-triples
    gaugephase verify --suite gauge --n 4 --trials 50 --seed 7

Exit codes: 0 success, 1 verification failure, 2 unreadable/malformed
input, 3 input not unitary at tolerance, 4 non-generic input (canonical
factorization undefined).
"""

from __future__ import annotations

import argparse
import sys
from typing import Any

import numpy as np

from . import io
from .canonical import decompose, modulus_invariants, phase_invariant_list, reconstruct
from .core import (
    DEFAULT_TOLERANCES,
    NonGenericMatrixError,
    NonGenericVectorError,
    NotUnitaryError,
    Tolerances,
    Undefined,
    UnitaryMatrix,
)
from .curves import QUADRATURES, FrameEvolution, endpoint_overlap_matrix, frame_phase_bundle
from .offdiag import verify_offdiag_identity
from .verification import SUITES, run_suite

__all__ = ["main"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_NOT_UNITARY = 3
EXIT_NON_GENERIC = 4


def _tolerances(args: argparse.Namespace) -> Tolerances:
    return Tolerances(
        tol_generic=args.tol_generic,
        tol_unitary=args.tol_unitary,
    )


def _phase_fields(value: float | Undefined, name: str) -> dict[str, Any]:
    if isinstance(value, Undefined):
        return {name: None, f"{name}_reason": value.reason}
    return {name: float(value)}


def _complex_or_null(value, name: str) -> dict[str, Any]:
    if isinstance(value, Undefined):
        return {name: None, f"{name}_reason": value.reason}
    return {name: [float(value.real), float(value.imag)]}


def _emit(doc: dict, args: argparse.Namespace) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            io.dump_report(doc, fh)
    else:
        io.dump_report(doc, sys.stdout)


def cmd_decompose(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    matrix = UnitaryMatrix(io.load_matrix(args.input), tol=tol.tol_unitary)
    params = decompose(matrix, tol=tol)
    rebuilt = reconstruct(params, tol=tol)
    try:
        phase_invariants = io.complex_pairs(phase_invariant_list(params, tol=tol))
    except NonGenericVectorError:
        phase_invariants = None
    doc = {
        "command": "decompose",
        "n": matrix.n,
        "chi": params.chi,
        "vectors": [
            {"dim": v.dim, "components": io.complex_pairs(v.data)}
            for v in params.vectors
        ],
        "genericity_margin": params.genericity_margin,
        "modulus_invariants": [float(x) for x in modulus_invariants(params)],
        "phase_invariants": phase_invariants,
        "unitarity_deviation": matrix.deviation,
        "roundtrip_deviation": float(np.abs(rebuilt.data - matrix.data).max()),
    }
    _emit(doc, args)
    return EXIT_OK


def cmd_phases(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    grid, frames = io.load_evolution(args.input)
    evolution = FrameEvolution(grid, frames, tol=tol)
    reports = frame_phase_bundle(evolution, quadrature=args.quadrature,
                                 min_overlap=args.min_overlap, tol=tol)
    overlap = endpoint_overlap_matrix(evolution, tol=tol)
    levels = []
    for j, rep in enumerate(reports, start=1):
        entry: dict[str, Any] = {"level": j}
        entry.update(_phase_fields(rep.total, "total"))
        entry["dynamical"] = rep.dynamical
        entry.update(_phase_fields(rep.geometric, "geometric"))
        entry["endpoint_overlap_modulus"] = rep.endpoint_overlap_modulus
        levels.append(entry)
    doc = {
        "command": "phases",
        "n": evolution.dim,
        "points": evolution.num_points,
        "quadrature": args.quadrature,
        "levels": levels,
        "endpoint_overlap": io.complex_pairs(overlap.data.reshape(-1)),
    }
    _emit(doc, args)
    return EXIT_OK


def cmd_offdiag(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    grid, frames = io.load_evolution(args.input)
    evolution = FrameEvolution(grid, frames, tol=tol)
    report = verify_offdiag_identity(
        evolution,
        include_pairs=True,
        include_triples=not args.no_triples,
        quadrature=args.quadrature,
        tolerance=args.identity_tolerance,
        tol=tol,
    )

    def table(mapping) -> list[dict]:
        rows = []
        for levels in sorted(mapping):
            row: dict[str, Any] = {"levels": list(levels)}
            row.update(_complex_or_null(mapping[levels], "value"))
            rows.append(row)
        return rows

    doc = {
        "command": "offdiag",
        "n": evolution.dim,
        "points": evolution.num_points,
        "quadrature": args.quadrature,
        "gamma_pairs": table(report.pair_gammas),
        "gamma_triples": table(report.multi_gammas),
        "reconstructed": table(report.reconstructed),
        "identity": {
            "tolerance": report.tolerance,
            "max_residual": report.max_residual,
            "residuals": [
                {"levels": list(levels), "residual": report.identity_residuals[levels]}
                for levels in sorted(report.identity_residuals)
            ],
            "exceptional": [
                {"levels": list(levels), "reason": report.exceptional[levels]}
                for levels in sorted(report.exceptional)
            ],
            "pass": report.passed,
        },
    }
    _emit(doc, args)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    report = run_suite(args.suite, args.n, args.trials, args.seed,
                       quadrature=args.quadrature, tol=tol)
    _emit(report.as_dict(), args)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaugephase",
        description="Canonical unitary factorization, cyclic invariants, "
                    "and gauge-invariant phases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tol-generic", type=float,
                       default=DEFAULT_TOLERANCES.tol_generic,
                       help="genericity gate (default %(default)s)")
        p.add_argument("--tol-unitary", type=float,
                       default=DEFAULT_TOLERANCES.tol_unitary,
                       help="unitarity certificate (default %(default)s)")
        p.add_argument("--output", "-o", default=None,
                       help="write the JSON report here instead of stdout")

    p_dec = sub.add_parser("decompose", help="canonical factorization of a matrix file")
    p_dec.add_argument("input", help="matrix file (JSON)")
    common(p_dec)
    p_dec.set_defaults(func=cmd_decompose)

    p_ph = sub.add_parser("phases", help="per-level phases of an evolution file")
    p_ph.add_argument("input", help="evolution file (JSON)")
    p_ph.add_argument("--quadrature", choices=QUADRATURES, default="pancharatnam")
    p_ph.add_argument("--min-overlap", type=float, default=0.9,
                      help="resolution guard on successive overlaps (default %(default)s)")
    common(p_ph)
    p_ph.set_defaults(func=cmd_phases)

    p_od = sub.add_parser("offdiag", help="off-diagonal factors of an evolution file")
    p_od.add_argument("input", help="evolution file (JSON)")
    p_od.add_argument("--quadrature", choices=QUADRATURES, default="pancharatnam")
    p_od.add_argument("--no-triples", action="store_true",
                      help="skip three-level cyclic products")
    p_od.add_argument("--identity-tolerance", type=float, default=1e-8,
                      help="pass gate on identity residuals (default %(default)s)")
    common(p_od)
    p_od.set_defaults(func=cmd_offdiag)

    p_ver = sub.add_parser("verify", help="run a seeded verification suite")
    p_ver.add_argument("--suite", choices=sorted(SUITES), required=True)
    p_ver.add_argument("--n", type=int, default=4, help="dimension (default %(default)s)")
    p_ver.add_argument("--trials", type=int, default=100,
                       help="seeded trials (default %(default)s)")
    p_ver.add_argument("--seed", type=int, default=0, help="base seed (default %(default)s)")
    p_ver.add_argument("--quadrature", choices=QUADRATURES, default="pancharatnam")
    common(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except io.FileFormatError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except NotUnitaryError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NOT_UNITARY
    except NonGenericMatrixError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NON_GENERIC


if __name__ == "__main__":
    sys.exit(main())
