"""Command-line interface.

Exit codes: 0 success, 1 detection or other negative finding, 2 usage error
(bad flags, malformed or invalid input files), 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from ._validation import DomainError, NumericalError
from . import io
from .families import (
    diversity,
    format_partition,
    hasse_graph,
    parse_partition,
    to_dot,
)
from .majorana import to_constellation
from .sampling import SamplingSpec, UniformSphere, polarizer_mixture, sample_mixed_in_family
from .sepbasis import build_basis, choose_points, decompose
from .witness import OptimizerConfig, build_witness, evaluate

EXIT_OK = 0
EXIT_DETECTED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _emit(lines, doc, as_json: bool) -> None:
    if as_json:
        print(json.dumps(doc, indent=1))
    else:
        for line in lines:
            print(line)


def _points_lines(points):
    return [
        f"point: theta={p.theta!r} phi={p.phi!r} multiplicity={m}"
        for p, m in points
    ]


def cmd_families(args) -> int:
    n = args.n_qubits
    if not 1 <= n <= 20:
        print(f"error: n_qubits must lie in 1..20, got {n}", file=sys.stderr)
        return EXIT_USAGE
    graph = hasse_graph(n)
    if args.dot:
        print(to_dot(graph), end="")
        return EXIT_OK
    lines = [f"n_qubits: {n}", f"families: {len(graph.nodes)}"]
    for node in graph.nodes:
        lines.append(f"family: {format_partition(node)} diversity={diversity(node)}")
    for src, dst in graph.edges:
        lines.append(f"edge: {format_partition(src)} -> {format_partition(dst)}")
    doc = {
        "n_qubits": n,
        "families": [list(p) for p in graph.nodes],
        "edges": [[list(a), list(b)] for a, b in graph.edges],
    }
    _emit(lines, doc, args.json)
    return EXIT_OK


def cmd_classify(args) -> int:
    state = io.read_state(args.state_file)
    constellation = to_constellation(state, args.tol)
    pattern = constellation.multiplicity_pattern()
    lines = [
        f"n_qubits: {state.n_qubits}",
        f"partition: {format_partition(pattern)}",
        f"diversity: {len(pattern)}",
    ]
    lines += _points_lines(constellation.points)
    doc = {
        "n_qubits": state.n_qubits,
        "partition": list(pattern),
        "diversity": len(pattern),
        "points": [
            {"theta": p.theta, "phi": p.phi, "multiplicity": m}
            for p, m in constellation.points
        ],
    }
    _emit(lines, doc, args.json)
    return EXIT_OK


def cmd_witness(args) -> int:
    psi = io.read_state(args.state_file)
    family = parse_partition(args.family)
    if sum(family) != psi.n_qubits:
        print(
            f"error: family {args.family} is not a partition of N={psi.n_qubits}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    cfg = OptimizerConfig(n_starts=args.starts, seed=args.seed)
    w = build_witness(psi, family, cfg)
    lines = [
        f"family: {format_partition(w.family)}",
        f"alpha: {w.alpha!r}",
        f"confidence: {w.confidence}",
    ]
    lines += _points_lines(w.argmax_constellation.points)
    doc = {
        "family": list(w.family),
        "alpha": w.alpha,
        "confidence": w.confidence,
        "argmax_points": [
            {"theta": p.theta, "phi": p.phi, "multiplicity": m}
            for p, m in w.argmax_constellation.points
        ],
    }
    if args.eval is None:
        _emit(lines, doc, args.json)
        return EXIT_OK
    rho = io.read_density(args.eval)
    value = evaluate(w, rho)
    lines.append(f"value: {value!r}")
    lines.append(f"detected: {str(value < 0).lower()}")
    doc["value"] = value
    doc["detected"] = value < 0
    _emit(lines, doc, args.json)
    return EXIT_DETECTED if value < 0 else EXIT_OK


def cmd_sample(args) -> int:
    family = parse_partition(args.family)
    if sum(family) != args.n_qubits:
        print(
            f"error: family {args.family} is not a partition of N={args.n_qubits}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    if args.samples is not None:
        rho, diagnostic = polarizer_mixture(
            family, UniformSphere(), args.samples, args.seed
        )
        lines = [
            f"family: {format_partition(family)}",
            f"samples: {args.samples}",
            f"halfway_trace_distance: {diagnostic!r}",
        ]
        doc = {
            "family": list(family),
            "samples": args.samples,
            "halfway_trace_distance": diagnostic,
        }
    else:
        spec = SamplingSpec(
            family=family,
            n_terms=args.terms,
            include_descendants=args.descendants,
            seed=args.seed,
        )
        rho = sample_mixed_in_family(spec, args.n_qubits)
        lines = [
            f"family: {format_partition(family)}",
            f"terms: {args.terms}",
            f"descendants: {str(args.descendants).lower()}",
        ]
        doc = {
            "family": list(family),
            "terms": args.terms,
            "descendants": args.descendants,
        }
    io.write_density(args.out, rho)
    lines.append(f"out: {args.out}")
    doc["out"] = str(args.out)
    _emit(lines, doc, args.json)
    return EXIT_OK


def cmd_basis(args) -> int:
    points = choose_points(args.n_qubits, args.seed)
    basis = build_basis(args.n_qubits, points)
    lines = [
        f"n_qubits: {basis.n_qubits}",
        f"directions: {len(basis.directions)}",
        f"condition_number: {basis.condition_number!r}",
    ]
    doc = {
        "n_qubits": basis.n_qubits,
        "directions": [[p.theta, p.phi] for p in basis.directions],
        "condition_number": basis.condition_number,
    }
    if args.out is not None:
        io.write_basis(args.out, basis)
        lines.append(f"out: {args.out}")
        doc["out"] = str(args.out)
    if args.decompose is not None:
        rho = io.read_density(args.decompose)
        coeffs = decompose(rho, basis)
        lines.append("coefficients: " + " ".join(repr(float(c)) for c in coeffs))
        lines.append(f"coefficient_sum: {float(coeffs.sum())!r}")
        lines.append(f"negative_coefficients: {int((coeffs < 0).sum())}")
        doc["coefficients"] = [float(c) for c in coeffs]
        doc["coefficient_sum"] = float(coeffs.sum())
        doc["negative_coefficients"] = int((coeffs < 0).sum())
    _emit(lines, doc, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symfam",
        description="Entanglement families of symmetric multiqubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("families", help="list families and their hierarchy")
    p.add_argument("n_qubits", type=int)
    p.add_argument("--dot", action="store_true", help="emit a DOT graph")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("classify", help="classify a pure state file")
    p.add_argument("state_file")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", help="build and optionally evaluate a witness")
    p.add_argument("state_file")
    p.add_argument("--family", required=True, help='partition such as "3,1"')
    p.add_argument("--eval", default=None, help="density-matrix file to test")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("sample", help="sample a mixed state inside a family")
    p.add_argument("--family", required=True)
    p.add_argument("--n-qubits", type=int, required=True)
    p.add_argument("--terms", type=int, default=8)
    p.add_argument("--descendants", action="store_true")
    p.add_argument("--samples", type=int, default=None, help="Monte Carlo mode")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("basis", help="build a separable basis; optionally decompose")
    p.add_argument("--n-qubits", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--decompose", default=None, help="density-matrix file")
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_basis)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
