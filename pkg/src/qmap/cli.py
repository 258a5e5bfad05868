"""Command-line front end: generate, map, analyze, oracle.

Exit codes are stable for scripting: 0 ok, 1 usage/bad parameters, 2 parse
errors (circuit, architecture, or mapped file), 3 capacity, 4 verification
failure or routing deadlock, 5 oracle size guard. No command leaves a
partial output file behind: everything is written to a temp name and
renamed on success. QMAP_LOG={error|info|debug} controls diagnostics.
"""

import argparse
import concurrent.futures
import json
import logging
import os
import sys
import time
from dataclasses import asdict, replace
from pathlib import Path

from . import __version__
from .arch import Architecture, CostModel, parse_arch_file, parse_arch_shorthand
from .errors import (
    ArchError,
    CapacityError,
    ManifestError,
    MappedFormatError,
    OracleGuardError,
    QasmSyntaxError,
    QmapError,
    RoutingDeadlockError,
    VerificationError,
)
from .generate import gen_qft, gen_random
from .manifest import RunManifest, write_manifest
from .mapper import (
    MapperConfig,
    initial_placement,
    load_mapped,
    map_circuit,
    routing_op_count,
    serialize_mapped,
    verify_mapped,
)
from .oracle import oracle_min_route
from .qasm import parse_circuit, serialize_circuit
from .traffic import build_report, render_csvs, report_to_dict, summarize

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_CAPACITY = 3
EXIT_VERIFY = 4
EXIT_GUARD = 5

_LOG_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}


class _Parser(argparse.ArgumentParser):
    """argparse, but usage errors exit with code 1 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _write_atomic(path: Path, data: str):
    tmp = path.with_name(f"{path.name}.{os.getpid()}.tmp")
    tmp.write_text(data)
    tmp.replace(path)


def _load_arch(args) -> tuple[Architecture, CostModel]:
    if args.arch_file:
        arch, cost = parse_arch_file(Path(args.arch_file).read_text())
    else:
        arch, cost = parse_arch_shorthand(args.arch), CostModel()
    if args.dur_teleport is not None:
        cost = replace(cost, dur_teleport=args.dur_teleport)
    return arch, cost


def _read_circuit(path: str):
    return parse_circuit(Path(path).read_text(), name=Path(path).stem)


def _cmd_gen(args) -> int:
    if args.algorithm == "qft":
        circuit = gen_qft(args.n, reversal_swaps=args.reversal_swaps)
        out = Path(args.out) if args.out else Path(f"qft{args.n}.qasm")
    else:
        circuit = gen_random(args.n, args.gates, args.p2, args.seed)
        out = Path(args.out) if args.out else Path(f"random_n{args.n}_g{args.gates}_s{args.seed}.qasm")
    _write_atomic(out, serialize_circuit(circuit))
    print(f"wrote {out} ({circuit.n_qubits} qubits, {len(circuit.gates)} gates)")
    return EXIT_OK


def _map_one(circuit_path: str, out_path: str, arch: Architecture, cost: CostModel, args_ns) -> dict:
    started = time.time()
    config = MapperConfig(
        placement=args_ns.placement,
        seed=args_ns.seed,
        cost=cost,
        allow_full=args_ns.allow_full,
    )
    circuit = _read_circuit(circuit_path)
    mapped = map_circuit(circuit, arch, config)
    check = verify_mapped(mapped)
    if not check.ok:
        raise VerificationError(f"{circuit_path}: {check.error}")
    out = Path(out_path)
    _write_atomic(out, serialize_mapped(mapped))

    summary = asdict(summarize(mapped))
    manifest = RunManifest(version=__version__, command="map", seed=args_ns.seed, summary=summary)
    manifest.add_input("circuit", circuit_path)
    if args_ns.arch_file:
        manifest.add_input("arch_file", args_ns.arch_file)
    else:
        manifest.inputs["arch"] = {"path": args_ns.arch, "sha256": ""}
    manifest.add_output(out)
    manifest.finish(started)
    write_manifest(manifest, out.with_name(out.name + ".manifest.json"))
    return {"circuit": circuit_path, "out": str(out), **summary}


def _cmd_map(args) -> int:
    arch, cost = _load_arch(args)
    circuits = args.circuit
    if len(circuits) > 1:
        out_dir = Path(args.out) if args.out else Path(".")
        out_dir.mkdir(parents=True, exist_ok=True)
        outs = [str(out_dir / (Path(c).stem + ".mapped")) for c in circuits]
    else:
        outs = [args.out if args.out else str(Path(circuits[0]).with_suffix(".mapped"))]

    results = []
    if args.jobs > 1 and len(circuits) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [
                pool.submit(_map_one, c, o, arch, cost, args) for c, o in zip(circuits, outs)
            ]
            results = [f.result() for f in futures]
    else:
        results = [_map_one(c, o, arch, cost, args) for c, o in zip(circuits, outs)]

    for r in results:
        print(
            f"mapped {r['circuit']}: depth={r['depth']} swaps={r['total_swaps']} "
            f"teleports={r['total_teleports']} comm_ratio={r['comm_ratio']:.4f} -> {r['out']}"
        )
    return EXIT_OK


def _cmd_analyze(args) -> int:
    mapped_path = Path(args.mapped)
    mapped = load_mapped(mapped_path.read_text())
    report = build_report(
        mapped, projection_qubits=args.projection_qubits, joules_per_bit=args.joules_per_bit
    )
    out_dir = Path(args.out) if args.out else mapped_path.with_name(mapped_path.stem + "_traffic")
    out_dir.mkdir(parents=True, exist_ok=True)
    payloads = render_csvs(report)
    payloads["report.json"] = json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
    for name, data in sorted(payloads.items()):
        _write_atomic(out_dir / name, data)
    s = report.summary
    print(f"analyzed {mapped_path} -> {out_dir}")
    print(
        f"depth={s.depth} gates={s.total_gates} swaps={s.total_swaps} "
        f"teleports={s.total_teleports} comm_ratio={s.comm_ratio:.4f} load_cov={s.load_cov:.4f}"
    )
    print(
        f"projection({report.vertical.projection_qubits} qubits) = "
        f"{report.vertical.projection_bps:.3e} b/s"
    )
    return EXIT_OK


def _cmd_oracle(args) -> int:
    arch, cost = _load_arch(args)
    circuit = _read_circuit(args.circuit)
    config = MapperConfig(
        placement=args.placement, seed=args.seed, cost=cost, allow_full=args.allow_full
    )
    placement = initial_placement(circuit, arch, config)
    mapped = map_circuit(circuit, arch, config)
    check = verify_mapped(mapped)
    if not check.ok:
        raise VerificationError(check.error)
    heuristic = routing_op_count(mapped)
    optimal = oracle_min_route(circuit, arch, placement).min_routing_ops
    ratio = heuristic / optimal if optimal else (1.0 if heuristic == 0 else float("inf"))
    print(f"{'':14}{'routing ops':>12}")
    print(f"{'heuristic':14}{heuristic:>12}")
    print(f"{'optimal':14}{optimal:>12}")
    print(f"{'ratio':14}{ratio:>12.3f}")
    return EXIT_OK


def _add_arch_flags(p: argparse.ArgumentParser):
    p.add_argument("--arch", help="architecture shorthand CxQ:intra/inter, e.g. 8x8:alltoall/alltoall")
    p.add_argument("--arch-file", help="architecture description file (key = value)")
    p.add_argument("--placement", choices=("block", "random"), default="block")
    p.add_argument("--seed", type=int, default=0, help="seed for all randomized choices")
    p.add_argument("--allow-full", action="store_true",
                   help="drop the one-free-slot-per-core reservation and enable state exchanges")
    p.add_argument("--dur-teleport", type=int, default=None, help="override teleport duration")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qmap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qmap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a benchmark circuit file", parents=[])
    gensub = p.add_subparsers(dest="algorithm", required=True)
    pq = gensub.add_parser("qft", help="quantum Fourier transform")
    pq.add_argument("--n", type=int, required=True, help="qubit count")
    pq.add_argument("--reversal-swaps", action="store_true", help="append the bit-reversal swap stage")
    pq.add_argument("--out", help="output path (default qft<n>.qasm)")
    pq.set_defaults(func=_cmd_gen)
    pr = gensub.add_parser("random", help="seeded random circuit")
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--gates", type=int, required=True)
    pr.add_argument("--p2", type=float, default=0.5, help="fraction of two-qubit gates")
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--out")
    pr.set_defaults(func=_cmd_gen)

    p = sub.add_parser("map", help="map circuit(s) onto an architecture")
    p.add_argument("circuit", nargs="+", help="circuit file(s)")
    _add_arch_flags(p)
    p.add_argument("--out", help="output mapped file (or directory for several circuits)")
    p.add_argument("--jobs", type=int, default=1, help="map independent circuits concurrently")
    p.set_defaults(func=_cmd_map)

    p = sub.add_parser("analyze", help="derive traffic reports from a mapped file")
    p.add_argument("mapped", help="mapped-circuit file")
    p.add_argument("--out", help="output directory (default <mapped>_traffic)")
    p.add_argument("--projection-qubits", type=int, default=10**6,
                   help="machine size for the readout-bandwidth projection")
    p.add_argument("--joules-per-bit", type=float, default=1e-15,
                   help="energy per vertical bit used in the energy estimate")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("oracle", help="compare heuristic routing against the exhaustive optimum")
    p.add_argument("circuit", help="circuit file (small instances only)")
    _add_arch_flags(p)
    p.set_defaults(func=_cmd_oracle)
    return parser


def main(argv=None) -> int:
    level = _LOG_LEVELS.get(os.environ.get("QMAP_LOG", "").lower(), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command in ("map", "oracle") and bool(args.arch) == bool(args.arch_file):
            parser.error("exactly one of --arch / --arch-file is required")
        return args.func(args)
    except SystemExit as e:
        return int(e.code or 0)
    except (QasmSyntaxError, ArchError, MappedFormatError, ManifestError) as e:
        print(f"qmap: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as e:
        print(f"qmap: capacity error: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (RoutingDeadlockError, VerificationError) as e:
        print(f"qmap: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except OracleGuardError as e:
        print(f"qmap: oracle guard: {e}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as e:
        print(f"qmap: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"qmap: i/o error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
