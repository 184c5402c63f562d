"""
Main entry point for delocalization-power (dlp).

CLI with subcommands for gate analysis, protocol simulation and configuration.
Reports are JSON on stdout (or --output); human-readable lines go to stderr.
"""

import argparse
import json
import sys
from typing import Any, Dict, List, Optional

import numpy as np

from . import __app_name__, __version__
from .config import (
    flatten_config,
    get_config_float,
    get_config_int,
    get_config_path,
    get_config_value,
    load_config,
    set_config_value,
)
from .core.errors import DelocalizationError, GateFormatError, InvariantViolation
from .core.logger import get_logger
from .core.models import CLASS_1, Classification, Gate
from .core.ui import print_error, print_header, print_info, print_success, print_warning

EXIT_OK = 0
EXIT_PARSE_ERROR = 1
EXIT_INVARIANT = 2
EXIT_CLASS2 = 3
EXIT_VERIFICATION_FAILED = 4

DEFAULT_CONTRAST_GATES = ["heisenberg:alpha=0.01", "cnot"]


def _resolve_float(value: Optional[float], key: str) -> float:
    return value if value is not None else get_config_float(key)


def _resolve_int(value: Optional[int], key: str) -> int:
    return value if value is not None else get_config_int(key)


def _load_gate(args: argparse.Namespace) -> Gate:
    """Builds the gate named by --gate or read from --gate-file."""
    from .gallery import build
    from .reports import read_gate_file

    tol_unitary = _resolve_float(args.tol_unitary, "TOLERANCES.unitary")
    if args.gate_file:
        return read_gate_file(args.gate_file, tol_unitary=tol_unitary)
    gate = build(args.gate)
    if tol_unitary != gate.tol_unitary:
        return Gate(gate.d, gate.matrix, name=gate.name, tol_unitary=tol_unitary)
    return gate


def _gate_inputs(args: argparse.Namespace, gate: Gate) -> Dict[str, Any]:
    return {"gate": args.gate, "gate_file": args.gate_file, "name": gate.name, "d": gate.d}


def _emit(report: Dict[str, Any], args: argparse.Namespace) -> None:
    from .reports import dumps_report, write_text

    write_text(dumps_report(report), getattr(args, "output", None))


def _classification_payload(result: Classification) -> Dict[str, Any]:
    from .reports import to_jsonable

    payload: Dict[str, Any] = {
        "label": result.label,
        "control_side": result.diagnostics.control_side,
        "diagnostics": to_jsonable(result.diagnostics),
    }
    if result.controlled_form is not None:
        payload["controlled_form"] = to_jsonable(result.controlled_form)
    if result.protocol is not None:
        payload["protocol"] = to_jsonable(result.protocol)
    return payload


def cmd_schmidt(args: argparse.Namespace) -> int:
    """Handles the 'schmidt' command: operator Schmidt coefficients and rank.

    Returns:
        int: 0 on success.
    """
    from .analysis import schmidt_decompose
    from .reports import build_report

    gate = _load_gate(args)
    tol_rank = _resolve_float(args.tol, "TOLERANCES.rank")
    os = schmidt_decompose(gate, tol_rank)
    residual = float(np.linalg.norm(os.reconstruct() - gate.matrix))

    print_info("Compuerta", gate.name or args.gate_file)
    print_info("Rango de Schmidt", os.rank)
    payload = {
        "d": gate.d,
        "rank": os.rank,
        "coeffs": os.coeffs,
        "reconstruction_residual": residual,
        "factors_a": os.factors_a[: os.rank],
        "factors_b": os.factors_b[: os.rank],
    }
    _emit(build_report("schmidt", _gate_inputs(args, gate), payload, {"rank": tol_rank}), args)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    """Handles the 'classify' command.

    Returns:
        int: 0 when the gate is Class 1 on a requested control side, 3 otherwise.
    """
    from .analysis import classify_gate, classify_gate_swapped
    from .reports import build_report

    gate = _load_gate(args)
    tol = _resolve_float(args.tol, "TOLERANCES.structure")
    tol_rank = _resolve_float(None, "TOLERANCES.rank")
    tol_verify = _resolve_float(None, "TOLERANCES.verify")
    seed = _resolve_int(args.seed, "SIMULATION.seed")
    options = dict(tol_rank=tol_rank, seed=seed, tol_verify=tol_verify)

    sides = ["A", "B"] if args.control_side == "both" else [args.control_side]
    results: Dict[str, Classification] = {}
    for side in sides:
        if side == "A":
            results[side] = classify_gate(gate, tol, **options)
        else:
            results[side] = classify_gate_swapped(gate, tol, **options)
        print_info(f"Control en {side}", results[side].label)

    payload = {side: _classification_payload(result) for side, result in results.items()}
    tolerances = {"structure": tol, "rank": tol_rank, "verify": tol_verify}
    inputs = dict(_gate_inputs(args, gate), control_side=args.control_side)
    _emit(build_report("classify", inputs, payload, tolerances, seed), args)

    if any(result.label == CLASS_1 for result in results.values()):
        print_success("Class 1: relocalizable por LOCC")
        return EXIT_OK
    print_warning("Class 2: no relocalizable por LOCC sin entrelazamiento")
    return EXIT_CLASS2


def cmd_simulate(args: argparse.Namespace) -> int:
    """Handles the 'simulate' command.

    Returns:
        int: 0 when the verdict passes, 4 when it fails, 3 when a product/ancilla
        simulation was requested for a Class 2 gate.
    """
    from .analysis import classify_gate
    from .protocol import adqc_scenario, verify_ancilla_mode, verify_relocalization
    from .reports import build_report, to_jsonable

    gate = _load_gate(args)
    trials = _resolve_int(args.trials, "SIMULATION.trials")
    seed = _resolve_int(args.seed, "SIMULATION.seed")
    workers = _resolve_int(args.workers, "SIMULATION.workers")
    tol = _resolve_float(args.tol, "TOLERANCES.structure")
    tol_verify = _resolve_float(args.tol_verify, "TOLERANCES.verify")
    p_floor = _resolve_float(None, "TOLERANCES.p_floor")
    tolerances = {"structure": tol, "verify": tol_verify, "p_floor": p_floor}
    inputs = dict(_gate_inputs(args, gate), mode=args.mode, trials=trials, workers=workers)

    payload: Dict[str, Any] = {"mode": args.mode}
    if args.mode == "adqc-fixed":
        report = adqc_scenario(trials, seed, gate=gate, tol_verify=tol_verify, p_floor=p_floor)
        verdict = report.verdict
        payload["simulation"] = to_jsonable(report)
    else:
        classification = classify_gate(gate, tol, seed=seed, tol_verify=tol_verify)
        payload["classification"] = _classification_payload(classification)
        if not classification.is_class1:
            print_warning(f"Class 2 ({classification.diagnostics.reason}); nada que simular")
            _emit(build_report("simulate", inputs, payload, tolerances, seed), args)
            return EXIT_CLASS2
        if args.mode == "ancilla":
            ancilla = verify_ancilla_mode(gate, classification.protocol, tol_verify, p_floor)
            verdict = ancilla.verdict
            payload["simulation"] = to_jsonable(ancilla)
        else:
            report = verify_relocalization(
                gate,
                classification.protocol,
                trials=trials,
                seed=seed,
                tol_verify=tol_verify,
                p_floor=p_floor,
                workers=workers,
            )
            verdict = report.verdict
            payload["simulation"] = to_jsonable(report)

    payload["verdict"] = verdict
    _emit(build_report("simulate", inputs, payload, tolerances, seed), args)
    if verdict:
        print_success("Relocalización verificada")
        return EXIT_OK
    print_error("La relocalización falló en al menos una rama")
    return EXIT_VERIFICATION_FAILED


def cmd_epower(args: argparse.Namespace) -> int:
    """Handles the 'epower' command: entangling power estimate."""
    from .analysis import entangling_power_estimate
    from .reports import build_report

    gate = _load_gate(args)
    restarts = _resolve_int(args.restarts, "EPOWER.restarts")
    seed = _resolve_int(args.seed, "SIMULATION.seed")
    workers = _resolve_int(args.workers, "SIMULATION.workers")
    result = entangling_power_estimate(gate, restarts, seed, workers)

    values = np.asarray(result.restart_values)
    print_info("Entangling power (ebits)", f"{result.value:.6f}")
    payload = {
        "value": result.value,
        "argmax_a": result.argmax_a.amplitudes,
        "argmax_b": result.argmax_b.amplitudes,
        "restarts": result.restarts,
        "converged_restarts": result.converged_restarts,
        "restart_values": result.restart_values,
        "restart_statistics": {
            "min": float(values.min()),
            "mean": float(values.mean()),
            "max": float(values.max()),
        },
    }
    inputs = dict(_gate_inputs(args, gate), restarts=restarts, workers=workers)
    _emit(build_report("epower", inputs, payload, {}, seed), args)
    return EXIT_OK


def cmd_canonical(args: argparse.Namespace) -> int:
    """Handles the 'canonical' command (two qubits only)."""
    from .analysis import kraus_cirac_decompose
    from .reports import build_report

    gate = _load_gate(args)
    form = kraus_cirac_decompose(gate)
    residual = float(np.linalg.norm(form.reconstruct() - gate.matrix))

    print_info("theta", tuple(round(t, 12) for t in form.theta))
    payload = {
        "theta": list(form.theta),
        "global_phase": form.global_phase,
        "pre_a": form.pre_a,
        "pre_b": form.pre_b,
        "post_a": form.post_a,
        "post_b": form.post_b,
        "reconstruction_residual": residual,
    }
    _emit(build_report("canonical", _gate_inputs(args, gate), payload), args)
    return EXIT_OK


def cmd_gallery(args: argparse.Namespace) -> int:
    """Handles the 'gallery' command: list registered gates or emit one as a gate file."""
    from .gallery import REGISTRY, build, list_gates
    from .reports import dumps_document, dumps_gate, write_text

    if args.emit:
        write_text(dumps_gate(build(args.emit)), args.output)
        return EXIT_OK

    listing = {
        "gates": [
            {
                "name": spec.name,
                "spec": str(spec),
                "defaults": spec.params,
                "description": REGISTRY[spec.name].description,
            }
            for spec in list_gates()
        ]
    }
    write_text(dumps_document(listing), args.output)
    return EXIT_OK


def cmd_contrast(args: argparse.Namespace) -> int:
    """Handles the 'contrast' command: delocalization class next to entangling power."""
    from .analysis import contrast
    from .gallery import build
    from .reports import build_report

    specs = args.gate or DEFAULT_CONTRAST_GATES
    restarts = _resolve_int(args.restarts, "EPOWER.restarts")
    seed = _resolve_int(args.seed, "SIMULATION.seed")
    workers = _resolve_int(args.workers, "SIMULATION.workers")
    tol = _resolve_float(args.tol, "TOLERANCES.structure")
    rows = contrast([build(spec) for spec in specs], restarts, seed, tol, workers)

    print_header("Poder de deslocalización vs entangling power")
    for row in rows:
        print_info(row.gate, f"{row.label}  rango={row.schmidt_rank}  f_ep={row.entangling_power:.6f}")
    inputs = {"gates": specs, "restarts": restarts, "workers": workers}
    _emit(build_report("contrast", inputs, {"rows": rows}, {"structure": tol}, seed), args)
    return EXIT_OK


def cmd_config_set(args: argparse.Namespace) -> int:
    """Handles the 'config set' command, saving a configuration key-value pair.

    Returns:
        int: An exit code (0 for success).
    """
    set_config_value(str(args.key), str(args.value))
    print(f"Configuration saved: {args.key} = {args.value}")
    return EXIT_OK


def cmd_config_get(args: argparse.Namespace) -> int:
    """Handles the 'config get' command.

    Returns:
        int: 0 for success, 1 if the key is not found.
    """
    value = get_config_value(str(args.key))
    if value is None:
        print(f"Key not found: {args.key}")
        return 1
    print(value)
    return EXIT_OK


def cmd_config_list(args: argparse.Namespace) -> int:
    """Handles the 'config list' command, one ``KEY = value`` line per stored key."""
    config: dict = load_config()
    if not config:
        print(f"No configuration found. File: {get_config_path()}")
        return EXIT_OK
    for key, value in flatten_config(config).items():
        print(f"{key} = {json.dumps(value, ensure_ascii=False)}")
    return EXIT_OK


def _add_gate_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--gate", metavar="SPEC", help="Gallery gate, e.g. cnot or heisenberg:alpha=0.3")
    source.add_argument("--gate-file", metavar="PATH", help="Gate file (JSON with [re, im] pairs)")
    parser.add_argument(
        "--tol-unitary",
        type=float,
        default=None,
        help="Unitarity tolerance for the input gate (default: TOLERANCES.unitary or 1e-10)",
    )
    _add_output(parser)


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", "-o", metavar="PATH", help="Write the report to PATH instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    """Builds the argument parser with every subcommand."""
    parser = argparse.ArgumentParser(
        prog=__app_name__,
        description="Delocalization Power - two-qudit gate classifier",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Exit codes:
  0  success / Class 1
  1  gate file or gate spec could not be parsed
  2  invariant violation (non-unitary gate, wrong dimensions)
  3  Class 2
  4  relocalization verification failed

Examples:
  dlp schmidt --gate cnot
  dlp classify --gate heisenberg:alpha=0.2 --control-side both
  dlp simulate --gate cnot --trials 50 --seed 7
  dlp gallery --emit adqc -o adqc.json
""",
    )
    parser.add_argument("-v", "--version", action="store_true", help="Show version")
    parser.add_argument(
        "--debug",
        action="store_true",
        help="Write a debug log under ~/.dlp_logs",
    )

    subparsers = parser.add_subparsers(title="commands", dest="command", metavar="<command>")

    schmidt_parser = subparsers.add_parser("schmidt", help="Operator Schmidt decomposition and rank")
    _add_gate_source(schmidt_parser)
    schmidt_parser.add_argument("--tol", type=float, default=None, help="Relative rank tolerance (default 1e-8)")
    schmidt_parser.set_defaults(func=cmd_schmidt)

    classify_parser = subparsers.add_parser("classify", help="Class 1 / Class 2 classification")
    _add_gate_source(classify_parser)
    classify_parser.add_argument("--tol", type=float, default=None, help="Structural tolerance (default 1e-6)")
    classify_parser.add_argument(
        "--control-side",
        choices=["A", "B", "both"],
        default="A",
        help="Which qudit plays the control (default: A)",
    )
    classify_parser.add_argument("--seed", type=int, default=None, help="Seed of the verification backstop")
    classify_parser.set_defaults(func=cmd_classify)

    simulate_parser = subparsers.add_parser("simulate", help="Simulate the relocalization protocol")
    _add_gate_source(simulate_parser)
    simulate_parser.add_argument("--mode", choices=["product", "ancilla", "adqc-fixed"], default="product")
    simulate_parser.add_argument("--trials", type=int, default=None, help="Random inputs (default 50)")
    simulate_parser.add_argument("--seed", type=int, default=None, help="Root seed (default 0)")
    simulate_parser.add_argument("--workers", type=int, default=None, help="Worker threads (default 1)")
    simulate_parser.add_argument("--tol", type=float, default=None, help="Structural tolerance (default 1e-6)")
    simulate_parser.add_argument("--tol-verify", type=float, default=None, help="Fidelity tolerance (default 1e-9)")
    simulate_parser.set_defaults(func=cmd_simulate)

    epower_parser = subparsers.add_parser("epower", help="Estimate the entangling power")
    _add_gate_source(epower_parser)
    epower_parser.add_argument("--restarts", type=int, default=None, help="Random restarts (default 64)")
    epower_parser.add_argument("--seed", type=int, default=None, help="Root seed (default 0)")
    epower_parser.add_argument("--workers", type=int, default=None, help="Worker threads (default 1)")
    epower_parser.set_defaults(func=cmd_epower)

    canonical_parser = subparsers.add_parser("canonical", help="Kraus-Cirac canonical form (d = 2)")
    _add_gate_source(canonical_parser)
    canonical_parser.set_defaults(func=cmd_canonical)

    gallery_parser = subparsers.add_parser("gallery", help="List or emit built-in gates")
    gallery_action = gallery_parser.add_mutually_exclusive_group(required=True)
    gallery_action.add_argument("--list", action="store_true", help="List registered gates")
    gallery_action.add_argument("--emit", metavar="SPEC", help="Write SPEC as a gate file")
    _add_output(gallery_parser)
    gallery_parser.set_defaults(func=cmd_gallery)

    contrast_parser = subparsers.add_parser(
        "contrast", help="Delocalization class next to entangling power"
    )
    contrast_parser.add_argument(
        "--gate",
        action="append",
        metavar="SPEC",
        help="Gate to include (repeatable; default: heisenberg:alpha=0.01 and cnot)",
    )
    contrast_parser.add_argument("--restarts", type=int, default=None)
    contrast_parser.add_argument("--seed", type=int, default=None)
    contrast_parser.add_argument("--workers", type=int, default=None)
    contrast_parser.add_argument("--tol", type=float, default=None)
    _add_output(contrast_parser)
    contrast_parser.set_defaults(func=cmd_contrast)

    config_parser = subparsers.add_parser("config", help="Manage configuration")
    config_subparsers = config_parser.add_subparsers(
        title="subcommands", dest="config_command", metavar="<subcommand>"
    )
    config_set_parser = config_subparsers.add_parser(
        "set",
        help="Set a configuration value",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Available keys:
  TOLERANCES.rank, TOLERANCES.structure, TOLERANCES.verify,
  TOLERANCES.unitary, TOLERANCES.p_floor
  SIMULATION.trials, SIMULATION.seed, SIMULATION.workers
  EPOWER.restarts
""",
    )
    config_set_parser.add_argument("key", help="Key to set (e.g., TOLERANCES.structure)")
    config_set_parser.add_argument("value", help="Value to assign")
    config_set_parser.set_defaults(func=cmd_config_set)

    config_get_parser = config_subparsers.add_parser("get", help="Get a configuration value")
    config_get_parser.add_argument("key", help="Key to get")
    config_get_parser.set_defaults(func=cmd_config_get)

    config_list_parser = config_subparsers.add_parser("list", help="List all configuration")
    config_list_parser.set_defaults(func=cmd_config_list)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the dlp CLI.

    Parses the command line, dispatches to the handler and maps the error
    hierarchy onto the exit-code contract.

    Returns:
        int: The exit code of the executed command handler.
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.version:
        print(f"{__app_name__} v{__version__}")
        return EXIT_OK

    if args.debug:
        get_logger().info(f"argv={argv if argv is not None else sys.argv[1:]}")

    if args.command is None:
        parser.print_help()
        return 1

    if args.command == "config" and args.config_command is None:
        parser.parse_args(["config", "--help"])
        return 1

    try:
        return args.func(args)
    except GateFormatError as exc:
        print_error(str(exc))
        return EXIT_PARSE_ERROR
    except InvariantViolation as exc:
        print_error(str(exc))
        return EXIT_INVARIANT
    except DelocalizationError as exc:
        print_error(f"{type(exc).__name__}: {exc}")
        return EXIT_INVARIANT
    except ValueError as exc:
        # bad numeric options (tol <= 0, trials < 1, ...)
        print_error(str(exc))
        return EXIT_PARSE_ERROR


if __name__ == "__main__":
    sys.exit(main())
