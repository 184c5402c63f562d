"""
Gallery module - Named gate constructors shared by the CLI and the tests.
"""

from .gates import (
    REGISTRY,
    adqc,
    build,
    cnot,
    controlled_random,
    cz,
    diagonal_random,
    haar,
    heisenberg,
    identity,
    list_gates,
    parse_gate_spec,
    swap,
)

__all__ = [
    "REGISTRY",
    "adqc",
    "build",
    "cnot",
    "controlled_random",
    "cz",
    "diagonal_random",
    "haar",
    "heisenberg",
    "identity",
    "list_gates",
    "parse_gate_spec",
    "swap",
]
