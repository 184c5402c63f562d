"""
Protocol module - One-way LOCC relocalization protocols: synthesis, audits, simulation.
"""

from .scenarios import PLUS_STATE, adqc_protocol, adqc_scenario
from .simulation import (
    DEFAULT_TRIALS,
    P_FLOOR,
    TOL_VERIFY,
    simulate_branches,
    verify_ancilla_mode,
    verify_relocalization,
)
from .synthesis import (
    audit_protocol,
    check_completeness,
    hermitianize_protocol,
    synthesize_protocol,
)

__all__ = [
    "DEFAULT_TRIALS",
    "P_FLOOR",
    "PLUS_STATE",
    "TOL_VERIFY",
    "adqc_protocol",
    "adqc_scenario",
    "audit_protocol",
    "check_completeness",
    "hermitianize_protocol",
    "simulate_branches",
    "synthesize_protocol",
    "verify_ancilla_mode",
    "verify_relocalization",
]
