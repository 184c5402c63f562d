"""
Analysis module - Schmidt decomposition, canonical form, classification, entangling power.
"""

from .canonical import (
    MAGIC,
    interaction_unitary,
    kraus_cirac_decompose,
    kron_factor,
    theta_distance,
)
from .classify import (
    TOL_STRUCTURE,
    classify_gate,
    classify_gate_swapped,
    combine_blocks,
    controlled_form_from_canonical,
    extract_controlled_form,
)
from .entangling import contrast, entangling_power_estimate, output_entanglement
from .schmidt import TOL_RANK, reshuffle, schmidt_decompose, schmidt_rank, unreshuffle

__all__ = [
    "MAGIC",
    "TOL_RANK",
    "TOL_STRUCTURE",
    "classify_gate",
    "classify_gate_swapped",
    "combine_blocks",
    "contrast",
    "controlled_form_from_canonical",
    "entangling_power_estimate",
    "extract_controlled_form",
    "interaction_unitary",
    "kraus_cirac_decompose",
    "kron_factor",
    "output_entanglement",
    "reshuffle",
    "schmidt_decompose",
    "schmidt_rank",
    "theta_distance",
    "unreshuffle",
]
