"""
Built-in gate constructors, addressed by name with the ``name:param=value,...`` grammar.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Union

import numpy as np

from ..core.errors import GateSpecError, InvariantViolation
from ..core.linalg import PAULI_X, haar_random_unitary, kron, make_rng, swap_operator
from ..core.models import Gate, GateSpec

MAX_D = 8

Param = Union[int, float]


def identity(d: int = 2) -> Gate:
    return Gate(d, np.eye(d * d, dtype=complex), name="identity" if d == 2 else f"identity:d={d}")


def cnot() -> Gate:
    """|0⟩⟨0|⊗I + |1⟩⟨1|⊗X, control on A."""
    zero = np.diag([1, 0]).astype(complex)
    one = np.diag([0, 1]).astype(complex)
    return Gate(2, kron(zero, np.eye(2)) + kron(one, PAULI_X), name="cnot")


def cz() -> Gate:
    return Gate(2, np.diag([1, 1, 1, -1]).astype(complex), name="cz")


def swap(d: int = 2) -> Gate:
    return Gate(d, swap_operator(d), name="swap" if d == 2 else f"swap:d={d}")


def heisenberg(alpha: float = 0.0) -> Gate:
    """exp(iα(XX + YY + ZZ)) from the exact spectrum of XX + YY + ZZ = 2·SWAP − I.

    Triplet eigenvalue 1, singlet eigenvalue −3.
    """
    swap_matrix = swap_operator(2)
    identity_4 = np.eye(4, dtype=complex)
    matrix = (
        np.exp(1j * alpha) * (identity_4 + swap_matrix) / 2
        + np.exp(-3j * alpha) * (identity_4 - swap_matrix) / 2
    )
    return Gate(2, matrix, name=f"heisenberg:alpha={alpha}")


def adqc() -> Gate:
    """|00⟩⟨00| + |01⟩⟨10| + |10⟩⟨01| − |11⟩⟨11| (SWAP·CZ)."""
    matrix = np.zeros((4, 4), dtype=complex)
    matrix[0, 0] = 1
    matrix[1, 2] = 1
    matrix[2, 1] = 1
    matrix[3, 3] = -1
    return Gate(2, matrix, name="adqc")


def controlled_random(d: int = 3, n_blocks: int = 0, seed: int = 0) -> Gate:
    """Random controlled-unitary dressed with random local unitaries.

    Σ_n P^n⊗u^n over ``n_blocks`` orthogonal projectors of a Haar-random basis
    (``n_blocks = 0`` means one per level), Haar-random targets, and Haar
    local unitaries on both sides of both factors.
    """
    if n_blocks == 0:
        n_blocks = d
    if not 1 <= n_blocks <= d:
        raise GateSpecError(f"n_blocks must be between 1 and d={d}, got {n_blocks}")
    rng = make_rng(seed)
    basis = haar_random_unitary(d, rng)
    levels = np.concatenate([np.arange(n_blocks), rng.integers(0, n_blocks, size=d - n_blocks)])
    core = np.zeros((d * d, d * d), dtype=complex)
    for block in range(n_blocks):
        columns = basis[:, levels == block]
        projector = columns @ columns.conj().T
        core += kron(projector, haar_random_unitary(d, rng))
    pre = kron(haar_random_unitary(d, rng), haar_random_unitary(d, rng))
    post = kron(haar_random_unitary(d, rng), haar_random_unitary(d, rng))
    return Gate(d, pre @ core @ post, name=f"controlled_random:d={d},n_blocks={n_blocks},seed={seed}")


def haar(d: int = 2, seed: int = 0) -> Gate:
    return Gate(d, haar_random_unitary(d * d, seed), name=f"haar:d={d},seed={seed}")


def diagonal_random(d: int = 2, seed: int = 0) -> Gate:
    """Diagonal gate with uniformly random phases (controlled by the computational basis)."""
    phases = make_rng(seed).uniform(0, 2 * np.pi, size=d * d)
    return Gate(d, np.diag(np.exp(1j * phases)), name=f"diagonal_random:d={d},seed={seed}")


@dataclass(frozen=True)
class GalleryEntry:
    constructor: Callable[..., Gate]
    defaults: Dict[str, Param]
    description: str


REGISTRY: Dict[str, GalleryEntry] = {
    "identity": GalleryEntry(identity, {"d": 2}, "Identidad en dos qudits"),
    "cnot": GalleryEntry(cnot, {}, "CNOT con control en A"),
    "cz": GalleryEntry(cz, {}, "Controlled-Z"),
    "swap": GalleryEntry(swap, {"d": 2}, "SWAP de dos qudits"),
    "heisenberg": GalleryEntry(heisenberg, {"alpha": 0.0}, "exp(i alpha (XX+YY+ZZ))"),
    "adqc": GalleryEntry(adqc, {}, "Compuerta ADQC (SWAP.CZ)"),
    "controlled_random": GalleryEntry(
        controlled_random, {"d": 3, "n_blocks": 0, "seed": 0}, "Controlled-unitary aleatoria vestida"
    ),
    "haar": GalleryEntry(haar, {"d": 2, "seed": 0}, "Unitaria de Haar en d^2 dimensiones"),
    "diagonal_random": GalleryEntry(diagonal_random, {"d": 2, "seed": 0}, "Fases diagonales aleatorias"),
}

_INTEGER_PARAMS = {"d", "n_blocks", "seed"}


def list_gates() -> List[GateSpec]:
    """Registered gates with their default parameters, in registration order."""
    return [GateSpec(name, dict(entry.defaults)) for name, entry in REGISTRY.items()]


def _parse_value(key: str, text: str) -> Param:
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise GateSpecError(f"parameter {key!r} has a non-numeric value {text!r}") from None


def parse_gate_spec(text: str) -> GateSpec:
    """Parses ``name`` or ``name:key=value,key=value``.

    Examples:
        >>> parse_gate_spec("heisenberg:alpha=0.3")
        GateSpec(name='heisenberg', params={'alpha': 0.3})
    """
    name, _, arguments = text.strip().partition(":")
    name = name.strip()
    if not name:
        raise GateSpecError(f"empty gate name in {text!r}")
    params: Dict[str, Param] = {}
    for item in filter(None, (part.strip() for part in arguments.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or not key or not value.strip():
            raise GateSpecError(f"malformed parameter {item!r} in {text!r} (expected key=value)")
        if key in params:
            raise GateSpecError(f"parameter {key!r} given twice in {text!r}")
        params[key] = _parse_value(key, value.strip())
    return GateSpec(name, params)


def build(spec: Union[GateSpec, str]) -> Gate:
    """Builds a registered gate.

    Raises:
        GateSpecError: Unknown name, unknown parameter or invalid value.
    """
    if isinstance(spec, str):
        spec = parse_gate_spec(spec)
    entry = REGISTRY.get(spec.name)
    if entry is None:
        known = ", ".join(REGISTRY)
        raise GateSpecError(f"unknown gate {spec.name!r}; known gates: {known}")

    unknown = set(spec.params) - set(entry.defaults)
    if unknown:
        raise GateSpecError(f"gate {spec.name!r} does not take {', '.join(sorted(unknown))}")
    params = dict(entry.defaults)
    for key, value in spec.params.items():
        if key in _INTEGER_PARAMS:
            if int(value) != value:
                raise GateSpecError(f"parameter {key!r} must be an integer, got {value}")
            value = int(value)
        params[key] = value
    d = params.get("d")
    if d is not None and not 2 <= d <= MAX_D:
        raise GateSpecError(f"d must be between 2 and {MAX_D}, got {d}")
    if params.get("seed", 0) < 0:
        raise GateSpecError("seed must be nonnegative")

    try:
        return entry.constructor(**params)
    except InvariantViolation as exc:
        raise GateSpecError(f"invalid parameters for {spec.name!r}: {exc}") from exc
