"""
Gate files and report files.

Both are JSON with a fixed layout. Floats are written with 17 significant
digits and complex entries as ``[re, im]`` pairs, so parsing a file and
writing it again reproduces the same bytes.
"""

import dataclasses
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from .. import __version__
from ..core.errors import GateFormatError
from ..core.models import Gate

PathLike = Union[str, Path]
TOOL_NAME = "delocalization-power"


def _format_float(value: float) -> str:
    if not math.isfinite(value):
        raise GateFormatError(f"non-finite value {value!r} cannot be written")
    # -0.0 would come back as the integer 0
    return format(float(value) + 0.0, ".17g")


def to_jsonable(value: Any) -> Any:
    """Converts numpy arrays, complex numbers and dataclasses to plain JSON values.

    Complex numbers become ``[re, im]``; real arrays stay real.
    """
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return to_jsonable(np.stack([value.real, value.imag], axis=-1))
        return to_jsonable(value.tolist())
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    return value


def _is_scalar(value: Any) -> bool:
    return not isinstance(value, (dict, list))


def _is_inline(value: list) -> bool:
    """Lists of scalars and lists of scalar lists (one matrix row) stay on one line."""
    return all(
        _is_scalar(item) or (isinstance(item, list) and all(_is_scalar(x) for x in item))
        for item in value
    )


def _encode(value: Any, level: int) -> str:
    pad = "  " * level
    inner = "  " * (level + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{inner}{json.dumps(key, ensure_ascii=False)}: {_encode(item, level + 1)}"
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        if _is_inline(value):
            return "[" + ", ".join(_encode(item, level + 1) for item in value) + "]"
        items = [f"{inner}{_encode(item, level + 1)}" for item in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _format_float(value)
    return json.dumps(value, ensure_ascii=False)


def dumps_document(document: Any) -> str:
    """Deterministic JSON text for any report or gate document, newline-terminated."""
    return _encode(to_jsonable(document), 0) + "\n"


def gate_to_document(g: Gate, metadata: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    document: Dict[str, Any] = {"d": g.d}
    if g.name:
        document["name"] = g.name
    if metadata:
        document["metadata"] = metadata
    document["matrix"] = [[[float(z.real), float(z.imag)] for z in row] for row in g.matrix]
    return document


def dumps_gate(g: Gate, metadata: Optional[Dict[str, Any]] = None) -> str:
    return dumps_document(gate_to_document(g, metadata))


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise GateFormatError(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise GateFormatError(f"{where}: non-finite value")
    return float(value)


def parse_gate_document(data: Any, tol_unitary: Optional[float] = None) -> Gate:
    """Validates a decoded gate document and builds the Gate.

    Raises:
        GateFormatError: On structural problems, naming the first offending row/col.
        NonUnitaryError: If the matrix parses but is not unitary.
    """
    if not isinstance(data, dict):
        raise GateFormatError("gate file must contain a JSON object")
    d = data.get("d")
    if isinstance(d, bool) or not isinstance(d, int) or d < 2:
        raise GateFormatError(f"'d' must be an integer >= 2, got {d!r}")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise GateFormatError("'name' must be a string")
    rows = data.get("matrix")
    size = d * d
    if not isinstance(rows, list) or len(rows) != size:
        found = len(rows) if isinstance(rows, list) else type(rows).__name__
        raise GateFormatError(f"'matrix' must have {size} rows, found {found}")

    matrix = np.zeros((size, size), dtype=complex)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != size:
            raise GateFormatError(f"row {r}: expected {size} entries")
        for c, entry in enumerate(row):
            where = f"row {r}, col {c}"
            if not isinstance(entry, list) or len(entry) != 2:
                raise GateFormatError(f"{where}: expected a [re, im] pair, got {entry!r}")
            matrix[r, c] = complex(_number(entry[0], where), _number(entry[1], where))

    if tol_unitary is None:
        return Gate(d, matrix, name=name)
    return Gate(d, matrix, name=name, tol_unitary=tol_unitary)


def read_gate_file(path: PathLike, tol_unitary: Optional[float] = None) -> Gate:
    """Reads a gate file.

    Raises:
        GateFormatError: If the file is missing, not JSON, or malformed.
        NonUnitaryError: If the matrix is not unitary.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GateFormatError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GateFormatError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc
    return parse_gate_document(data, tol_unitary)


def write_gate_file(g: Gate, path: PathLike, metadata: Optional[Dict[str, Any]] = None) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(dumps_gate(g, metadata), encoding="utf-8")


def build_report(
    command: str,
    inputs: Dict[str, Any],
    payload: Dict[str, Any],
    tolerances: Optional[Dict[str, float]] = None,
    seed: Optional[int] = None,
) -> Dict[str, Any]:
    """Report envelope: command, echoed inputs, tolerances, seed and tool version around a payload."""
    return {
        "command": command,
        "inputs": inputs,
        "tolerances": tolerances or {},
        "seed": seed,
        "tool": {"name": TOOL_NAME, "version": __version__},
        "result": payload,
    }


def dumps_report(report: Dict[str, Any]) -> str:
    return dumps_document(report)


def loads_report(text: str) -> Dict[str, Any]:
    """Parses a report written by :func:`dumps_report`."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GateFormatError(f"invalid report JSON at line {exc.lineno}, column {exc.colno}") from exc
    if not isinstance(data, dict) or "command" not in data:
        raise GateFormatError("report must be an object with a 'command' field")
    return data


def write_text(text: str, path: Optional[PathLike]) -> None:
    """Writes ``text`` to ``path``, or to stdout when ``path`` is None."""
    if path is None:
        print(text, end="")
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")


def matrix_from_pairs(rows: List[List[List[float]]]) -> np.ndarray:
    """Inverse of the ``[re, im]`` encoding used in reports."""
    array = np.asarray(rows, dtype=float)
    return array[..., 0] + 1j * array[..., 1]
