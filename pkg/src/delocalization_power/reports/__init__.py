"""
Reports module - Gate file and report file codecs.
"""

from .files import (
    build_report,
    dumps_document,
    dumps_gate,
    dumps_report,
    gate_to_document,
    loads_report,
    matrix_from_pairs,
    parse_gate_document,
    read_gate_file,
    to_jsonable,
    write_gate_file,
    write_text,
)

__all__ = [
    "build_report",
    "dumps_document",
    "dumps_gate",
    "dumps_report",
    "gate_to_document",
    "loads_report",
    "matrix_from_pairs",
    "parse_gate_document",
    "read_gate_file",
    "to_jsonable",
    "write_gate_file",
    "write_text",
]
