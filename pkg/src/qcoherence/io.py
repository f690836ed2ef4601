"""JSON state/channel/basis files.

Complex entries are ``[re, im]`` pairs. Layouts::

    state:   {"dim": d, "matrix": [[[re, im], ...], ...]}
    channel: {"dim": d, "kraus": [matrix, matrix, ...]}
    basis:   {"dim": d, "basis": matrix}   # basis vectors are the columns
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .channels import KrausChannel
from .errors import QCoherenceError
from .states import DensityMatrix


class FileFormatError(QCoherenceError, ValueError):
    """A file could not be parsed or does not describe a valid object."""


def _load_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FileFormatError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise FileFormatError(f"{path}: top level must be a JSON object")
    return doc


def _dim(doc: dict, where: str) -> int:
    d = doc.get("dim")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise FileFormatError(f"{where}: field 'dim' must be a positive integer, got {d!r}")
    return d


def parse_matrix(rows, d: int, where: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != d:
        raise FileFormatError(f"{where}: expected {d} rows")
    out = np.empty((d, d), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise FileFormatError(f"{where}[{i}]: expected a row of {d} entries")
        for j, entry in enumerate(row):
            ok = (
                isinstance(entry, list) and len(entry) == 2
                and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            )
            if not ok:
                raise FileFormatError(f"{where}[{i}][{j}]: expected a [re, im] pair of numbers, got {entry!r}")
            out[i, j] = complex(entry[0], entry[1])
    if not np.all(np.isfinite(out)):
        raise FileFormatError(f"{where}: non-finite entry")
    return out


def matrix_to_rows(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def parse_state(doc: dict, source: str = "<state>") -> DensityMatrix:
    d = _dim(doc, source)
    if "matrix" not in doc:
        raise FileFormatError(f"{source}: missing field 'matrix'")
    m = parse_matrix(doc["matrix"], d, f"{source}: matrix")
    try:
        return DensityMatrix(m)
    except QCoherenceError as exc:
        raise FileFormatError(f"{source}: not a valid density matrix: {exc}") from exc


def parse_channel(doc: dict, source: str = "<channel>") -> KrausChannel:
    d = _dim(doc, source)
    kraus = doc.get("kraus")
    if not isinstance(kraus, list) or not kraus:
        raise FileFormatError(f"{source}: field 'kraus' must be a non-empty list of matrices")
    ops = [parse_matrix(k, d, f"{source}: kraus[{i}]") for i, k in enumerate(kraus)]
    try:
        return KrausChannel(ops)
    except QCoherenceError as exc:
        raise FileFormatError(f"{source}: not a valid channel: {exc}") from exc


def parse_basis(doc: dict, source: str = "<basis>") -> np.ndarray:
    d = _dim(doc, source)
    if "basis" not in doc:
        raise FileFormatError(f"{source}: missing field 'basis'")
    return parse_matrix(doc["basis"], d, f"{source}: basis")


def load_state(path) -> DensityMatrix:
    return parse_state(_load_json(path), str(path))


def load_channel(path) -> KrausChannel:
    return parse_channel(_load_json(path), str(path))


def load_basis(path) -> np.ndarray:
    return parse_basis(_load_json(path), str(path))


def state_doc(rho: DensityMatrix) -> dict:
    return {"dim": rho.dim, "matrix": matrix_to_rows(rho.matrix)}


def channel_doc(channel: KrausChannel) -> dict:
    return {"dim": channel.dim, "kraus": [matrix_to_rows(k) for k in channel.kraus]}


def basis_doc(basis) -> dict:
    b = np.asarray(basis)
    return {"dim": b.shape[0], "basis": matrix_to_rows(b)}


def _matrix_text(rows, pad: str) -> str:
    inner = (",\n" + pad + " ").join(json.dumps(r) for r in rows)
    return "[" + inner + "]"


def dumps(doc: dict) -> str:
    """JSON text with one matrix row per line."""
    parts = []
    for key, value in doc.items():
        if key in ("matrix", "basis"):
            text = _matrix_text(value, "  ")
        elif key == "kraus":
            text = "[" + ",\n   ".join(_matrix_text(m, "    ") for m in value) + "]"
        else:
            text = json.dumps(value)
        parts.append(f"  {json.dumps(key)}: {text}")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def _write(doc: dict, path):
    Path(path).write_text(dumps(doc))


def dump_state(rho: DensityMatrix, path):
    _write(state_doc(rho), path)


def dump_channel(channel: KrausChannel, path):
    _write(channel_doc(channel), path)


def dump_basis(basis, path):
    _write(basis_doc(basis), path)
